#include "matnorm/hat_space.hpp"

#include <cmath>
#include <sstream>

#include "matnorm/correspondence.hpp"
#include "matnorm/errors.hpp"

namespace matnorm::hat {

using spaces::LeveledElement;

CatalogEntry fixed_entry(Couple couple) {
  return {"fixed:" + couple.space.id,
          [couple](int, const BlockGrid&, const OptimizerConfig&) { return std::vector<Couple>{couple}; }};
}

CatalogEntry optimized_entry(spaces::MatricialSpace space) {
  return {"optimized:" + space.id,
          [space](int n, const BlockGrid& u, const OptimizerConfig& budget) {
            return std::vector<Couple>{optimizer::optimize_couple(space, n, u, budget).couple};
          }};
}

CatalogEntry trace_dual_entry() {
  return {"trace-dual", [](int, const BlockGrid& u, const OptimizerConfig&) {
            std::vector<Couple> out;
            if (u.size() != 1 || u[0][0].isZero(0.0)) return out;
            const ComplexMatrix w = linalg::dual_witness(u[0][0]);
            out.push_back(make_couple(spaces::c_min(), spaces::from_scalar_matrix("cmin", w)));
            return out;
          }};
}

CatalogEntry scaled_identity_entry() {
  return {"scaled-identity", [](int n, const BlockGrid&, const OptimizerConfig&) {
            const ComplexMatrix v = ComplexMatrix::Identity(n, n) / static_cast<double>(n);
            return std::vector<Couple>{make_couple(spaces::c_max(), spaces::from_scalar_matrix("cmax", v))};
          }};
}

CatalogEntry canonical_entry() {
  return {"canonical", [](int n, const BlockGrid&, const OptimizerConfig&) {
            return std::vector<Couple>{make_couple(spaces::concrete_operator_space(n),
                                                   correspondence::canonical_I_element(n))};
          }};
}

Catalog default_catalog(int n) {
  Catalog catalog{trace_dual_entry(), scaled_identity_entry(), canonical_entry()};
  catalog.push_back(optimized_entry(spaces::c_max()));
  catalog.push_back(optimized_entry(spaces::c_min()));
  for (int k = 1; k <= n + 1; ++k) catalog.push_back(optimized_entry(spaces::concrete_operator_space(k)));
  catalog.push_back(optimized_entry(spaces::l1_sum({spaces::c_min(), spaces::c_max()})));
  catalog.push_back(
      optimized_entry(spaces::l1_sum({spaces::c_max(), spaces::concrete_operator_space(n)})));
  return catalog;
}

int grid_level(int n, const BlockGrid& u) {
  if (n < 1) throw InvalidInput("n must be positive");
  (void)linalg::assemble_blocks(u);
  if (u[0][0].rows() != n) {
    throw InvalidInput("blocks are " + std::to_string(u[0][0].rows()) + "x" +
                       std::to_string(u[0][0].rows()) + ", expected " + std::to_string(n));
  }
  for (const auto& row : u) {
    for (const auto& b : row) linalg::require_valid(b);
  }
  return static_cast<int>(u.size());
}

namespace {

bool is_zero_grid(const BlockGrid& u) {
  for (const auto& row : u) {
    for (const auto& b : row) {
      if (!b.isZero(0.0)) return false;
    }
  }
  return true;
}

}  // namespace

LowerBound hat_lower_bound(int n, const BlockGrid& u, const Catalog& catalog,
                           const OptimizerConfig& budget) {
  grid_level(n, u);
  if (catalog.empty()) throw InvalidInput("hat_lower_bound: empty catalog");
  if (is_zero_grid(u)) {
    return {0.0, Couple{spaces::c_min(), spaces::c_min().zero(n)}, 0};
  }

  std::optional<LowerBound> best;
  int evaluated = 0;
  for (const auto& entry : catalog) {
    for (auto& couple : entry.generate(n, u, budget)) {
      const double value = couple_value(couple, u);
      ++evaluated;
      if (!best || value > best->value) best = LowerBound{value, std::move(couple), 0};
    }
  }
  if (!best) throw InvalidInput("hat_lower_bound: catalog produced no couples");
  best->couples_evaluated = evaluated;
  return std::move(*best);
}

std::string to_string(UpperRule rule) {
  switch (rule) {
    case UpperRule::prop1_entrywise: return "prop1_entrywise";
    case UpperRule::level1_trace: return "level1_trace";
    case UpperRule::entry_trace_sum: return "entry_trace_sum";
    case UpperRule::block_min: return "block_min";
  }
  return "unknown";
}

double entrywise_bound(const BlockGrid& u) {
  return linalg::assemble_blocks(u).cwiseAbs().sum();
}

double entry_trace_bound(const BlockGrid& u) {
  double total = 0.0;
  for (const auto& row : u) {
    for (const auto& b : row) total += linalg::trace_norm(b);
  }
  return total;
}

double block_decomposition_bound(const BlockGrid& u) {
  const int m = static_cast<int>(u.size());
  const int n = static_cast<int>(u[0][0].rows());
  // Row k*m + l, column i*n + j holds entry (i, j) of block (k, l).
  ComplexMatrix realigned(m * m, n * n);
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) realigned(k * m + l, i * n + j) = u[k][l](i, j);
      }
    }
  }
  if (realigned.isZero(0.0)) return 0.0;
  const auto f = linalg::svd(realigned);
  double total = 0.0;
  for (std::size_t r = 0; r < f.singular_values.size(); ++r) {
    const double s = f.singular_values[r];
    if (s == 0.0) break;
    ComplexMatrix p(m, m);
    ComplexMatrix a(n, n);
    for (int k = 0; k < m; ++k) {
      for (int l = 0; l < m; ++l) p(k, l) = f.left(k * m + l, r);
    }
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) a(i, j) = std::conj(f.right(i * n + j, r));
    }
    total += s * linalg::trace_norm(p) * linalg::trace_norm(a);
  }
  return total;
}

UpperBound hat_upper_bound(int n, const BlockGrid& u) {
  const int m = grid_level(n, u);
  std::vector<UpperBound> candidates;
  if (m == 1) candidates.push_back({linalg::trace_norm(u[0][0]), UpperRule::level1_trace});
  candidates.push_back({entry_trace_bound(u), UpperRule::entry_trace_sum});
  candidates.push_back({entrywise_bound(u), UpperRule::prop1_entrywise});
  candidates.push_back({block_decomposition_bound(u), UpperRule::block_min});

  UpperBound best = candidates.front();
  for (const auto& c : candidates) {
    if (c.value < best.value - 1e-12) best = c;
  }
  return best;
}

NormBounds hat_bounds(int n, const BlockGrid& u, const Catalog& catalog,
                      const OptimizerConfig& budget) {
  const int m = grid_level(n, u);
  if (is_zero_grid(u)) {
    return {n, m, 0.0, 0.0, Couple{spaces::c_min(), spaces::c_min().zero(n)},
            m == 1 ? UpperRule::level1_trace : UpperRule::entry_trace_sum};
  }
  LowerBound lower = hat_lower_bound(n, u, catalog, budget);
  const UpperBound upper = hat_upper_bound(n, u);
  if (lower.value > upper.value + kBoundSlack) {
    std::ostringstream details;
    details.precision(17);
    details << "lower " << lower.value << " from couple in " << lower.certificate.space.id
            << " exceeds upper " << upper.value << " (" << to_string(upper.rule) << ")";
    throw InternalInconsistency("certified lower bound exceeds upper bound", details.str());
  }
  return {n, m, lower.value, upper.value, std::move(lower.certificate), upper.rule};
}

BlockGrid block_diagonal(const std::vector<ComplexMatrix>& blocks) {
  if (blocks.empty()) throw InvalidInput("block_diagonal: no blocks");
  const auto n = blocks[0].rows();
  const int k = static_cast<int>(blocks.size());
  BlockGrid grid(k, std::vector<ComplexMatrix>(k, ComplexMatrix::Zero(n, n)));
  for (int i = 0; i < k; ++i) {
    if (blocks[i].rows() != n || blocks[i].cols() != n) {
      throw InvalidInput("block_diagonal: blocks must share a square size");
    }
    grid[i][i] = blocks[i];
  }
  return grid;
}

double block_diag_lower(int n, const std::vector<ComplexMatrix>& blocks) {
  const BlockGrid grid = block_diagonal(blocks);
  grid_level(n, grid);
  const ComplexMatrix v = ComplexMatrix::Identity(n, n) / static_cast<double>(n);
  const Couple couple = make_couple(spaces::c_max(), spaces::from_scalar_matrix("cmax", v));
  return couple_value(couple, grid);
}

ConvexityViolation convexity_violation(int n, double p) {
  if (n < 1) throw InvalidInput("convexity_violation: n must be positive");
  if (!(p > 1.0)) throw InvalidInput("convexity_violation: p must exceed 1");
  const BlockGrid canonical = correspondence::canonical_I(n);
  BlockGrid doubled(2 * n, std::vector<ComplexMatrix>(2 * n, ComplexMatrix::Zero(n, n)));
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) {
      doubled[k][l] = canonical[k][l];
      doubled[n + k][n + l] = canonical[k][l];
    }
  }
  const LowerBound lower = hat_lower_bound(n, doubled, Catalog{scaled_identity_entry()});
  ConvexityViolation out;
  out.lower_on_sum = lower.value;
  // ||I + I|| <= (||I||^p + ||I||^p)^(1/p) with ||I|| = 1.
  out.bound_if_convex = std::pow(2.0, 1.0 / p);
  out.violated = out.lower_on_sum > out.bound_if_convex + 1e-6;
  return out;
}

FunctionalImage l1_functional_check(int n) {
  const BlockGrid canonical = correspondence::canonical_I(n);
  FunctionalImage out;
  out.image = ComplexMatrix(n, n);
  for (int k = 0; k < n; ++k) {
    for (int l = 0; l < n; ++l) out.image(k, l) = canonical[k][l].trace();
  }
  out.trace_norm_of_image = linalg::trace_norm(out.image);
  return out;
}

}  // namespace matnorm::hat
