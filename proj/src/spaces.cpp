#include "matnorm/spaces.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <random>
#include <string>

#include "matnorm/errors.hpp"

namespace matnorm::spaces {

using linalg::derive_seed;

// LeveledElement -------------------------------------------------------------

LeveledElement::LeveledElement(std::string space_id, int level, int dim)
    : space_id_(std::move(space_id)), level_(level) {
  if (level < 1) throw InvalidInput("element level must be positive");
  if (dim < 1) throw InvalidInput("space dimension must be positive");
  coords_ = ComplexMatrix::Zero(dim, static_cast<Eigen::Index>(level) * level);
}

LeveledElement::LeveledElement(std::string space_id, int level, ComplexMatrix coords)
    : space_id_(std::move(space_id)), level_(level), coords_(std::move(coords)) {
  if (level < 1) throw InvalidInput("element level must be positive");
  if (coords_.rows() < 1 || coords_.cols() != static_cast<Eigen::Index>(level) * level) {
    throw InvalidInput("coordinate matrix must be dim x level^2");
  }
  if (!coords_.allFinite()) throw InvalidInput("element has non-finite coordinates");
}

ComplexMatrix LeveledElement::slice(int c) const {
  ComplexMatrix s(level_, level_);
  for (int k = 0; k < level_; ++k) {
    for (int l = 0; l < level_; ++l) s(k, l) = coords_(c, k * level_ + l);
  }
  return s;
}

void LeveledElement::set_slice(int c, const ComplexMatrix& s) {
  for (int k = 0; k < level_; ++k) {
    for (int l = 0; l < level_; ++l) coords_(c, k * level_ + l) = s(k, l);
  }
}

LeveledElement operator+(const LeveledElement& a, const LeveledElement& b) {
  if (a.level() != b.level() || a.dim() != b.dim()) {
    throw InvalidInput("adding elements of different shapes");
  }
  return LeveledElement(a.space_id(), a.level(), ComplexMatrix(a.coords() + b.coords()));
}

LeveledElement operator*(Complex s, const LeveledElement& a) {
  return LeveledElement(a.space_id(), a.level(), ComplexMatrix(s * a.coords()));
}

double real_pairing(const LeveledElement& y, const LeveledElement& x) {
  if (y.coords().rows() != x.coords().rows() || y.coords().cols() != x.coords().cols()) {
    throw InvalidInput("pairing elements of different shapes");
  }
  return (y.coords().conjugate().array() * x.coords().array()).sum().real();
}

double MatricialSpace::norm(const LeveledElement& u) const {
  if (u.dim() != dim) {
    throw InvalidInput("element of dimension " + std::to_string(u.dim()) +
                       " does not belong to space " + id);
  }
  return evaluator(u);
}

// Catalog --------------------------------------------------------------------

namespace {

// Rank-one y = u1 v1* built from the top singular pair; zero for zero input.
ComplexMatrix top_singular_dyad(const ComplexMatrix& x) {
  if (x.isZero(0.0)) return ComplexMatrix::Zero(x.rows(), x.cols());
  const auto f = linalg::svd(x);
  return f.left.col(0) * f.right.col(0).adjoint();
}

// Unitary polar factor U V*; zero for zero input.
ComplexMatrix polar_factor(const ComplexMatrix& x) {
  if (x.isZero(0.0)) return ComplexMatrix::Zero(x.rows(), x.cols());
  const auto f = linalg::svd(x);
  return f.left * f.right.adjoint();
}

int operator_side(const LeveledElement& u) {
  const int k = static_cast<int>(std::lround(std::sqrt(static_cast<double>(u.dim()))));
  if (k * k != u.dim()) throw InvalidInput("element dimension is not a perfect square");
  return k;
}

LeveledElement from_assembled(const std::string& id, int level, int k, const ComplexMatrix& a) {
  LeveledElement u(id, level, k * k);
  for (int K = 0; K < level; ++K) {
    for (int L = 0; L < level; ++L) {
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) u.coords()(i * k + j, K * level + L) = a(K * k + i, L * k + j);
      }
    }
  }
  return u;
}

std::vector<int> part_offsets(const std::vector<MatricialSpace>& parts) {
  std::vector<int> offsets{0};
  for (const auto& p : parts) offsets.push_back(offsets.back() + p.dim);
  return offsets;
}

}  // namespace

ComplexMatrix assembled_operator(const LeveledElement& u) {
  const int k = operator_side(u);
  const int m = u.level();
  ComplexMatrix a(m * k, m * k);
  for (int K = 0; K < m; ++K) {
    for (int L = 0; L < m; ++L) {
      for (int i = 0; i < k; ++i) {
        for (int j = 0; j < k; ++j) a(K * k + i, L * k + j) = u.coords()(i * k + j, K * m + L);
      }
    }
  }
  return a;
}

MatricialSpace c_min() {
  MatricialSpace s;
  s.id = "cmin";
  s.dim = 1;
  s.description = "scalars with the operator norm at every level";
  s.evaluator = [](const LeveledElement& u) { return linalg::operator_norm(u.slice(0)); };
  s.subgradient = [](const LeveledElement& x) {
    LeveledElement y("cmin", x.level(), 1);
    y.set_slice(0, top_singular_dyad(x.slice(0)));
    return y;
  };
  s.polar = [](const LeveledElement& g) {
    LeveledElement v("cmin", g.level(), 1);
    v.set_slice(0, polar_factor(g.slice(0)));
    return v;
  };
  return s;
}

MatricialSpace c_max() {
  MatricialSpace s;
  s.id = "cmax";
  s.dim = 1;
  s.description = "scalars with the trace norm at every level";
  s.evaluator = [](const LeveledElement& u) { return linalg::trace_norm(u.slice(0)); };
  s.subgradient = [](const LeveledElement& x) {
    LeveledElement y("cmax", x.level(), 1);
    y.set_slice(0, polar_factor(x.slice(0)));
    return y;
  };
  s.polar = [](const LeveledElement& g) {
    LeveledElement v("cmax", g.level(), 1);
    v.set_slice(0, top_singular_dyad(g.slice(0)));
    return v;
  };
  return s;
}

MatricialSpace concrete_operator_space(int k) {
  if (k < 1) throw InvalidInput("operator space size must be positive");
  MatricialSpace s;
  s.id = "op:" + std::to_string(k);
  s.dim = k * k;
  s.description = "M_" + std::to_string(k) + " with the operator norm of the assembled matrix";
  s.evaluator = [](const LeveledElement& u) {
    return linalg::operator_norm(assembled_operator(u));
  };
  s.subgradient = [id = s.id, k](const LeveledElement& x) {
    return from_assembled(id, x.level(), k, top_singular_dyad(assembled_operator(x)));
  };
  s.polar = [id = s.id, k](const LeveledElement& g) {
    return from_assembled(id, g.level(), k, polar_factor(assembled_operator(g)));
  };
  return s;
}

MatricialSpace l1_sum(const std::vector<MatricialSpace>& parts) {
  if (parts.empty()) throw InvalidInput("l1_sum of an empty list");
  MatricialSpace s;
  s.id = "l1:[";
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i) s.id += ",";
    s.id += parts[i].id;
  }
  s.id += "]";
  s.description = "l1 sum of " + std::to_string(parts.size()) + " spaces";
  const auto offsets = part_offsets(parts);
  s.dim = offsets.back();

  s.evaluator = [parts](const LeveledElement& u) {
    double total = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      total += parts[i].norm(l1_component(parts, u, i));
    }
    return total;
  };

  const bool friendly = std::all_of(parts.begin(), parts.end(),
                                    [](const MatricialSpace& p) { return p.dual_friendly(); });
  if (friendly) {
    s.subgradient = [parts, offsets, id = s.id](const LeveledElement& x) {
      LeveledElement y(id, x.level(), offsets.back());
      for (std::size_t i = 0; i < parts.size(); ++i) {
        y.coords().middleRows(offsets[i], parts[i].dim) =
            parts[i].subgradient(l1_component(parts, x, i)).coords();
      }
      return y;
    };
    // The unit ball of an l1 sum is the convex hull of the summands' balls, so
    // a linear functional peaks inside the single best summand.
    s.polar = [parts, offsets, id = s.id](const LeveledElement& g) {
      LeveledElement v(id, g.level(), offsets.back());
      double best = -1.0;
      for (std::size_t i = 0; i < parts.size(); ++i) {
        const auto gi = l1_component(parts, g, i);
        const auto vi = parts[i].polar(gi);
        const double value = real_pairing(gi, vi);
        if (value > best) {
          best = value;
          v.coords().setZero();
          v.coords().middleRows(offsets[i], parts[i].dim) = vi.coords();
        }
      }
      return v;
    };
  }
  return s;
}

MatricialSpace with_level_offset(MatricialSpace space, int level, double offset) {
  auto inner = space.evaluator;
  space.id = "faulty:" + space.id;
  space.description += " (norm shifted at level " + std::to_string(level) + ")";
  space.evaluator = [inner, level, offset](const LeveledElement& u) {
    const double value = inner(u);
    return u.level() == level ? value + offset : value;
  };
  space.subgradient = nullptr;
  space.polar = nullptr;
  return space;
}

namespace {

class IdParser {
 public:
  explicit IdParser(const std::string& text) : text_(text) {}

  MatricialSpace parse_all() {
    auto s = parse_one();
    if (pos_ != text_.size()) fail("trailing characters");
    return s;
  }

 private:
  MatricialSpace parse_one() {
    if (consume("cmin")) return c_min();
    if (consume("cmax")) return c_max();
    if (consume("op:")) {
      const std::size_t start = pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected a size after op:");
      const int k = std::stoi(text_.substr(start, pos_ - start));
      if (k < 1 || k > 16) fail("op:k needs 1 <= k <= 16");
      return concrete_operator_space(k);
    }
    if (consume("l1:[")) {
      std::vector<MatricialSpace> parts;
      parts.push_back(parse_one());
      while (consume(",")) parts.push_back(parse_one());
      if (!consume("]")) fail("expected ']'");
      return l1_sum(parts);
    }
    fail("unknown space");
  }

  bool consume(std::string_view token) {
    if (text_.compare(pos_, token.size(), token) == 0) {
      pos_ += token.size();
      return true;
    }
    return false;
  }

  [[noreturn]] void fail(const std::string& why) const {
    throw InvalidInput("cannot parse space id '" + text_ + "' at offset " + std::to_string(pos_) +
                       ": " + why);
  }

  const std::string& text_;
  std::size_t pos_ = 0;
};

}  // namespace

MatricialSpace parse_space(const std::string& id) { return IdParser(id).parse_all(); }

// Element constructors and operations ----------------------------------------

LeveledElement from_scalar_matrix(const std::string& space_id, const ComplexMatrix& a) {
  if (a.rows() != a.cols()) throw InvalidInput("scalar matrix must be square");
  LeveledElement u(space_id, static_cast<int>(a.rows()), 1);
  u.set_slice(0, a);
  if (!u.coords().allFinite()) throw InvalidInput("element has non-finite coordinates");
  return u;
}

LeveledElement from_operator_blocks(const std::string& space_id, const linalg::BlockGrid& blocks) {
  const ComplexMatrix a = linalg::assemble_blocks(blocks);
  const int m = static_cast<int>(blocks.size());
  return from_assembled(space_id, m, static_cast<int>(blocks[0][0].rows()), a);
}

LeveledElement operator_point(const std::string& space_id, const ComplexMatrix& x) {
  return from_operator_blocks(space_id, linalg::BlockGrid{{x}});
}

LeveledElement scalar_action(const ComplexMatrix& s, const LeveledElement& u, const ComplexMatrix& t) {
  const int m = u.level();
  if (s.rows() != m || s.cols() != m || t.rows() != m || t.cols() != m) {
    throw InvalidInput("scalar_action: S and T must be " + std::to_string(m) + "x" +
                       std::to_string(m));
  }
  LeveledElement out(u.space_id(), m, u.dim());
  for (int c = 0; c < u.dim(); ++c) out.set_slice(c, s * u.slice(c) * t);
  return out;
}

LeveledElement pad(const LeveledElement& u, int extra) {
  if (extra < 0) throw InvalidInput("pad: negative size");
  const int m = u.level();
  LeveledElement out(u.space_id(), m + extra, u.dim());
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) out.entry(k, l) = u.entry(k, l);
  }
  return out;
}

LeveledElement direct_sum(const std::vector<LeveledElement>& parts) {
  if (parts.empty()) throw InvalidInput("direct_sum of an empty list");
  int total = 0;
  for (const auto& p : parts) {
    if (p.dim() != parts[0].dim()) throw InvalidInput("direct_sum across different spaces");
    total += p.level();
  }
  LeveledElement out(parts[0].space_id(), total, parts[0].dim());
  int at = 0;
  for (const auto& p : parts) {
    for (int k = 0; k < p.level(); ++k) {
      for (int l = 0; l < p.level(); ++l) out.entry(at + k, at + l) = p.entry(k, l);
    }
    at += p.level();
  }
  return out;
}

LeveledElement amplify(const ComplexMatrix& psi, const LeveledElement& u, const std::string& target_id) {
  if (psi.cols() != u.dim()) {
    throw InvalidInput("amplify: map expects dimension " + std::to_string(psi.cols()) + ", got " +
                       std::to_string(u.dim()));
  }
  return LeveledElement(target_id, u.level(), ComplexMatrix(psi * u.coords()));
}

LeveledElement l1_component(const std::vector<MatricialSpace>& parts, const LeveledElement& u,
                            std::size_t index) {
  const auto offsets = part_offsets(parts);
  if (index >= parts.size()) throw InvalidInput("l1_component: index out of range");
  if (u.dim() != offsets.back()) throw InvalidInput("l1_component: element dimension mismatch");
  return LeveledElement(parts[index].id, u.level(),
                        ComplexMatrix(u.coords().middleRows(offsets[index], parts[index].dim)));
}

ComplexMatrix coproduct_injection(const std::vector<int>& dims, std::size_t index) {
  if (index >= dims.size()) throw InvalidInput("coproduct_injection: index out of range");
  int total = 0;
  int offset = 0;
  for (std::size_t i = 0; i < dims.size(); ++i) {
    if (i == index) offset = total;
    total += dims[i];
  }
  ComplexMatrix inj = ComplexMatrix::Zero(total, dims[index]);
  inj.middleRows(offset, dims[index]).setIdentity();
  return inj;
}

ComplexMatrix coproduct_injection(const std::vector<MatricialSpace>& parts, std::size_t index) {
  std::vector<int> dims;
  for (const auto& p : parts) dims.push_back(p.dim);
  return coproduct_injection(dims, index);
}

ComplexMatrix coproduct_morphism(const std::vector<ComplexMatrix>& maps) {
  if (maps.empty()) throw InvalidInput("coproduct of an empty family");
  Eigen::Index cols = 0;
  for (const auto& m : maps) {
    if (m.rows() != maps[0].rows()) throw InvalidInput("coproduct: maps have different targets");
    cols += m.cols();
  }
  ComplexMatrix out(maps[0].rows(), cols);
  Eigen::Index at = 0;
  for (const auto& m : maps) {
    out.middleCols(at, m.cols()) = m;
    at += m.cols();
  }
  return out;
}

// Sampling -------------------------------------------------------------------

LeveledElement sample_element(const MatricialSpace& space, int level, SampleKind kind,
                              std::uint64_t seed) {
  LeveledElement u(space.id, level, space.dim);
  std::mt19937_64 gen(seed);
  switch (kind) {
    case SampleKind::gaussian:
      u.coords() = linalg::random_gaussian(space.dim, level * level, derive_seed(seed, 1));
      break;
    case SampleKind::elementary: {
      std::uniform_int_distribution<int> entry(0, level * level - 1);
      std::uniform_int_distribution<int> coord(0, space.dim - 1);
      const int col = entry(gen);
      u.coords()(coord(gen), col) = 1.0;
      break;
    }
    case SampleKind::diagonal: {
      const ComplexMatrix g = linalg::random_gaussian(space.dim, level, derive_seed(seed, 1));
      for (int k = 0; k < level; ++k) u.entry(k, k) = g.col(k);
      break;
    }
    case SampleKind::unitary_conjugated: {
      u.coords() = linalg::random_gaussian(space.dim, level * level, derive_seed(seed, 1));
      const ComplexMatrix w = linalg::random_unitary(level, derive_seed(seed, 2));
      u = scalar_action(w, u, w.adjoint());
      break;
    }
  }
  const double nrm = space.norm(u);
  if (nrm > 0.0) u.coords() /= nrm;
  return u;
}

// Checkers -------------------------------------------------------------------

namespace {

constexpr SampleKind kAllKinds[] = {SampleKind::gaussian, SampleKind::elementary,
                                    SampleKind::diagonal, SampleKind::unitary_conjugated};

ComplexMatrix sample_scalar(int m, int variant, std::uint64_t seed) {
  switch (variant % 3) {
    case 0: return linalg::random_contraction(m, seed);
    case 1: return linalg::random_unitary(m, seed);
    default: return linalg::random_gaussian(m, m, seed);
  }
}

}  // namespace

AxiomReport check_axioms(const MatricialSpace& space, int trials, std::uint64_t seed,
                         AxiomCheckOptions options) {
  AxiomReport report;
  report.trials = trials;
  for (int trial = 0; trial < trials; ++trial) {
    for (int m = 1; m <= options.max_level; ++m) {
      const std::uint64_t base = derive_seed(seed, static_cast<std::uint64_t>(trial) * 64 + m);
      const SampleKind kind = kAllKinds[(trial + m) % 4];
      const LeveledElement u = sample_element(space, m, kind, derive_seed(base, 0));
      const double nu = space.norm(u);

      for (int extra = 1; extra <= options.max_extra; ++extra) {
        const double v = std::abs(space.norm(pad(u, extra)) - nu);
        if (!report.worst_axiom1 || v > report.axiom1_max_violation) {
          report.axiom1_max_violation = v;
          report.worst_axiom1 = AxiomSample{u, extra, std::nullopt, std::nullopt};
        }
      }

      const ComplexMatrix s = sample_scalar(m, trial, derive_seed(base, 1));
      const ComplexMatrix t = sample_scalar(m, trial + 1, derive_seed(base, 2));
      const ComplexMatrix id = ComplexMatrix::Identity(m, m);
      const double left =
          std::max(0.0, space.norm(scalar_action(s, u, id)) - linalg::operator_norm(s) * nu);
      const double right =
          std::max(0.0, space.norm(scalar_action(id, u, t)) - nu * linalg::operator_norm(t));
      if (!report.worst_axiom2 || left > report.axiom2_max_violation) {
        report.axiom2_max_violation = left;
        report.worst_axiom2 = AxiomSample{u, 0, s, std::nullopt};
      }
      if (right > report.axiom2_max_violation) {
        report.axiom2_max_violation = right;
        report.worst_axiom2 = AxiomSample{u, 0, std::nullopt, t};
      }
    }
  }
  return report;
}

ConvexityReport check_p_convexity(const MatricialSpace& space, double p, int trials,
                                  std::uint64_t seed) {
  if (!(p >= 1.0)) throw InvalidInput("p must be at least 1");
  ConvexityReport report;
  for (int trial = 0; trial < trials; ++trial) {
    const std::uint64_t base = derive_seed(seed, static_cast<std::uint64_t>(trial));
    std::mt19937_64 gen(base);
    std::uniform_int_distribution<int> level(1, 3);
    std::uniform_real_distribution<double> scale(0.1, 2.0);
    const int k = 2 + trial % 2;

    std::vector<LeveledElement> tuple;
    double lp = 0.0;
    for (int i = 0; i < k; ++i) {
      const SampleKind kind = kAllKinds[(trial + i) % 4];
      auto u = sample_element(space, level(gen), kind, derive_seed(base, i + 1));
      u.coords() *= scale(gen);
      lp += std::pow(space.norm(u), p);
      tuple.push_back(std::move(u));
    }
    const double gap = space.norm(direct_sum(tuple)) - std::pow(lp, 1.0 / p);
    if (gap > report.max_violation) {
      report.max_violation = gap;
      report.witness = std::move(tuple);
    }
  }
  return report;
}

}  // namespace matnorm::spaces
