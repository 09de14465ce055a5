#include <gtest/gtest.h>

#include <cmath>

#include "matnorm/correspondence.hpp"
#include "matnorm/errors.hpp"
#include "matnorm/hat_space.hpp"

using namespace matnorm;
using namespace matnorm::hat;
using linalg::Complex;
using linalg::derive_seed;

namespace {

OptimizerConfig small_budget(std::uint64_t seed = 0) {
  OptimizerConfig c;
  c.restarts = 2;
  c.iterations = 40;
  c.seed = seed;
  return c;
}

BlockGrid random_grid(int n, int m, std::uint64_t seed) {
  BlockGrid u(m);
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) u[k].push_back(linalg::random_gaussian(n, n, derive_seed(seed, k * m + l)));
  }
  return u;
}

BlockGrid zero_grid(int n, int m) {
  return BlockGrid(m, std::vector<ComplexMatrix>(m, ComplexMatrix::Zero(n, n)));
}

ComplexMatrix swap2() {
  ComplexMatrix a = ComplexMatrix::Zero(2, 2);
  a(0, 1) = a(1, 0) = 1.0;
  return a;
}

// Transforms u by scalar matrices S (left) and T (right) acting on the m x m grid.
BlockGrid act(const ComplexMatrix& s, const BlockGrid& u, const ComplexMatrix& t) {
  const int m = static_cast<int>(u.size());
  const auto n = u[0][0].rows();
  BlockGrid out(m, std::vector<ComplexMatrix>(m, ComplexMatrix::Zero(n, n)));
  for (int k = 0; k < m; ++k) {
    for (int l = 0; l < m; ++l) {
      for (int p = 0; p < m; ++p) {
        for (int q = 0; q < m; ++q) out[k][l] += s(k, p) * u[p][q] * t(q, l);
      }
    }
  }
  return out;
}

}  // namespace

TEST(LowerBound, CanonicalElementReachesOne) {
  for (int n = 2; n <= 3; ++n) {
    const auto lb = hat_lower_bound(n, correspondence::canonical_I(n), default_catalog(n), small_budget());
    EXPECT_GE(lb.value, 1.0 - 1e-9);
    EXPECT_LE(lb.value, 1.0 + 1e-9);
    EXPECT_NEAR(couple_value(lb.certificate, correspondence::canonical_I(n)), lb.value, 1e-12);
  }
}

TEST(LowerBound, DualWitnessGivesTraceNorm) {
  const ComplexMatrix a = linalg::random_gaussian(3, 3, 4);
  const auto lb = hat_lower_bound(3, {{a}}, {trace_dual_entry()});
  EXPECT_NEAR(lb.value, linalg::trace_norm(a), 1e-9);
  EXPECT_EQ(lb.certificate.space.id, "cmin");
}

TEST(LowerBound, ZeroIsZero) {
  const auto lb = hat_lower_bound(2, zero_grid(2, 2), default_catalog(2), small_budget());
  EXPECT_EQ(lb.value, 0.0);
  EXPECT_TRUE(lb.certificate.v.is_zero());
}

TEST(LowerBound, FirstFoundWinsTies) {
  const auto v = spaces::from_scalar_matrix("cmax", ComplexMatrix::Identity(2, 2) / 2.0);
  const Catalog catalog{fixed_entry(make_couple(spaces::c_max(), v)), scaled_identity_entry()};
  const auto lb = hat_lower_bound(2, {{ComplexMatrix::Identity(2, 2)}}, catalog);
  EXPECT_EQ(lb.couples_evaluated, 2);
  EXPECT_NEAR(lb.value, 1.0, 1e-14);
}

TEST(UpperBound, Examples) {
  const auto diag = hat_upper_bound(2, {{ComplexMatrix::Identity(2, 2)}});
  EXPECT_NEAR(diag.value, 2.0, 1e-12);
  EXPECT_EQ(diag.rule, UpperRule::level1_trace);

  const auto canon = correspondence::canonical_I(2);
  EXPECT_NEAR(entry_trace_bound(canon), 4.0, 1e-12);
  EXPECT_NEAR(entrywise_bound(canon), 4.0, 1e-12);
  EXPECT_NEAR(hat_upper_bound(2, canon).value, 4.0, 1e-12);

  const ComplexMatrix a = linalg::random_gaussian(2, 2, 5);
  BlockGrid single = zero_grid(2, 2);
  single[0][0] = a;
  EXPECT_NEAR(hat_upper_bound(2, single).value, linalg::trace_norm(a), 1e-9);
}

TEST(UpperBound, RuleOracles) {
  const auto u = random_grid(2, 3, 7);
  double abs_sum = 0.0, trace_sum = 0.0;
  for (const auto& row : u) {
    for (const auto& b : row) {
      abs_sum += b.cwiseAbs().sum();
      trace_sum += linalg::trace_norm(b);
    }
  }
  EXPECT_NEAR(entrywise_bound(u), abs_sum, 1e-12);
  EXPECT_NEAR(entry_trace_bound(u), trace_sum, 1e-9);
  const double upper = hat_upper_bound(2, u).value;
  EXPECT_LE(upper, std::min({abs_sum, trace_sum, block_decomposition_bound(u)}) + 1e-12);
}

TEST(UpperBound, BlockDecompositionExactAtNOne) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const auto u = random_grid(1, 1 + static_cast<int>(seed % 5), seed);
    EXPECT_NEAR(block_decomposition_bound(u), linalg::trace_norm(linalg::assemble_blocks(u)), 1e-9);
  }
}

TEST(UpperRule, Names) {
  EXPECT_EQ(to_string(UpperRule::prop1_entrywise), "prop1_entrywise");
  EXPECT_EQ(to_string(UpperRule::level1_trace), "level1_trace");
  EXPECT_EQ(to_string(UpperRule::entry_trace_sum), "entry_trace_sum");
  EXPECT_EQ(to_string(UpperRule::block_min), "block_min");
}

TEST(HatBounds, CanonicalElementInterval) {
  const auto b = hat_bounds(2, correspondence::canonical_I(2), default_catalog(2), small_budget());
  EXPECT_GE(b.lower, 1.0 - 1e-9);
  EXPECT_NEAR(b.upper, 4.0, 1e-12);
  EXPECT_EQ(b.n, 2);
  EXPECT_EQ(b.m, 2);
}

TEST(HatBounds, LevelOneIsExact) {
  const auto b = hat_bounds(2, {{swap2()}}, default_catalog(2), small_budget());
  EXPECT_NEAR(b.lower, 2.0, 1e-9);
  EXPECT_NEAR(b.upper, 2.0, 1e-12);
  EXPECT_EQ(b.rule, UpperRule::level1_trace);
}

TEST(HatBounds, NOneIsCMax) {
  for (int m = 1; m <= 5; ++m) {
    const auto u = random_grid(1, m, 100 + m);
    const double expected = linalg::trace_norm(linalg::assemble_blocks(u));
    const auto b = hat_bounds(1, u, default_catalog(1), small_budget());
    EXPECT_NEAR(b.lower, expected, 1e-9);
    EXPECT_NEAR(b.upper, expected, 1e-9);
    // The (cmax, 1) couple alone certifies it.
    EXPECT_NEAR(hat_lower_bound(1, u, {scaled_identity_entry()}).value, expected, 1e-9);
  }
  const BlockGrid id2{{ComplexMatrix::Identity(1, 1), ComplexMatrix::Zero(1, 1)},
                      {ComplexMatrix::Zero(1, 1), ComplexMatrix::Identity(1, 1)}};
  const auto b = hat_bounds(1, id2, default_catalog(1), small_budget());
  EXPECT_NEAR(b.lower, 2.0, 1e-9);
  EXPECT_NEAR(b.upper, 2.0, 1e-9);
}

TEST(HatBounds, ZeroGivesZeroInterval) {
  const auto b = hat_bounds(3, zero_grid(3, 2), default_catalog(3));
  EXPECT_EQ(b.lower, 0.0);
  EXPECT_EQ(b.upper, 0.0);
}

TEST(HatBounds, FalseCoupleIsInconsistent) {
  // A couple outside the unit ball, built without make_couple, overshoots the
  // certified upper bound.
  const auto v = spaces::from_scalar_matrix("cmin", 10.0 * linalg::dual_witness(swap2()));
  const Catalog bogus{fixed_entry(Couple{spaces::c_min(), v})};
  EXPECT_THROW(hat_bounds(2, {{swap2()}}, bogus), InternalInconsistency);
  try {
    hat_bounds(2, {{swap2()}}, bogus);
  } catch (const InternalInconsistency& e) {
    EXPECT_NE(e.details().find("cmin"), std::string::npos);
  }
}

TEST(HatBounds, RejectsMalformedGrid) {
  EXPECT_THROW(hat_bounds(2, {{ComplexMatrix::Identity(3, 3)}}, default_catalog(2)), InvalidInput);
  EXPECT_THROW(hat_bounds(2, {}, default_catalog(2)), InvalidInput);
}

TEST(BlockDiag, Examples) {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  EXPECT_NEAR(block_diag_lower(2, {i2, i2}), 2.0, 1e-12);
  EXPECT_NEAR(block_diag_lower(3, {ComplexMatrix::Identity(3, 3)}), 1.0, 1e-12);
  ComplexMatrix d = ComplexMatrix::Zero(2, 2);
  d(0, 0) = 1.0;
  EXPECT_NEAR(block_diag_lower(2, {d}), 0.5, 1e-12);
}

TEST(BlockDiag, PsdClosedFormAndCatalogDomination) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int n = 1 + static_cast<int>(seed % 3);
    const int k = 1 + static_cast<int>((seed / 3) % 3);
    std::vector<ComplexMatrix> blocks;
    double closed = 0.0;
    for (int i = 0; i < k; ++i) {
      const ComplexMatrix g = linalg::random_gaussian(n, n, derive_seed(seed, i));
      blocks.push_back(g * g.adjoint());
      closed += linalg::trace_norm(blocks.back()) / n;
    }
    const double value = block_diag_lower(n, blocks);
    EXPECT_NEAR(value, closed, 1e-9);
    EXPECT_LE(value, hat_lower_bound(n, block_diagonal(blocks), default_catalog(n), small_budget(seed)).value + 1e-9);
  }
}

TEST(Convexity, ViolatedForEveryP) {
  for (int n = 1; n <= 4; ++n) {
    for (double p : {1.01, 1.5, 2.0, 10.0}) {
      const auto r = convexity_violation(n, p);
      EXPECT_TRUE(r.violated) << n << " " << p;
      EXPECT_GE(r.lower_on_sum, 2.0 - 1e-9);
      EXPECT_NEAR(r.bound_if_convex, std::pow(2.0, 1.0 / p), 1e-12);
    }
  }
  EXPECT_NEAR(convexity_violation(2, 2.0).bound_if_convex, 1.41421356, 1e-8);
  EXPECT_NEAR(convexity_violation(2, 1.01).bound_if_convex, 1.986, 1e-3);
  EXPECT_THROW(convexity_violation(2, 1.0), InvalidInput);
  EXPECT_THROW(convexity_violation(0, 2.0), InvalidInput);
}

TEST(L1Functional, ImageIsIdentity) {
  for (int n = 1; n <= 6; ++n) {
    const auto r = l1_functional_check(n);
    EXPECT_EQ(r.image, ComplexMatrix::Identity(n, n));
    EXPECT_NEAR(r.trace_norm_of_image, static_cast<double>(n), 1e-12);
  }
}

TEST(Soundness, CatalogNeverExceedsUpperBound) {
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const int n = 1 + static_cast<int>(seed % 3);
    const int m = 1 + static_cast<int>((seed / 3) % 3);
    const auto u = random_grid(n, m, seed);
    const double upper = hat_upper_bound(n, u).value;
    for (const auto& entry : default_catalog(n)) {
      for (const auto& couple : entry.generate(n, u, small_budget(seed))) {
        EXPECT_LE(couple_value(couple, u), upper + 1e-9) << entry.name;
      }
    }
  }
}

TEST(Scaling, ContractionsNeverIncreaseCoupleValues) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const int n = 2;
    const int m = 2 + static_cast<int>(seed % 2);
    const auto u = random_grid(n, m, seed);
    ComplexMatrix s = linalg::random_gaussian(m, m, derive_seed(seed, 50));
    ComplexMatrix t = linalg::random_gaussian(m, m, derive_seed(seed, 51));
    s /= linalg::operator_norm(s);
    t /= linalg::operator_norm(t);
    const auto sut = act(s, u, t);
    const auto lb = hat_lower_bound(n, sut, default_catalog(n), small_budget(seed));
    EXPECT_LE(lb.value, couple_value(lb.certificate, u) + 1e-9);
  }
}
