#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "matnorm/errors.hpp"
#include "matnorm/linalg.hpp"

using namespace matnorm;
using namespace matnorm::linalg;

namespace {

// Singular values from the eigenvalues of A*A; independent of the SVD path.
std::vector<double> singular_values_oracle(const ComplexMatrix& a) {
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> eig(a.adjoint() * a);
  std::vector<double> s;
  for (Eigen::Index i = eig.eigenvalues().size() - 1; i >= 0; --i) {
    s.push_back(std::sqrt(std::max(0.0, eig.eigenvalues()(i))));
  }
  return s;
}

ComplexMatrix diag(std::initializer_list<double> d) {
  Eigen::VectorXd v(static_cast<Eigen::Index>(d.size()));
  int i = 0;
  for (double x : d) v(i++) = x;
  return v.cast<Complex>().asDiagonal();
}

}  // namespace

TEST(OperatorNorm, ClosedForms) {
  EXPECT_DOUBLE_EQ(operator_norm(ComplexMatrix::Identity(2, 2)), 1.0);
  EXPECT_NEAR(operator_norm(diag({3, -4})), 4.0, 1e-14);
}

TEST(OperatorNorm, MatchesEigenOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix a = random_gaussian(5, 5, seed);
    EXPECT_NEAR(operator_norm(a), singular_values_oracle(a).front(), 1e-9);
  }
}

TEST(OperatorNorm, RejectsNonFinite) {
  ComplexMatrix a = ComplexMatrix::Identity(2, 2);
  a(0, 1) = std::numeric_limits<double>::quiet_NaN();
  EXPECT_THROW(operator_norm(a), InvalidInput);
  a(0, 1) = std::numeric_limits<double>::infinity();
  EXPECT_THROW(trace_norm(a), InvalidInput);
}

TEST(TraceNorm, ClosedForms) {
  EXPECT_NEAR(trace_norm(diag({3, -4})), 7.0, 1e-14);
  for (int k = 1; k <= 5; ++k) {
    EXPECT_NEAR(trace_norm(random_unitary(k, 40 + k)), static_cast<double>(k), 1e-10);
  }
}

TEST(TraceNorm, MatchesEigenOracle) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix a = random_gaussian(4, 4, 100 + seed);
    double sum = 0.0;
    for (double s : singular_values_oracle(a)) sum += s;
    EXPECT_NEAR(trace_norm(a), sum, 1e-9);
  }
}

TEST(TraceNorm, Rectangular) {
  const ComplexMatrix a = random_gaussian(3, 5, 7);
  double sum = 0.0;
  const auto s = singular_values_oracle(a.adjoint());  // 3 nonzero values
  for (double x : s) sum += x;
  EXPECT_NEAR(trace_norm(a), sum, 1e-9);
}

TEST(Svd, ReconstructsAndSorts) {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ComplexMatrix a = random_gaussian(4, 3, 200 + seed);
    const auto f = svd(a);
    ComplexMatrix sigma = ComplexMatrix::Zero(4, 3);
    for (std::size_t i = 0; i < f.singular_values.size(); ++i) sigma(i, i) = f.singular_values[i];
    const double err = operator_norm(a - f.left * sigma * f.right.adjoint());
    EXPECT_LE(err, 1e-10 * std::max(1.0, operator_norm(a)));
    for (std::size_t i = 1; i < f.singular_values.size(); ++i) {
      EXPECT_GE(f.singular_values[i - 1], f.singular_values[i]);
    }
    EXPECT_LE(operator_norm(f.left.adjoint() * f.left - ComplexMatrix::Identity(4, 4)), 1e-10);
    EXPECT_LE(operator_norm(f.right.adjoint() * f.right - ComplexMatrix::Identity(3, 3)), 1e-10);
  }
}

TEST(NormInequalities, OperatorBelowTraceBelowRankBound) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const int k = 1 + static_cast<int>(seed % 6);
    ComplexMatrix a = random_gaussian(k, k, 300 + seed);
    a *= 10.0 / std::max(1.0, operator_norm(a));
    const double op = operator_norm(a);
    const double tr = trace_norm(a);
    EXPECT_LE(op, tr + 1e-9);
    EXPECT_LE(tr, k * op + 1e-9);
  }
}

TEST(DualWitness, PositiveDiagonalGivesIdentity) {
  const ComplexMatrix w = dual_witness(diag({1, 2}));
  EXPECT_LE(operator_norm(w - ComplexMatrix::Identity(2, 2)), 1e-12);
  EXPECT_NEAR(trace_pairing(diag({1, 2}), w).real(), 3.0, 1e-12);
}

TEST(DualWitness, ScalarCase) {
  ComplexMatrix a(1, 1);
  a(0, 0) = Complex(3.0, 4.0);  // |a| = 5
  const ComplexMatrix w = dual_witness(a);
  EXPECT_NEAR(std::abs(trace_pairing(a, w) - Complex(5.0, 0.0)), 0.0, 1e-12);
}

TEST(DualWitness, RandomPairingEqualsTraceNorm) {
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    const ComplexMatrix a = random_gaussian(3, 3, 400 + seed);
    const ComplexMatrix w = dual_witness(a);
    EXPECT_NEAR(operator_norm(w), 1.0, 1e-12);
    const Complex pairing = trace_pairing(a, w);
    EXPECT_NEAR(pairing.real(), trace_norm(a), 1e-9);
    EXPECT_NEAR(pairing.imag(), 0.0, 1e-9);
  }
}

TEST(DualWitness, RankDeficientStaysUnitary) {
  const ComplexMatrix x = random_gaussian(4, 1, 9);
  const ComplexMatrix a = x * x.adjoint();  // rank one
  const ComplexMatrix w = dual_witness(a);
  EXPECT_LE(operator_norm(w.adjoint() * w - ComplexMatrix::Identity(4, 4)), 1e-10);
  EXPECT_NEAR(trace_pairing(a, w).real(), trace_norm(a), 1e-9);
}

TEST(DualWitness, ZeroIsDegenerate) {
  EXPECT_THROW(dual_witness(ComplexMatrix::Zero(3, 3)), DegenerateInput);
  EXPECT_THROW(dual_witness(random_gaussian(2, 3, 1)), InvalidInput);
}

TEST(Duality, ContractionsNeverBeatTheWitness) {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const ComplexMatrix a = random_gaussian(3, 3, 500 + seed);
    const double tn = trace_norm(a);
    EXPECT_NEAR(trace_pairing(a, dual_witness(a)).real(), tn, 1e-9);
    for (std::uint64_t t = 0; t < 2000; ++t) {
      EXPECT_LE(std::abs(trace_pairing(a, random_contraction(3, derive_seed(seed, t)))), tn + 1e-9);
    }
  }
}

TEST(TracePairing, ElementaryProducts) {
  EXPECT_EQ(trace_pairing(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(2, 2)), Complex(2.0));
  EXPECT_EQ(trace_pairing(elementary(2, 0, 1), elementary(2, 1, 0)), Complex(1.0));
  EXPECT_EQ(trace_pairing(elementary(2, 0, 1), elementary(2, 0, 1)), Complex(0.0));
  EXPECT_THROW(trace_pairing(ComplexMatrix::Identity(2, 2), ComplexMatrix::Identity(3, 3)), InvalidInput);
}

TEST(Blocks, AssembleSingleBlock) {
  const ComplexMatrix a = random_gaussian(3, 3, 11);
  EXPECT_EQ(assemble_blocks({{a}}), a);
}

TEST(Blocks, DiagonalIdentityLayout) {
  const ComplexMatrix i2 = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix z = ComplexMatrix::Zero(2, 2);
  EXPECT_EQ(assemble_blocks({{i2, z}, {z, i2}}), ComplexMatrix::Identity(4, 4));
}

TEST(Blocks, CanonicalElementIsTheFlip) {
  // Block (j, i) is e_ij.
  const BlockGrid grid{{elementary(2, 0, 0), elementary(2, 1, 0)}, {elementary(2, 0, 1), elementary(2, 1, 1)}};
  ComplexMatrix expected = ComplexMatrix::Zero(4, 4);
  expected(0, 0) = 1.0;
  expected(1, 2) = 1.0;
  expected(2, 1) = 1.0;
  expected(3, 3) = 1.0;
  EXPECT_EQ(assemble_blocks(grid), expected);
}

TEST(Blocks, SplitInvertsAssemble) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const int m = 1 + static_cast<int>(seed % 4);
    const int n = 1 + static_cast<int>((seed / 4) % 3);
    BlockGrid grid(m);
    for (int k = 0; k < m; ++k) {
      for (int l = 0; l < m; ++l) grid[k].push_back(random_gaussian(n, n, derive_seed(seed, k * m + l)));
    }
    EXPECT_EQ(split_blocks(assemble_blocks(grid), m), grid);
  }
}

TEST(Blocks, RaggedInputRejected) {
  const ComplexMatrix a = ComplexMatrix::Identity(2, 2);
  const ComplexMatrix b = ComplexMatrix::Identity(3, 3);
  EXPECT_THROW(assemble_blocks({{a, b}, {a, a}}), InvalidInput);
  EXPECT_THROW(assemble_blocks({{a, a}, {a}}), InvalidInput);
  EXPECT_THROW(split_blocks(ComplexMatrix::Identity(5, 5), 2), InvalidInput);
}

TEST(DirectSum, Examples) {
  const std::vector<ComplexMatrix> ones{ComplexMatrix::Identity(1, 1), ComplexMatrix::Identity(1, 1)};
  EXPECT_EQ(direct_sum(ones), ComplexMatrix::Identity(2, 2));

  ComplexMatrix three(1, 1), minus_four(1, 1);
  three(0, 0) = 3.0;
  minus_four(0, 0) = -4.0;
  const std::vector<ComplexMatrix> parts{three, minus_four};
  EXPECT_EQ(direct_sum(parts), diag({3, -4}));
  EXPECT_NEAR(trace_norm(direct_sum(parts)), 7.0, 1e-14);

  const ComplexMatrix a = random_gaussian(3, 3, 5);
  const std::vector<ComplexMatrix> padded{a, ComplexMatrix::Zero(2, 2)};
  EXPECT_NEAR(trace_norm(direct_sum(padded)), trace_norm(a), 1e-12);

  EXPECT_THROW(direct_sum(std::vector<ComplexMatrix>{}), InvalidInput);
}

TEST(Samplers, UnitaryContractionAndDeterminism) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const ComplexMatrix u = random_unitary(3, seed);
    EXPECT_LE(operator_norm(u.adjoint() * u - ComplexMatrix::Identity(3, 3)), 1e-10);
    EXPECT_LE(operator_norm(random_contraction(4, seed)), 1.0 + 1e-12);
  }
  EXPECT_EQ(random_unitary(4, 77), random_unitary(4, 77));
  EXPECT_EQ(random_contraction(4, 77), random_contraction(4, 77));
  EXPECT_NE(random_unitary(4, 77), random_unitary(4, 78));
}
