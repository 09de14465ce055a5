#pragma once

// Dense complex kernels shared by every other module: the operator and trace
// norms, the trace-norm dual witness, block assembly and seeded samplers.

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace matnorm::linalg {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

/// Row-major m x m grid of equally sized blocks.
using BlockGrid = std::vector<std::vector<ComplexMatrix>>;

struct SvdResult {
  ComplexMatrix left;              // unitary, rows x rows
  std::vector<double> singular_values;  // nonincreasing, min(rows, cols) entries
  ComplexMatrix right;             // unitary, cols x cols
};

/// Throws InvalidInput if any entry is NaN/Inf or the matrix is empty.
void require_valid(const ComplexMatrix& a);

/// Full SVD (left and right factors are square unitaries).
SvdResult svd(const ComplexMatrix& a);

double operator_norm(const ComplexMatrix& a);
double trace_norm(const ComplexMatrix& a);

/// Unitary w with tr(a w) = ||a||_t. Built from the full SVD a = U S V* as
/// w = V U*, so w stays unitary when a is rank deficient.
ComplexMatrix dual_witness(const ComplexMatrix& a);

/// tr(a b) for square a, b of equal size.
Complex trace_pairing(const ComplexMatrix& a, const ComplexMatrix& b);

/// mn x mn matrix whose (k, l) block is blocks[k][l].
ComplexMatrix assemble_blocks(const BlockGrid& blocks);

/// Inverse of assemble_blocks for a given block count per side.
BlockGrid split_blocks(const ComplexMatrix& a, int block_count);

/// Block-diagonal a_1 + ... + a_k.
ComplexMatrix direct_sum(std::span<const ComplexMatrix> parts);

/// e_ij of M_n (zero-based indices).
ComplexMatrix elementary(int n, int i, int j);

/// Haar-distributed unitary: QR of a complex Gaussian matrix with the phases of
/// diag(R) moved into Q.
ComplexMatrix random_unitary(int k, std::uint64_t seed);

/// U diag(s) V* with Haar U, V and s uniform in [0, 1].
ComplexMatrix random_contraction(int k, std::uint64_t seed);

/// Complex matrix with independent standard Gaussian real and imaginary parts.
ComplexMatrix random_gaussian(int rows, int cols, std::uint64_t seed);

/// Child seed for stream `index` of a master seed (splitmix64 finalizer).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

}  // namespace matnorm::linalg
