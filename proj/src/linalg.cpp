#include "matnorm/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "matnorm/errors.hpp"

namespace matnorm::linalg {

void require_valid(const ComplexMatrix& a) {
  if (a.rows() == 0 || a.cols() == 0) {
    throw InvalidInput("matrix has an empty dimension");
  }
  if (!a.allFinite()) {
    throw InvalidInput("matrix has non-finite entries");
  }
}

SvdResult svd(const ComplexMatrix& a) {
  require_valid(a);
  Eigen::JacobiSVD<ComplexMatrix> solver(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  SvdResult out;
  out.left = solver.matrixU();
  out.right = solver.matrixV();
  const auto& s = solver.singularValues();
  out.singular_values.assign(s.data(), s.data() + s.size());
  return out;
}

double operator_norm(const ComplexMatrix& a) {
  require_valid(a);
  Eigen::JacobiSVD<ComplexMatrix> solver(a);
  return solver.singularValues()(0);
}

double trace_norm(const ComplexMatrix& a) {
  require_valid(a);
  Eigen::JacobiSVD<ComplexMatrix> solver(a);
  return solver.singularValues().sum();
}

ComplexMatrix dual_witness(const ComplexMatrix& a) {
  require_valid(a);
  if (a.rows() != a.cols()) {
    throw InvalidInput("dual_witness needs a square matrix");
  }
  if (a.isZero(0.0)) {
    throw DegenerateInput("dual_witness of the zero matrix is not determined");
  }
  const SvdResult f = svd(a);
  return f.right * f.left.adjoint();
}

Complex trace_pairing(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.rows() != a.cols() || b.rows() != b.cols() || a.rows() != b.rows()) {
    throw InvalidInput("trace_pairing needs square matrices of equal size");
  }
  // tr(ab) = sum_ij a_ij b_ji
  return (a.array() * b.transpose().array()).sum();
}

ComplexMatrix assemble_blocks(const BlockGrid& blocks) {
  const auto m = static_cast<Eigen::Index>(blocks.size());
  if (m == 0) throw InvalidInput("assemble_blocks: empty grid");
  const Eigen::Index n = blocks[0].empty() ? 0 : blocks[0][0].rows();
  if (n == 0) throw InvalidInput("assemble_blocks: empty block");
  ComplexMatrix out(m * n, m * n);
  for (Eigen::Index k = 0; k < m; ++k) {
    if (static_cast<Eigen::Index>(blocks[k].size()) != m) {
      throw InvalidInput("assemble_blocks: ragged grid");
    }
    for (Eigen::Index l = 0; l < m; ++l) {
      const auto& b = blocks[k][l];
      if (b.rows() != n || b.cols() != n) {
        throw InvalidInput("assemble_blocks: block " + std::to_string(k) + "," +
                           std::to_string(l) + " is not " + std::to_string(n) + "x" +
                           std::to_string(n));
      }
      out.block(k * n, l * n, n, n) = b;
    }
  }
  return out;
}

BlockGrid split_blocks(const ComplexMatrix& a, int block_count) {
  if (block_count <= 0 || a.rows() != a.cols() || a.rows() % block_count != 0) {
    throw InvalidInput("split_blocks: size is not a multiple of the block count");
  }
  const Eigen::Index n = a.rows() / block_count;
  BlockGrid out(block_count, std::vector<ComplexMatrix>(block_count));
  for (int k = 0; k < block_count; ++k) {
    for (int l = 0; l < block_count; ++l) {
      out[k][l] = a.block(k * n, l * n, n, n);
    }
  }
  return out;
}

ComplexMatrix direct_sum(std::span<const ComplexMatrix> parts) {
  if (parts.empty()) throw InvalidInput("direct_sum of an empty list");
  Eigen::Index total = 0;
  for (const auto& p : parts) {
    if (p.rows() != p.cols()) throw InvalidInput("direct_sum: summand is not square");
    total += p.rows();
  }
  ComplexMatrix out = ComplexMatrix::Zero(total, total);
  Eigen::Index at = 0;
  for (const auto& p : parts) {
    out.block(at, at, p.rows(), p.cols()) = p;
    at += p.rows();
  }
  return out;
}

ComplexMatrix elementary(int n, int i, int j) {
  ComplexMatrix e = ComplexMatrix::Zero(n, n);
  e(i, j) = 1.0;
  return e;
}

ComplexMatrix random_gaussian(int rows, int cols, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  ComplexMatrix g(rows, cols);
  // Fill in a fixed order so the output does not depend on Eigen's storage order.
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      const double re = normal(gen);
      const double im = normal(gen);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

ComplexMatrix random_unitary(int k, std::uint64_t seed) {
  if (k < 1) throw InvalidInput("random_unitary: size must be positive");
  const ComplexMatrix g = random_gaussian(k, k, seed);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (int j = 0; j < k; ++j) {
    const double mag = std::abs(r(j, j));
    if (mag > 0.0) q.col(j) *= r(j, j) / mag;
  }
  return q;
}

ComplexMatrix random_contraction(int k, std::uint64_t seed) {
  if (k < 1) throw InvalidInput("random_contraction: size must be positive");
  const ComplexMatrix u = random_unitary(k, derive_seed(seed, 0));
  const ComplexMatrix v = random_unitary(k, derive_seed(seed, 1));
  std::mt19937_64 gen(derive_seed(seed, 2));
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Eigen::VectorXd s(k);
  for (int i = 0; i < k; ++i) s(i) = unit(gen);
  return u * s.cast<Complex>().asDiagonal() * v.adjoint();
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + 0x9e3779b97f4a7c15ULL * (index + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace matnorm::linalg
