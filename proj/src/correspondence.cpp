#include "matnorm/correspondence.hpp"

#include <algorithm>

#include "matnorm/errors.hpp"

namespace matnorm::correspondence {

linalg::ComplexVector vec(const ComplexMatrix& a) {
  linalg::ComplexVector out(a.size());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) out(i * a.cols() + j) = a(i, j);
  }
  return out;
}

PhiMap phi_of(const LeveledElement& v) {
  const int n = v.level();
  PhiMap phi{n, v.space_id(), ComplexMatrix(v.dim(), n * n)};
  for (int p = 0; p < n; ++p) {
    for (int q = 0; q < n; ++q) phi.matrix.col(p * n + q) = v.entry(q, p);
  }
  return phi;
}

LeveledElement element_of(const PhiMap& phi) {
  const int n = phi.source_dim;
  if (phi.matrix.cols() != n * n) throw InvalidInput("PhiMap matrix must have n^2 columns");
  LeveledElement v(phi.target_space, n, static_cast<int>(phi.matrix.rows()));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) v.entry(i, j) = phi.matrix.col(j * n + i);
  }
  return v;
}

LeveledElement phi_apply(const PhiMap& phi, const ComplexMatrix& a) {
  if (a.rows() != phi.source_dim || a.cols() != phi.source_dim) {
    throw InvalidInput("phi_apply: input must be " + std::to_string(phi.source_dim) + "x" +
                       std::to_string(phi.source_dim));
  }
  return LeveledElement(phi.target_space, 1, ComplexMatrix(phi.matrix * vec(a)));
}

LeveledElement phi_amplified(const PhiMap& phi, const BlockGrid& u) {
  const int m = static_cast<int>(u.size());
  if (m == 0) throw InvalidInput("phi_amplified: empty grid");
  LeveledElement out(phi.target_space, m, static_cast<int>(phi.matrix.rows()));
  for (int k = 0; k < m; ++k) {
    if (static_cast<int>(u[k].size()) != m) throw InvalidInput("phi_amplified: ragged grid");
    for (int l = 0; l < m; ++l) {
      const auto& a = u[k][l];
      if (a.rows() != phi.source_dim || a.cols() != phi.source_dim) {
        throw InvalidInput("phi_amplified: block has the wrong size");
      }
      out.entry(k, l) = phi.matrix * vec(a);
    }
  }
  return out;
}

BlockGrid canonical_I(int n) {
  if (n < 1) throw InvalidInput("canonical_I: n must be positive");
  BlockGrid grid(n, std::vector<ComplexMatrix>(n));
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) grid[j][i] = linalg::elementary(n, i, j);
  }
  return grid;
}

LeveledElement canonical_I_element(int n) {
  return spaces::from_operator_blocks("op:" + std::to_string(n), canonical_I(n));
}

double check_naturality(const ComplexMatrix& psi, const LeveledElement& v,
                        const std::string& target_id, int random_inputs, std::uint64_t seed) {
  if (psi.cols() != v.dim()) {
    throw InvalidInput("check_naturality: map expects dimension " + std::to_string(psi.cols()) +
                       ", element has " + std::to_string(v.dim()));
  }
  const int n = v.level();
  std::vector<ComplexMatrix> inputs;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) inputs.push_back(linalg::elementary(n, i, j));
  }
  for (int r = 0; r < random_inputs; ++r) {
    inputs.push_back(linalg::random_gaussian(n, n, linalg::derive_seed(seed, r)));
  }

  const PhiMap top = phi_of(spaces::amplify(psi, v, target_id));
  const PhiMap inner = phi_of(v);
  double worst = 0.0;
  for (const auto& a : inputs) {
    const ComplexMatrix lhs = phi_apply(top, a).coords();
    const ComplexMatrix rhs = psi * phi_apply(inner, a).coords();
    worst = std::max(worst, (lhs - rhs).cwiseAbs().maxCoeff());
  }
  return worst;
}

ComplexMatrix coproduct_phi(const std::vector<PhiMap>& phis) {
  std::vector<ComplexMatrix> maps;
  maps.reserve(phis.size());
  for (const auto& p : phis) maps.push_back(p.matrix);
  return spaces::coproduct_morphism(maps);
}

}  // namespace matnorm::correspondence
