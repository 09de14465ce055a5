#pragma once

// The isomorphism between M_n(E) and linear maps M_n -> E: an element
// v = (x_ij) corresponds to phi^v(a) = sum_ij a_ji x_ij.

#include <string>
#include <vector>

#include "matnorm/linalg.hpp"
#include "matnorm/spaces.hpp"

namespace matnorm::correspondence {

using linalg::BlockGrid;
using linalg::ComplexMatrix;
using spaces::LeveledElement;

/// phi^v as a dim(E) x n^2 matrix acting on row-major vec(a). Column p*n + q
/// is the image of e_pq, which is x_qp.
struct PhiMap {
  int source_dim = 0;  // n
  std::string target_space;
  ComplexMatrix matrix;
};

PhiMap phi_of(const LeveledElement& v);

/// Inverse of phi_of.
LeveledElement element_of(const PhiMap& phi);

/// phi(a) as a level-1 element of the target space.
LeveledElement phi_apply(const PhiMap& phi, const ComplexMatrix& a);

/// (phi)_m applied entrywise to an m x m grid of n x n matrices.
LeveledElement phi_amplified(const PhiMap& phi, const BlockGrid& u);

/// Sum_ij e_ji (x) e_ij as an n x n grid: block (j, i) is e_ij.
BlockGrid canonical_I(int n);

/// The canonical element viewed as a level-n element of op:n.
LeveledElement canonical_I_element(int n);

/// Row-major vec(a).
linalg::ComplexVector vec(const ComplexMatrix& a);

/// Largest coordinate deviation |phi^{psi_n(v)}(a) - psi(phi^v(a))| over the
/// elementary basis of M_n plus `random_inputs` seeded Gaussian matrices.
/// psi is a dim(F) x dim(E) coordinate matrix.
double check_naturality(const ComplexMatrix& psi, const LeveledElement& v,
                        const std::string& target_id, int random_inputs = 4,
                        std::uint64_t seed = 0);

/// The map out of a finite l1 sum of hat spaces whose restriction to summand
/// nu is phis[nu]. All maps must share a target.
ComplexMatrix coproduct_phi(const std::vector<PhiMap>& phis);

}  // namespace matnorm::correspondence
