#pragma once

// Concrete matricially normed spaces. An element of M_m(E) is stored as a
// dim(E) x m^2 coordinate matrix: column k*m + l holds the coordinates of the
// (k, l) entry in E's fixed basis.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "matnorm/linalg.hpp"

namespace matnorm::spaces {

using linalg::Complex;
using linalg::ComplexMatrix;

class LeveledElement {
 public:
  LeveledElement(std::string space_id, int level, int dim);
  LeveledElement(std::string space_id, int level, ComplexMatrix coords);

  const std::string& space_id() const { return space_id_; }
  int level() const { return level_; }
  int dim() const { return static_cast<int>(coords_.rows()); }

  const ComplexMatrix& coords() const { return coords_; }
  ComplexMatrix& coords() { return coords_; }

  /// Coordinate vector of the (k, l) entry.
  auto entry(int k, int l) { return coords_.col(k * level_ + l); }
  auto entry(int k, int l) const { return coords_.col(k * level_ + l); }

  /// The m x m scalar matrix formed by coordinate c of every entry.
  ComplexMatrix slice(int c) const;
  void set_slice(int c, const ComplexMatrix& s);

  bool is_zero() const { return coords_.isZero(0.0); }

 private:
  std::string space_id_;
  int level_;
  ComplexMatrix coords_;
};

LeveledElement operator+(const LeveledElement& a, const LeveledElement& b);
LeveledElement operator*(Complex s, const LeveledElement& a);

/// Real part of the Frobenius pairing sum conj(y) * x over all coordinates.
double real_pairing(const LeveledElement& y, const LeveledElement& x);

struct MatricialSpace {
  using Evaluator = std::function<double(const LeveledElement&)>;
  using ElementMap = std::function<LeveledElement(const LeveledElement&)>;

  std::string id;
  int dim = 0;
  std::string description;
  Evaluator evaluator;

  // Duality hooks, present on spaces whose level norms have closed-form
  // subgradients. subgradient(x) returns y of dual norm <= 1 with
  // real_pairing(y, x) = ||x||. polar(g) returns argmax of real_pairing(g, v)
  // over the closed unit ball.
  ElementMap subgradient;
  ElementMap polar;

  double norm(const LeveledElement& u) const;
  bool dual_friendly() const { return static_cast<bool>(subgradient) && static_cast<bool>(polar); }

  LeveledElement zero(int level) const { return LeveledElement(id, level, dim); }
};

MatricialSpace c_min();
MatricialSpace c_max();
MatricialSpace concrete_operator_space(int k);
MatricialSpace l1_sum(const std::vector<MatricialSpace>& parts);

/// Copy of `space` whose norm at `level` is shifted by `offset`. Breaks the
/// axioms on purpose; used to confirm the checkers catch faults.
MatricialSpace with_level_offset(MatricialSpace space, int level, double offset);

/// Parses "cmin", "cmax", "op:k", "l1:[id,id,...]" (nesting allowed).
MatricialSpace parse_space(const std::string& id);

/// Level-m element of a dim-1 space (cmin, cmax) from an m x m scalar matrix.
LeveledElement from_scalar_matrix(const std::string& space_id, const ComplexMatrix& a);
/// Level-m element of op:k from an m x m grid of k x k matrices.
LeveledElement from_operator_blocks(const std::string& space_id, const linalg::BlockGrid& blocks);
/// Inverse of from_operator_blocks: the assembled mk x mk matrix.
ComplexMatrix assembled_operator(const LeveledElement& u);
/// Level-1 element of op:k holding the k x k matrix x.
LeveledElement operator_point(const std::string& space_id, const ComplexMatrix& x);

/// (S u T)_kl = sum_pq S_kp u_pq T_ql.
LeveledElement scalar_action(const ComplexMatrix& s, const LeveledElement& u, const ComplexMatrix& t);

/// u + 0 at level m + extra.
LeveledElement pad(const LeveledElement& u, int extra);

/// Block-diagonal u_1 + ... + u_k over the same space.
LeveledElement direct_sum(const std::vector<LeveledElement>& parts);

/// Amplification of a linear map given as a dim(F) x dim(E) coordinate matrix.
LeveledElement amplify(const ComplexMatrix& psi, const LeveledElement& u, const std::string& target_id);

/// Coordinates of component `index` of an element of an l1 sum.
LeveledElement l1_component(const std::vector<MatricialSpace>& parts, const LeveledElement& u,
                            std::size_t index);

/// Coproduct injection i_index : parts[index] -> l1_sum(parts).
ComplexMatrix coproduct_injection(const std::vector<MatricialSpace>& parts, std::size_t index);
ComplexMatrix coproduct_injection(const std::vector<int>& dims, std::size_t index);

/// The map out of the l1 sum that restricts to maps[nu] on summand nu.
ComplexMatrix coproduct_morphism(const std::vector<ComplexMatrix>& maps);

// Sampling -------------------------------------------------------------------

enum class SampleKind { gaussian, elementary, diagonal, unitary_conjugated };

/// Random element at `level`, normalized to unit norm unless it is zero.
LeveledElement sample_element(const MatricialSpace& space, int level, SampleKind kind,
                              std::uint64_t seed);

// Checkers -------------------------------------------------------------------

struct AxiomSample {
  LeveledElement u;
  int extra = 0;  // axiom 1: padding size
  std::optional<ComplexMatrix> s;  // axiom 2: left scalar
  std::optional<ComplexMatrix> t;  // axiom 2: right scalar
};

struct AxiomReport {
  int trials = 0;
  double axiom1_max_violation = 0.0;
  double axiom2_max_violation = 0.0;
  std::optional<AxiomSample> worst_axiom1;
  std::optional<AxiomSample> worst_axiom2;
};

struct AxiomCheckOptions {
  int max_level = 4;
  int max_extra = 2;
};

/// Samples u, S, T at every level m <= max_level; records the largest
/// |‖u + 0‖ - ‖u‖| and the largest positive part of ‖SuT‖ - ‖S‖‖u‖‖T‖
/// (checked separately for S u and u T).
AxiomReport check_axioms(const MatricialSpace& space, int trials, std::uint64_t seed,
                         AxiomCheckOptions options = {});

struct ConvexityReport {
  double max_violation = 0.0;
  std::vector<LeveledElement> witness;
};

/// Largest positive part of ‖u_1 + ... + u_k‖ - (sum ‖u_i‖^p)^(1/p) over
/// sampled tuples with k in {2, 3}. One-sided: zero does not prove convexity.
ConvexityReport check_p_convexity(const MatricialSpace& space, double p, int trials,
                                  std::uint64_t seed);

}  // namespace matnorm::spaces
