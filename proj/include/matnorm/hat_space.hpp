#pragma once

// Certified bounds for the norm on M_m(hat M_n): the supremum of
// ||(phi^v)_m(u)|| over all couples (E, v). Any evaluated couple gives a lower
// bound; the upper bounds follow from the axioms and from the level-1 norm
// being the trace norm.

#include <functional>
#include <string>
#include <vector>

#include "matnorm/linalg.hpp"
#include "matnorm/optimizer.hpp"
#include "matnorm/spaces.hpp"

namespace matnorm::hat {

using linalg::BlockGrid;
using linalg::ComplexMatrix;
using optimizer::OptimizerConfig;

/// Absolute slack between certified lower and upper bounds.
inline constexpr double kBoundSlack = 1e-9;

/// Produces candidate couples for a given u. Entries run in catalog order.
struct CatalogEntry {
  std::string name;
  std::function<std::vector<Couple>(int n, const BlockGrid& u, const OptimizerConfig& budget)> generate;
};

using Catalog = std::vector<CatalogEntry>;

/// Always yields `couple`.
CatalogEntry fixed_entry(Couple couple);
/// Runs the optimizer on `space` and yields its best couple.
CatalogEntry optimized_entry(spaces::MatricialSpace space);
/// At level 1: (cmin, dual witness of the single block). Yields nothing at m > 1
/// or for a zero block.
CatalogEntry trace_dual_entry();
/// (cmax, identity / n).
CatalogEntry scaled_identity_entry();
/// (op:n, canonical element): (phi^v)_m is the identity, so the value is the
/// operator norm of the assembled u.
CatalogEntry canonical_entry();

/// Hand-picked certificates followed by optimized searches over cmax, cmin,
/// op:k for k = 1..n+1 and the l1 sums [cmin,cmax] and [cmax,op:n].
Catalog default_catalog(int n);

/// The m x m grid for u at level m, validated as n x n blocks.
int grid_level(int n, const BlockGrid& u);

struct LowerBound {
  double value = 0.0;
  Couple certificate;
  int couples_evaluated = 0;
};

/// Max over catalog couples of ||(phi^v)_m(u)||; first-found wins ties.
LowerBound hat_lower_bound(int n, const BlockGrid& u, const Catalog& catalog,
                           const OptimizerConfig& budget = {});

enum class UpperRule { prop1_entrywise, level1_trace, entry_trace_sum, block_min };

std::string to_string(UpperRule rule);

struct UpperBound {
  double value = 0.0;
  UpperRule rule = UpperRule::prop1_entrywise;
};

/// Sum of |entries| of the assembled mn x mn matrix.
double entrywise_bound(const BlockGrid& u);

/// Sum over blocks of their trace norms. Each E_kl (x) a has norm ||a||_t: pad
/// to a level-1 element, move it into place with permutations, then use the
/// level-1 norm. The triangle inequality sums the blocks.
double entry_trace_bound(const BlockGrid& u);

/// Decomposes u = sum_r s_r P_r (x) A_r via the SVD of the realigned
/// m^2 x n^2 coefficient matrix (unit singular vectors reshaped to P_r, A_r).
/// Each rank-one P = p q* gives P (x) A = S (A + 0) T with ||S|| = |p|,
/// ||T|| = |q|, so ||P (x) A|| <= ||P||_t ||A||_t. Exact when n = 1.
double block_decomposition_bound(const BlockGrid& u);

/// Minimum of the applicable rules. Rule order on ties: level1_trace,
/// entry_trace_sum, prop1_entrywise, block_min.
UpperBound hat_upper_bound(int n, const BlockGrid& u);

struct NormBounds {
  int n = 0;
  int m = 0;
  double lower = 0.0;
  double upper = 0.0;
  Couple certificate;
  UpperRule rule = UpperRule::prop1_entrywise;
};

/// Throws InternalInconsistency if lower > upper + kBoundSlack.
NormBounds hat_bounds(int n, const BlockGrid& u, const Catalog& catalog,
                      const OptimizerConfig& budget = {});

/// Block-diagonal grid a_1 + ... + a_k of n x n blocks.
BlockGrid block_diagonal(const std::vector<ComplexMatrix>& blocks);

/// Value of the couple (cmax, identity / n) on a_1 + ... + a_k.
double block_diag_lower(int n, const std::vector<ComplexMatrix>& blocks);

struct ConvexityViolation {
  double lower_on_sum = 0.0;
  double bound_if_convex = 0.0;
  bool violated = false;
};

/// Evaluates I + I (canonical element twice along the diagonal) on the couple
/// (cmax, identity / n), whose value is 2. p-convexity together with ||I|| = 1
/// would cap the norm at 2^(1/p).
ConvexityViolation convexity_violation(int n, double p);

struct FunctionalImage {
  ComplexMatrix image;
  double trace_norm_of_image = 0.0;
};

/// The trace functional applied entrywise to the canonical element.
FunctionalImage l1_functional_check(int n);

}  // namespace matnorm::hat
