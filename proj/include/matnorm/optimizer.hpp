#pragma once

// Maximizes ||(phi^v)_m(u)|| over v in the unit ball of M_n(E) for one fixed
// space E. The objective is a norm of a linear function of v, hence convex, so
// ascent moves toward the unit sphere.

#include <cstdint>
#include <random>

#include "matnorm/correspondence.hpp"
#include "matnorm/spaces.hpp"

namespace matnorm {

/// A pair (E, v) with v in the closed unit ball of M_n(E).
struct Couple {
  spaces::MatricialSpace space;
  spaces::LeveledElement v;
};

/// Norm slack allowed when admitting a couple.
inline constexpr double kCoupleNormSlack = 1e-12;

/// Throws InvalidInput unless ||v|| <= 1 + kCoupleNormSlack in `space`.
Couple make_couple(spaces::MatricialSpace space, spaces::LeveledElement v);

/// ||(phi^v)_m(u)|| evaluated in the couple's own space.
double couple_value(const Couple& couple, const linalg::BlockGrid& u);

}  // namespace matnorm

namespace matnorm::optimizer {

struct OptimizerConfig {
  int restarts = 8;
  int iterations = 200;
  double initial_step = 0.5;  // random-search radius
  double decay = 0.98;        // per-iteration radius factor
  std::uint64_t seed = 0;
  double tolerance = 1e-13;   // a restart stops after this little progress
};

/// Throws InvalidInput on restarts < 1, iterations < 1 or tolerance <= 0.
void validate(const OptimizerConfig& config);

struct AscentStep {
  spaces::LeveledElement v;
  double value = 0.0;
  bool accepted = false;
};

/// One ascent step from v. On spaces with duality hooks: take a subgradient y of
/// the norm at (phi^v)_m(u), pull it back through the adjoint of v -> (phi^v)_m(u),
/// and move to the unit-ball maximizer of the resulting linear functional.
/// Other spaces get a random perturbation of radius `step` drawn from `rng`,
/// pushed back to the unit sphere. Steps that would lower the objective are
/// rejected and v is returned unchanged.
AscentStep polar_ascent_step(const spaces::MatricialSpace& space, const spaces::LeveledElement& v,
                             const linalg::BlockGrid& u, std::mt19937_64& rng, double step = 0.5);

struct OptimizeResult {
  Couple couple;
  double value = 0.0;
  int evaluations = 0;
};

OptimizeResult optimize_couple(const spaces::MatricialSpace& space, int n, const linalg::BlockGrid& u,
                               const OptimizerConfig& config);

}  // namespace matnorm::optimizer
