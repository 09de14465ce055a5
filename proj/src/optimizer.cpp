#include "matnorm/optimizer.hpp"

#include <cmath>
#include <optional>
#include <string>

#include "matnorm/errors.hpp"

namespace matnorm {

Couple make_couple(spaces::MatricialSpace space, spaces::LeveledElement v) {
  const double nrm = space.norm(v);
  if (nrm > 1.0 + kCoupleNormSlack) {
    throw InvalidInput("couple element has norm " + std::to_string(nrm) + " in " + space.id +
                       ", outside the unit ball");
  }
  return Couple{std::move(space), std::move(v)};
}

double couple_value(const Couple& couple, const linalg::BlockGrid& u) {
  const auto phi = correspondence::phi_of(couple.v);
  return couple.space.norm(correspondence::phi_amplified(phi, u));
}

}  // namespace matnorm

namespace matnorm::optimizer {

using linalg::Complex;
using linalg::ComplexMatrix;
using spaces::LeveledElement;
using spaces::MatricialSpace;

void validate(const OptimizerConfig& config) {
  if (config.restarts < 1) throw InvalidInput("optimizer needs at least one restart");
  if (config.iterations < 1) throw InvalidInput("optimizer needs at least one iteration");
  if (!(config.tolerance > 0.0)) throw InvalidInput("optimizer tolerance must be positive");
}

namespace {

double objective(const MatricialSpace& space, const LeveledElement& v, const linalg::BlockGrid& u) {
  return space.norm(correspondence::phi_amplified(correspondence::phi_of(v), u));
}

// Adjoint of v -> (phi^v)_m(u) under the real Frobenius pairing.
LeveledElement pull_back(const LeveledElement& y, const linalg::BlockGrid& u, int n,
                         const std::string& id) {
  const int m = static_cast<int>(u.size());
  LeveledElement g(id, n, y.dim());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      auto col = g.entry(i, j);
      for (int k = 0; k < m; ++k) {
        for (int l = 0; l < m; ++l) col += std::conj(u[k][l](j, i)) * y.entry(k, l);
      }
    }
  }
  return g;
}

// Radial projection onto the closed unit ball.
LeveledElement into_ball(const MatricialSpace& space, LeveledElement v) {
  const double nrm = space.norm(v);
  if (nrm > 1.0) v.coords() /= nrm;
  // Division can leave the norm a few ulps above one.
  while (space.norm(v) > 1.0 + kCoupleNormSlack) v.coords() *= (1.0 - 1e-15);
  return v;
}

LeveledElement onto_sphere(const MatricialSpace& space, LeveledElement v) {
  const double nrm = space.norm(v);
  if (nrm > 0.0) v.coords() /= nrm;
  return into_ball(space, std::move(v));
}

LeveledElement structured_start(const MatricialSpace& space, int n) {
  LeveledElement v(space.id, n, space.dim);
  for (int i = 0; i < n; ++i) v.entry(i, i)(0) = 1.0;
  return onto_sphere(space, std::move(v));
}

}  // namespace

AscentStep polar_ascent_step(const MatricialSpace& space, const LeveledElement& v,
                             const linalg::BlockGrid& u, std::mt19937_64& rng, double step) {
  const double current = objective(space, v, u);
  LeveledElement candidate = v;

  if (space.dual_friendly()) {
    const auto x = correspondence::phi_amplified(correspondence::phi_of(v), u);
    const auto g = pull_back(space.subgradient(x), u, v.level(), space.id);
    if (g.is_zero()) return {v, current, false};
    candidate = into_ball(space, space.polar(g));
  } else {
    std::normal_distribution<double> normal(0.0, 1.0);
    ComplexMatrix direction(v.coords().rows(), v.coords().cols());
    for (Eigen::Index c = 0; c < direction.cols(); ++c) {
      for (Eigen::Index r = 0; r < direction.rows(); ++r) {
        const double re = normal(rng);
        const double im = normal(rng);
        direction(r, c) = Complex(re, im);
      }
    }
    const double dn = space.norm(LeveledElement(space.id, v.level(), direction));
    if (dn > 0.0) direction *= step / dn;
    candidate.coords() += direction;
    candidate = onto_sphere(space, std::move(candidate));
  }

  const double value = objective(space, candidate, u);
  if (value < current) return {v, current, false};
  return {std::move(candidate), value, true};
}

OptimizeResult optimize_couple(const MatricialSpace& space, int n, const linalg::BlockGrid& u,
                               const OptimizerConfig& config) {
  validate(config);
  if (n < 1) throw InvalidInput("optimize_couple: n must be positive");
  // Validates the grid shape as a side effect.
  (void)linalg::assemble_blocks(u);
  if (static_cast<int>(u[0][0].rows()) != n) throw InvalidInput("optimize_couple: blocks must be n x n");

  bool all_zero = true;
  for (const auto& row : u) {
    for (const auto& b : row) all_zero = all_zero && b.isZero(0.0);
  }
  if (all_zero) return {Couple{space, space.zero(n)}, 0.0, 0};

  std::optional<LeveledElement> best;
  double best_value = -1.0;
  int evaluations = 0;

  for (int r = 0; r < config.restarts; ++r) {
    const std::uint64_t restart_seed = linalg::derive_seed(config.seed, static_cast<std::uint64_t>(r));
    std::mt19937_64 rng(restart_seed);
    LeveledElement v =
        r == 0 ? structured_start(space, n)
               : onto_sphere(space, spaces::sample_element(space, n, spaces::SampleKind::gaussian,
                                                           linalg::derive_seed(restart_seed, 1)));
    double value = objective(space, v, u);
    ++evaluations;
    double step = config.initial_step;
    int stalled = 0;

    for (int it = 0; it < config.iterations; ++it) {
      AscentStep next = polar_ascent_step(space, v, u, rng, step);
      ++evaluations;
      const double gain = next.value - value;
      if (next.accepted) {
        v = std::move(next.v);
        value = next.value;
      }
      step *= config.decay;
      if (space.dual_friendly()) {
        // Polar steps are deterministic; once progress stops it never resumes.
        if (!next.accepted || gain <= config.tolerance) break;
      } else if (gain <= config.tolerance) {
        if (++stalled > 25) break;
      } else {
        stalled = 0;
      }
    }

    if (value > best_value) {
      best_value = value;
      best = std::move(v);
    }
  }

  Couple couple{space, std::move(*best)};
  const double reported = couple_value(couple, u);
  return {std::move(couple), reported, evaluations};
}

}  // namespace matnorm::optimizer
