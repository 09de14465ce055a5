#include "matnorm/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>

#include "matnorm/correspondence.hpp"
#include "matnorm/errors.hpp"
#include "matnorm/hat_space.hpp"
#include "matnorm/spaces.hpp"

namespace matnorm::verify {

using correspondence::canonical_I;
using linalg::BlockGrid;
using linalg::ComplexMatrix;
using linalg::derive_seed;
using spaces::LeveledElement;
using spaces::MatricialSpace;

bool Check::passed() const {
  switch (kind) {
    case CheckKind::within: return std::abs(observed - expected) <= tolerance;
    case CheckKind::at_most: return observed <= expected + tolerance;
    case CheckKind::at_least: return observed >= expected - tolerance;
    case CheckKind::exceeds: return observed > expected + tolerance;
  }
  return false;
}

bool VerifyReport::all_passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed(); });
}

namespace {

using Suite = std::function<void(const VerifyOptions&, std::vector<Check>&)>;

std::vector<int> n_range(const VerifyOptions& o, int lo = 1, int hi = 4) {
  if (o.n) return {*o.n};
  std::vector<int> out;
  for (int n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

std::string tag(const std::string& base, int n) { return base + "/n=" + std::to_string(n); }

std::vector<MatricialSpace> axiom_catalog() {
  std::vector<MatricialSpace> out{spaces::c_min(), spaces::c_max()};
  for (int k = 1; k <= 5; ++k) out.push_back(spaces::concrete_operator_space(k));
  out.push_back(spaces::l1_sum({spaces::c_min(), spaces::c_max()}));
  out.push_back(spaces::l1_sum({spaces::c_max(), spaces::concrete_operator_space(2)}));
  return out;
}

std::vector<MatricialSpace> couple_spaces(int n) {
  std::vector<MatricialSpace> out{spaces::c_min(), spaces::c_max()};
  for (int k = 1; k <= n + 1; ++k) out.push_back(spaces::concrete_operator_space(k));
  out.push_back(spaces::l1_sum({spaces::c_min(), spaces::c_max()}));
  return out;
}

// A random point on the unit sphere of M_n(E).
LeveledElement unit_sample(const MatricialSpace& space, int n, std::uint64_t seed) {
  return spaces::sample_element(space, n, spaces::SampleKind::gaussian, seed);
}

optimizer::OptimizerConfig suite_budget(const VerifyOptions& o, std::uint64_t seed) {
  optimizer::OptimizerConfig c;
  c.restarts = 2;
  c.iterations = o.budget;
  c.seed = seed;
  return c;
}

double max_abs(const ComplexMatrix& a) { return a.size() ? a.cwiseAbs().maxCoeff() : 0.0; }

// axioms ---------------------------------------------------------------------

void axioms_suite(const VerifyOptions& o, std::vector<Check>& out) {
  std::uint64_t index = 0;
  for (const auto& space : axiom_catalog()) {
    const auto r = spaces::check_axioms(space, o.trials, derive_seed(o.seed, 100 + index++));
    out.push_back({"axioms/" + space.id + "/padding", "norm of u + 0 equals norm of u", "axiom-padding",
                   CheckKind::at_most, r.axiom1_max_violation, 0.0, 1e-9});
    out.push_back({"axioms/" + space.id + "/bimodule", "||S u T|| <= ||S|| ||u|| ||T||",
                   "axiom-bimodule", CheckKind::at_most, r.axiom2_max_violation, 0.0, 1e-9});
  }
  const auto faulty = spaces::with_level_offset(spaces::c_max(), 2, 0.1);
  const auto r = spaces::check_axioms(faulty, std::min(o.trials, 50), derive_seed(o.seed, 199));
  out.push_back({"axioms/planted-fault", "checker detects a space shifted by 0.1 at level 2",
                 "axiom-padding", CheckKind::at_least, r.axiom1_max_violation, 0.05, 0.0});
}

// correspondence -------------------------------------------------------------

void correspondence_suite(const VerifyOptions& o, std::vector<Check>& out) {
  const int max_n = o.n ? *o.n : 6;
  const int min_n = o.n ? *o.n : 1;
  for (int n = min_n; n <= max_n; ++n) {
    const auto phi = correspondence::phi_of(correspondence::canonical_I_element(n));
    double worst = 0.0;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const ComplexMatrix e = linalg::elementary(n, i, j);
        const auto image = correspondence::phi_apply(phi, e);
        worst = std::max(worst, max_abs(spaces::assembled_operator(image) - e));
      }
    }
    out.push_back({tag("correspondence/canonical-map-is-identity", n),
                   "phi of the canonical element fixes every e_ij", "canonical-map-identity",
                   CheckKind::within, worst, 0.0, 0.0});
  }

  const auto ns = n_range(o);
  std::uint64_t index = 0;
  for (const auto& space : axiom_catalog()) {
    double reconstruct = 0.0;
    double roundtrip = 0.0;
    for (int t = 0; t < o.trials; ++t) {
      const int n = ns[t % ns.size()];
      const auto v = spaces::sample_element(space, n, spaces::SampleKind::gaussian,
                                            derive_seed(o.seed, (200 + index) * 100000 + t));
      const auto phi = correspondence::phi_of(v);
      const auto back = correspondence::phi_amplified(phi, canonical_I(n));
      reconstruct = std::max(reconstruct, max_abs(back.coords() - v.coords()));
      roundtrip = std::max(roundtrip, max_abs(correspondence::element_of(phi).coords() - v.coords()));
    }
    ++index;
    out.push_back({"correspondence/amplified-canonical/" + space.id,
                   "(phi^v)_n applied to the canonical element returns v", "universal-element",
                   CheckKind::within, reconstruct, 0.0, 0.0});
    out.push_back({"correspondence/bijective/" + space.id, "element_of(phi_of(v)) = v", "bijection",
                   CheckKind::within, roundtrip, 0.0, 0.0});
  }

  struct Pair {
    MatricialSpace from;
    MatricialSpace to;
  };
  const std::vector<Pair> pairs{
      {spaces::c_max(), spaces::l1_sum({spaces::c_max(), spaces::c_max()})},
      {spaces::concrete_operator_space(2), spaces::c_min()},
      {spaces::l1_sum({spaces::c_min(), spaces::c_max()}), spaces::concrete_operator_space(2)},
      {spaces::concrete_operator_space(2), spaces::concrete_operator_space(3)},
  };
  for (std::size_t pi = 0; pi < pairs.size(); ++pi) {
    const auto& [from, to] = pairs[pi];
    double worst = 0.0;
    for (int t = 0; t < 100; ++t) {
      const std::uint64_t base = derive_seed(o.seed, (300 + pi) * 100000 + t);
      const int n = ns[t % ns.size()];
      const ComplexMatrix psi = linalg::random_gaussian(to.dim, from.dim, derive_seed(base, 0));
      const auto v = unit_sample(from, n, derive_seed(base, 1));
      worst = std::max(worst, correspondence::check_naturality(psi, v, to.id, 4, derive_seed(base, 2)));
    }
    out.push_back({"correspondence/naturality/" + from.id + "->" + to.id,
                   "phi^{psi_n(v)} = psi o phi^v", "naturality", CheckKind::at_most, worst, 0.0, 1e-12});
  }
}

// level-1 norm is the trace norm ----------------------------------------------

void thm6_suite(const VerifyOptions& o, std::vector<Check>& out) {
  for (int n : n_range(o)) {
    const auto catalog = hat::default_catalog(n);
    const auto samplers = couple_spaces(n);
    double certificate_gap = 0.0;
    double excess = -1e300;
    double interval_gap = 0.0;
    double lower_gap = 0.0;
    const int trials = std::max(1, o.trials / static_cast<int>(n_range(o).size()));
    for (int t = 0; t < trials; ++t) {
      const std::uint64_t base = derive_seed(o.seed, 400000 + n * 10000 + t);
      const ComplexMatrix a = linalg::random_gaussian(n, n, derive_seed(base, 0));
      const double tn = linalg::trace_norm(a);
      const BlockGrid u{{a}};

      const Couple cert = make_couple(spaces::c_min(),
                                      spaces::from_scalar_matrix("cmin", linalg::dual_witness(a)));
      certificate_gap = std::max(certificate_gap, std::abs(couple_value(cert, u) - tn));

      const auto bounds = hat::hat_bounds(n, u, catalog, suite_budget(o, derive_seed(base, 1)));
      interval_gap = std::max(interval_gap, bounds.upper - bounds.lower);
      lower_gap = std::max(lower_gap, std::abs(bounds.lower - tn));
      excess = std::max(excess, bounds.lower - tn);
      for (std::size_t s = 0; s < samplers.size(); ++s) {
        const Couple c{samplers[s], unit_sample(samplers[s], n, derive_seed(base, 10 + s))};
        excess = std::max(excess, couple_value(c, u) - tn);
      }
    }
    out.push_back({tag("thm6/dual-witness-attains", n), "(cmin, dual witness) reaches ||a||_t",
                   "level1-trace-norm", CheckKind::at_most, certificate_gap, 0.0, 1e-9});
    out.push_back({tag("thm6/no-couple-exceeds", n), "no couple exceeds ||a||_t",
                   "level1-trace-norm", CheckKind::at_most, excess, 0.0, 1e-9});
    out.push_back({tag("thm6/degenerate-interval", n), "hat_bounds at m = 1 has zero width",
                   "level1-trace-norm", CheckKind::at_most, interval_gap, 0.0, 1e-9});
    out.push_back({tag("thm6/interval-at-trace-norm", n), "hat_bounds at m = 1 sits at ||a||_t",
                   "level1-trace-norm", CheckKind::at_most, lower_gap, 0.0, 1e-9});
  }
}

// canonical element has norm one ------------------------------------------------

void prop7_suite(const VerifyOptions& o, std::vector<Check>& out) {
  for (int n : n_range(o, 2, 4)) {
    const BlockGrid u = canonical_I(n);
    const auto lower = hat::hat_lower_bound(n, u, hat::default_catalog(n),
                                            suite_budget(o, derive_seed(o.seed, 500 + n)));
    out.push_back({tag("prop7/catalog-lower-bound", n), "catalog lower bound for the canonical element",
                   "canonical-element-unit-norm", CheckKind::within, lower.value, 1.0, 1e-9});

    const auto samplers = couple_spaces(n);
    const int samples = std::max(10000, 10 * o.trials);
    double worst = 0.0;
    for (int t = 0; t < samples; ++t) {
      const auto& space = samplers[t % samplers.size()];
      const auto kind = static_cast<spaces::SampleKind>(t % 4);
      const Couple c{space, spaces::sample_element(space, n, kind, derive_seed(o.seed, 510000 + n * 100000 + t))};
      worst = std::max(worst, couple_value(c, u));
    }
    for (const auto& space : samplers) {
      const auto r = optimizer::optimize_couple(space, n, u, suite_budget(o, derive_seed(o.seed, 520 + n)));
      worst = std::max(worst, r.value);
    }
    out.push_back({tag("prop7/no-couple-exceeds-one", n),
                   "sampled and optimized couples stay at or below 1", "canonical-element-unit-norm",
                   CheckKind::at_most, worst, 1.0, 1e-9});
  }
}

// block-diagonal lower bound ----------------------------------------------------

void prop13_suite(const VerifyOptions& o, std::vector<Check>& out) {
  for (int n : n_range(o)) {
    const auto catalog = hat::default_catalog(n);
    double closed_form_gap = 0.0;
    double excess = -1e300;
    for (int t = 0; t < 100; ++t) {
      const std::uint64_t base = derive_seed(o.seed, 600000 + n * 1000 + t);
      const int k = 1 + t % 3;
      std::vector<ComplexMatrix> blocks;
      double closed_form = 0.0;
      for (int b = 0; b < k; ++b) {
        const ComplexMatrix g = linalg::random_gaussian(n, n, derive_seed(base, b));
        blocks.push_back(g * g.adjoint());
        closed_form += linalg::trace_norm(blocks.back());
      }
      closed_form /= n;
      const double value = hat::block_diag_lower(n, blocks);
      closed_form_gap = std::max(closed_form_gap, std::abs(value - closed_form));
      const auto full = hat::hat_lower_bound(n, hat::block_diagonal(blocks), catalog,
                                             suite_budget(o, derive_seed(base, 99)));
      excess = std::max(excess, value - full.value);
    }
    out.push_back({tag("prop13/closed-form", n), "(cmax, I/n) value equals (1/n) sum ||a_k||_t",
                   "block-diagonal-lower-bound", CheckKind::at_most, closed_form_gap, 0.0, 1e-9});
    out.push_back({tag("prop13/below-catalog", n), "(cmax, I/n) value <= full catalog lower bound",
                   "block-diagonal-lower-bound", CheckKind::at_most, excess, 0.0, 1e-9});
  }
}

// trace functional on the canonical element ------------------------------------

void prop14_suite(const VerifyOptions& o, std::vector<Check>& out) {
  for (int n : n_range(o)) {
    const auto r = hat::l1_functional_check(n);
    out.push_back({tag("prop14/image-is-identity", n), "f_n(I) equals the identity matrix",
                   "not-l1-space", CheckKind::within,
                   max_abs(r.image - ComplexMatrix::Identity(n, n)), 0.0, 0.0});
    out.push_back({tag("prop14/trace-norm", n), "||f_n(I)||_t = n", "not-l1-space", CheckKind::within,
                   r.trace_norm_of_image, static_cast<double>(n), 0.0});
  }
}

// I + I witness against p-convexity -----------------------------------------------

void convexity_suite(const VerifyOptions& o, std::vector<Check>& out) {
  const std::vector<double> ps = o.p ? std::vector<double>{*o.p} : std::vector<double>{1.01, 1.5, 2.0, 10.0};
  for (int n : n_range(o)) {
    for (double p : ps) {
      const auto r = hat::convexity_violation(n, p);
      char ptag[32];
      std::snprintf(ptag, sizeof ptag, "%g", p);
      const std::string id = tag("convexity", n) + "/p=" + ptag;
      out.push_back({id + "/lower", "lower bound on ||I + I|| is at least 2", "not-p-convex",
                     CheckKind::at_least, r.lower_on_sum, 2.0, 1e-9});
      out.push_back({id + "/violated", "lower bound exceeds 2^(1/p)", "not-p-convex", CheckKind::exceeds,
                     r.lower_on_sum, r.bound_if_convex, 1e-6});
    }
  }
}

// finite l1 sums as coproducts ------------------------------------------------

void coproduct_suite(const VerifyOptions& o, std::vector<Check>& out) {
  const std::vector<MatricialSpace> parts{spaces::c_min(), spaces::c_max(), spaces::concrete_operator_space(2)};
  const auto sum = spaces::l1_sum(parts);
  const auto target = spaces::concrete_operator_space(2);

  double additivity = 0.0;
  double restriction = 0.0;
  double contractive = -1e300;
  for (int t = 0; t < 100; ++t) {
    const std::uint64_t base = derive_seed(o.seed, 700000 + t);
    const int m = 1 + t % 4;
    const auto u = spaces::sample_element(sum, m, static_cast<spaces::SampleKind>(t % 4), derive_seed(base, 0));
    double parts_total = 0.0;
    for (std::size_t i = 0; i < parts.size(); ++i) parts_total += parts[i].norm(spaces::l1_component(parts, u, i));
    additivity = std::max(additivity, std::abs(sum.norm(u) - parts_total));

    std::vector<ComplexMatrix> maps;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      maps.push_back(linalg::random_gaussian(target.dim, parts[i].dim, derive_seed(base, 10 + i)));
    }
    const ComplexMatrix psi = spaces::coproduct_morphism(maps);
    for (std::size_t i = 0; i < parts.size(); ++i) {
      restriction = std::max(restriction, max_abs(psi * spaces::coproduct_injection(parts, i) - maps[i]));
    }

    // Completely contractive summand maps: scalars times a contraction for the
    // one-dimensional parts, two-sided multiplication by contractions on op:2.
    std::vector<ComplexMatrix> cc;
    for (std::size_t i = 0; i < 2; ++i) {
      const ComplexMatrix b = linalg::random_contraction(2, derive_seed(base, 20 + i));
      cc.push_back(correspondence::vec(b));
    }
    const ComplexMatrix left = linalg::random_contraction(2, derive_seed(base, 30));
    const ComplexMatrix right = linalg::random_contraction(2, derive_seed(base, 31));
    ComplexMatrix conj_map(4, 4);
    for (int c = 0; c < 4; ++c) {
      conj_map.col(c) = correspondence::vec(left * linalg::elementary(2, c / 2, c % 2) * right);
    }
    cc.push_back(conj_map);
    const auto image = spaces::amplify(spaces::coproduct_morphism(cc), u, target.id);
    contractive = std::max(contractive, target.norm(image) - sum.norm(u));
  }
  out.push_back({"coproduct/additivity", "l1 sum norm equals the sum of component norms",
                 "l1-sum-coproduct", CheckKind::within, additivity, 0.0, 0.0});
  out.push_back({"coproduct/restrictions", "psi o i_nu = psi_nu", "l1-sum-coproduct", CheckKind::within,
                 restriction, 0.0, 0.0});
  out.push_back({"coproduct/completely-contractive", "coproduct of contractive maps is contractive",
                 "l1-sum-coproduct", CheckKind::at_most, contractive, 0.0, 1e-9});

  // Truncated free space on one point: sum of hat M_1..hat M_3 into op:2.
  double truncated = 0.0;
  for (int t = 0; t < 100; ++t) {
    std::vector<correspondence::PhiMap> phis;
    std::vector<int> dims;
    for (int n = 1; n <= 3; ++n) {
      const auto w = unit_sample(target, n, derive_seed(o.seed, 710000 + t * 10 + n));
      phis.push_back(correspondence::phi_of(w));
      dims.push_back(n * n);
    }
    const ComplexMatrix psi = correspondence::coproduct_phi(phis);
    for (std::size_t i = 0; i < phis.size(); ++i) {
      truncated = std::max(truncated, max_abs(psi * spaces::coproduct_injection(dims, i) - phis[i].matrix));
    }
  }
  out.push_back({"coproduct/free-truncation", "coproduct of phi^{w_n} restricts to each phi^{w_n}",
                 "free-one-point-space", CheckKind::within, truncated, 0.0, 0.0});
}

const std::map<std::string, Suite>& registry() {
  static const std::map<std::string, Suite> suites{
      {"axioms", axioms_suite},   {"correspondence", correspondence_suite},
      {"thm6", thm6_suite},       {"prop7", prop7_suite},
      {"prop13", prop13_suite},   {"prop14", prop14_suite},
      {"convexity", convexity_suite}, {"coproduct", coproduct_suite},
  };
  return suites;
}

std::string kind_name(CheckKind k) {
  switch (k) {
    case CheckKind::within: return "within";
    case CheckKind::at_most: return "at_most";
    case CheckKind::at_least: return "at_least";
    case CheckKind::exceeds: return "exceeds";
  }
  return "unknown";
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"axioms", "correspondence", "thm6",      "prop7",
                                              "prop13", "prop14",         "convexity", "coproduct"};
  return names;
}

VerifyReport run_suite(const std::string& suite, const VerifyOptions& options) {
  if (options.trials < 1) throw InvalidInput("trials must be positive");
  if (options.budget < 1) throw InvalidInput("budget must be positive");
  if (options.n && (*options.n < 1 || *options.n > 6)) throw InvalidInput("n must be in 1..6");
  if (options.p && !(*options.p > 1.0)) throw InvalidInput("p must exceed 1");

  std::vector<std::string> selected;
  if (suite == "all") {
    selected = suite_names();
  } else if (registry().count(suite)) {
    selected = {suite};
  } else {
    throw InvalidInput("unknown suite '" + suite + "'");
  }

  const auto start = std::chrono::steady_clock::now();
  VerifyReport report{suite, {}, options.seed, 0};
  for (const auto& name : selected) registry().at(name)(options, report.checks);
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  return report;
}

nlohmann::json to_json(const VerifyReport& report) {
  nlohmann::json checks = nlohmann::json::array();
  for (const auto& c : report.checks) {
    checks.push_back({{"id", c.id},
                      {"description", c.description},
                      {"paper_ref", c.claim},
                      {"kind", kind_name(c.kind)},
                      {"status", c.passed() ? "pass" : "fail"},
                      {"observed", c.observed},
                      {"expected", c.expected},
                      {"tolerance", c.tolerance}});
  }
  return {{"suite", report.suite},
          {"checks", std::move(checks)},
          {"seed", report.seed},
          {"elapsed_ms", report.elapsed_ms}};
}

}  // namespace matnorm::verify
