#include "matnorm/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "matnorm/errors.hpp"
#include "matnorm/hat_space.hpp"
#include "matnorm/serialize.hpp"
#include "matnorm/spaces.hpp"
#include "matnorm/verify.hpp"

namespace matnorm::cli {

namespace {

using io::json;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::uint64_t default_seed() {
  if (const char* env = std::getenv("MATNORM_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw InvalidInput("MATNORM_SEED must be a nonnegative integer");
    }
  }
  return 0;
}

std::string format_value(double x) {
  std::ostringstream s;
  s << std::setprecision(12) << x;
  return s.str();
}

struct NormArgs {
  std::string space;
  std::string file;
  std::optional<int> level;
};

int cmd_norm(const NormArgs& a, std::ostream& out) {
  const auto space = spaces::parse_space(a.space);
  const auto u = io::element_from_json(read_json_file(a.file), space);
  if (a.level && *a.level != u.level()) {
    throw InvalidInput("file holds a level-" + std::to_string(u.level()) + " element, --m asked for " +
                       std::to_string(*a.level));
  }
  out << format_value(space.norm(u)) << "\n";
  return kOk;
}

struct HatArgs {
  int n = 0;
  std::string file;
  std::optional<int> level;
  std::optional<int> budget;
  std::optional<int> restarts;
  std::optional<std::string> config;
  std::optional<std::uint64_t> seed;
  bool as_json = false;
};

int cmd_hat_bounds(const HatArgs& a, std::ostream& out) {
  const auto doc = read_json_file(a.file);
  const auto grid = io::block_grid_from_json(doc);
  if (doc["n"].get<int>() != a.n) {
    throw InvalidInput("file has n = " + std::to_string(doc["n"].get<int>()) + ", --n is " +
                       std::to_string(a.n));
  }
  if (a.level && *a.level != static_cast<int>(grid.size())) {
    throw InvalidInput("file has m = " + std::to_string(grid.size()) + ", --m is " + std::to_string(*a.level));
  }

  optimizer::OptimizerConfig config;
  if (a.config) {
    auto cfg = read_json_file(*a.config);
    config = io::config_from_json(cfg.contains("optimizer") ? cfg["optimizer"] : cfg, config);
  }
  if (a.budget) config.iterations = *a.budget;
  if (a.restarts) config.restarts = *a.restarts;
  config.seed = a.seed ? *a.seed : (a.config ? config.seed : default_seed());
  optimizer::validate(config);

  const auto bounds = hat::hat_bounds(a.n, grid, hat::default_catalog(a.n), config);
  if (a.as_json) {
    out << io::to_json(bounds).dump(2) << "\n";
  } else {
    out << "n = " << bounds.n << ", m = " << bounds.m << "\n"
        << "lower = " << format_value(bounds.lower) << "  (couple in " << bounds.certificate.space.id << ")\n"
        << "upper = " << format_value(bounds.upper) << "  (" << hat::to_string(bounds.rule) << ")\n";
  }
  return kOk;
}

struct VerifyArgs {
  std::string suite;
  std::optional<int> n;
  std::optional<double> p;
  std::optional<int> trials;
  std::optional<int> budget;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_file;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  verify::VerifyOptions options;
  options.seed = a.seed ? *a.seed : default_seed();
  if (a.trials) options.trials = *a.trials;
  if (a.budget) options.budget = *a.budget;
  options.n = a.n;
  options.p = a.p;
  if (options.n && *options.n > 4 && *options.n <= 6) {
    err << "warning: n = " << *options.n << " is above the default range; suites may run for minutes\n";
  }

  const auto report = verify::run_suite(a.suite, options);
  const std::string text = verify::to_json(report).dump(2) + "\n";
  if (a.out_file) {
    std::ofstream f(*a.out_file);
    if (!f) throw InvalidInput("cannot write '" + *a.out_file + "'");
    f << text;
  } else {
    out << text;
  }
  for (const auto& c : report.checks) {
    if (!c.passed()) err << "FAIL " << c.id << ": observed " << c.observed << ", expected " << c.expected << "\n";
  }
  return report.all_passed() ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Matricially normed spaces: level norms, hat-space bounds and verification suites"};
  app.require_subcommand(1);

  NormArgs norm_args;
  auto* norm = app.add_subcommand("norm", "Evaluate the level norm of an element of a catalog space");
  norm->add_option("space", norm_args.space, "Space id: cmin, cmax, op:k, l1:[...]")->required();
  norm->add_option("file", norm_args.file, "Element file ({m, coords} or {n, m, blocks})")->required();
  norm->add_option("--m", norm_args.level, "Expected level");

  HatArgs hat_args;
  auto* hatc = app.add_subcommand("hat-bounds", "Certified interval for the norm of u in M_m(hat M_n)");
  hatc->add_option("--n", hat_args.n, "Block size n")->required()->check(CLI::Range(1, 6));
  hatc->add_option("file", hat_args.file, "Matrix file {n, m, blocks}")->required();
  hatc->add_option("--m", hat_args.level, "Expected level");
  hatc->add_option("--budget", hat_args.budget, "Optimizer iterations per restart")->check(CLI::PositiveNumber);
  hatc->add_option("--restarts", hat_args.restarts, "Optimizer restarts")->check(CLI::PositiveNumber);
  hatc->add_option("--config", hat_args.config, "JSON optimizer config (object or {\"optimizer\": {...}})");
  hatc->add_option("--seed", hat_args.seed, "Seed (default: $MATNORM_SEED or 0)");
  hatc->add_flag("--json", hat_args.as_json, "Emit the bounds as JSON");

  VerifyArgs verify_args;
  auto* ver = app.add_subcommand("verify", "Run verification suites and emit a JSON report");
  std::vector<std::string> suites = verify::suite_names();
  suites.push_back("all");
  ver->add_option("--suite", verify_args.suite, "Suite to run")->required()->check(CLI::IsMember(suites));
  ver->add_option("--n", verify_args.n, "Restrict to one n (1..6)")->check(CLI::Range(1, 6));
  ver->add_option("--p", verify_args.p, "Exponent for the convexity suite (> 1)");
  ver->add_option("--trials", verify_args.trials, "Randomized trials")->check(CLI::PositiveNumber);
  ver->add_option("--budget", verify_args.budget, "Optimizer iterations per restart")->check(CLI::PositiveNumber);
  ver->add_option("--seed", verify_args.seed, "Seed (default: $MATNORM_SEED or 0)");
  ver->add_option("--out", verify_args.out_file, "Write the report here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend() - (args.empty() ? 0 : 1));
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*norm) return cmd_norm(norm_args, out);
    if (*hatc) return cmd_hat_bounds(hat_args, out);
    return cmd_verify(verify_args, out, err);
  } catch (const InternalInconsistency& e) {
    err << "internal inconsistency: " << e.what() << "\n" << e.details() << "\n";
    return kInconsistent;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const DegenerateInput& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const json::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
}

}  // namespace matnorm::cli
