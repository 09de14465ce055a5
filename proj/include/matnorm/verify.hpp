#pragma once

// Named verification suites. Each suite is a deterministic function of its
// options and returns a list of pass/fail checks.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace matnorm::verify {

enum class CheckKind {
  within,      // |observed - expected| <= tolerance
  at_most,     // observed <= expected + tolerance
  at_least,    // observed >= expected - tolerance
  exceeds,     // observed > expected + tolerance
};

struct Check {
  std::string id;
  std::string description;
  std::string claim;  // short tag for the property being checked
  CheckKind kind = CheckKind::within;
  double observed = 0.0;
  double expected = 0.0;
  double tolerance = 0.0;

  bool passed() const;
};

struct VerifyOptions {
  std::uint64_t seed = 0;
  int trials = 1000;
  std::optional<int> n;     // restrict to a single n; default range is 1..4
  std::optional<double> p;  // restrict the convexity suite to one exponent
  int budget = 40;          // optimizer iterations per restart
};

struct VerifyReport {
  std::string suite;
  std::vector<Check> checks;
  std::uint64_t seed = 0;
  long long elapsed_ms = 0;

  bool all_passed() const;
};

const std::vector<std::string>& suite_names();

/// Throws InvalidInput for an unknown suite. "all" runs every suite in
/// suite_names() order.
VerifyReport run_suite(const std::string& suite, const VerifyOptions& options);

nlohmann::json to_json(const VerifyReport& report);

}  // namespace matnorm::verify
