#pragma once
// Named verification checks for the whole engine: exact low-dimensional
// Thom data against the closed-form displays, the two-route beta
// comparison, closedness/transgression suites, normalization integrals,
// pfaffian algebra against independent oracles, the relative-product
// identity battery with formal atoms, Clifford calibration, graded
// exponential cross-checks, and the numeric character comparisons.
// Reports are deterministic for a fixed (suite, seed, tol) triple.

#include <cstdint>
#include <string>
#include <vector>

namespace equiforms {

struct CheckResult {
  std::string name;
  int group = 0;          // ordering bucket, see group_title
  std::string params;
  std::string value;      // rendered value or failure note
  std::string reference;  // rendered expected value
  double deviation = 0.0;
  double tolerance = 0.0;  // 0 for exact checks
  bool pass = false;
};

struct VerifyOptions {
  std::string suite = "all";  // "symbolic" | "numeric" | "all"
  uint64_t seed = 20260815ull;
  double tol = 0.0;  // > 0 overrides every numeric tolerance
};

std::vector<CheckResult> run_verification(const VerifyOptions& opt);

// one-line description of a check group (1..11)
std::string group_title(int group);

// byte-stable JSON array of {check, group, params, value, reference,
// deviation, tolerance, pass} records
std::string format_report(const std::vector<CheckResult>& results, int indent = 2);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace equiforms
