#pragma once

#include <functional>
#include <string>
#include <vector>

#include "polystab/io.hpp"

namespace polystab {

/// One measured quantity compared against a pinned limit.
struct Measure {
  std::string name;
  double value = 0.0;
  double limit = 0.0;
  std::string op;  // "<=", ">=", "==", or "" for a plain pass/fail check
  bool ok = false;
  std::string detail;
};

struct SuiteResult {
  std::string name;
  std::string title;
  bool passed = true;
  std::vector<Measure> measures;
  /// Informational findings that do not affect `passed`.
  std::vector<std::string> notes;
  double seconds = 0.0;
  double budget_seconds = 0.0;
};

struct SuiteOptions {
  std::uint64_t seed = 0;
  int threads = 1;
};

struct SuiteInfo {
  std::string name;
  std::string title;
  double budget_seconds;
  std::function<SuiteResult(const SuiteOptions&)> run;
};

const std::vector<SuiteInfo>& suite_catalog();

/// Throws std::invalid_argument for an unknown name.
SuiteResult run_suite(const std::string& name, const SuiteOptions& opt);

/// Report body without timings, so two runs can be compared byte for byte.
Json suite_to_json(const SuiteResult& r, bool with_timing = true);
std::string format_suite(const SuiteResult& r, bool with_timing = true);

/// Fixture polynomials shared by the suites, the CLI and the tests.
MatrixPolynomial fixture_stable_not_hyperstable();  // [[1, l], [l, l^2 + 1]]
MatrixPolynomial fixture_perturbed_derivative(double eps);  // [[l^4 - 3l^2, l^3 - 4l], [l, 1 + eps l^4]]
MatrixPolynomial fixture_gauss_lucas();  // [[l^4 + 1, l^3], [l^2, l + 2]]

/// P(lambda + beta).
MatrixPolynomial shift(const MatrixPolynomial& p, cplx beta);

/// Euclidean distance from z to the convex hull of `points` (0 inside).
double convex_hull_distance(const std::vector<cplx>& points, cplx z);

}  // namespace polystab
