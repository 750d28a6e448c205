#pragma once

#include <limits>
#include <string>
#include <vector>

#include "polystab/polynomial.hpp"
#include "polystab/region.hpp"

namespace polystab {

enum class Outcome { holds, violated, inconclusive };

const char* to_string(Outcome o);

/// Three-valued answer to "does anything lie in D".
///
/// `witness` holds the offending point (or tuple for multivariate checks).
/// Sampling-based verdicts set `evidence_only`: a `holds` there means no
/// witness was found, not that none exists.
struct StabilityVerdict {
  Outcome outcome = Outcome::holds;
  std::vector<cplx> witness;
  double min_sigma = std::numeric_limits<double>::quiet_NaN();
  bool evidence_only = false;
  std::string detail;

  bool holds() const { return outcome == Outcome::holds; }
  bool violated() const { return outcome == Outcome::violated; }
};

/// Classifies candidate points (roots, eigenvalues) against D. Any point
/// inside D, or on a boundary that D contains, is a violation; a boundary
/// point with an ambiguous rule makes the verdict inconclusive.
StabilityVerdict classify_points(const std::vector<cplx>& points, const Region& d,
                                 double tol = kBoundaryTol);

StabilityVerdict is_stable_scalar(const Polynomial& p, const Region& d, double tol = kBoundaryTol);

}  // namespace polystab
