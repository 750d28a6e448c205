#include "polystab/stability.hpp"

namespace polystab {

const char* to_string(Outcome o) {
  switch (o) {
    case Outcome::holds:
      return "holds";
    case Outcome::violated:
      return "violated";
    case Outcome::inconclusive:
      return "inconclusive";
  }
  return "?";
}

StabilityVerdict classify_points(const std::vector<cplx>& points, const Region& d, double tol) {
  StabilityVerdict v;
  bool ambiguous = false;
  cplx ambiguous_point = 0.0;
  for (const cplx& z : points) {
    const Membership m = region_contains(d, z, tol);
    if (m == Membership::outside) continue;
    if (m == Membership::inside) {
      v.outcome = Outcome::violated;
      v.witness = {z};
      v.detail = "point inside region";
      return v;
    }
    const BoundaryRule rule = boundary_rule(d, z, tol);
    if (rule == BoundaryRule::included) {
      v.outcome = Outcome::violated;
      v.witness = {z};
      v.detail = "point on the (included) boundary";
      return v;
    }
    if (rule == BoundaryRule::ambiguous && !ambiguous) {
      ambiguous = true;
      ambiguous_point = z;
    }
  }
  if (ambiguous) {
    v.outcome = Outcome::inconclusive;
    v.witness = {ambiguous_point};
    v.detail = "point within tolerance of a boundary with mixed openness";
  }
  return v;
}

StabilityVerdict is_stable_scalar(const Polynomial& p, const Region& d, double tol) {
  if (p.is_zero()) throw std::invalid_argument("is_stable_scalar: zero polynomial");
  return classify_points(roots(p).roots, d, tol);
}

}  // namespace polystab
