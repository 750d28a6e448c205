#pragma once

#include <string>
#include <vector>

#include "polystab/numeric.hpp"
#include "polystab/polynomial.hpp"

namespace polystab {

enum class RegionKind {
  disc,          // |z - center| < radius
  halfplane,     // Re(z e^{i(phi - pi/2)}) > offset
  sector,        // lo < Arg z < hi
  ext_disc,      // |z - center| > radius
  point,         // {center}; always closed
  complement,    // C \ parts[0]
  intersection,  // parts[0] & parts[1] & ...
  preimage,      // {z : poly(z) in parts[0]}
  power,         // parts[0]^kappa, a subset of C^kappa
};

enum class Membership { inside, boundary, outside };

/// Whether a point on the boundary belongs to the region.
enum class BoundaryRule { included, excluded, ambiguous };

inline constexpr double kBoundaryTol = 1e-9;

/// Value type describing a subset of the complex plane (or of C^kappa for
/// power regions). `open` applies to the primitive shapes; composite regions
/// derive their boundary behaviour from their parts.
struct Region {
  RegionKind kind = RegionKind::disc;
  bool open = false;
  cplx center = 0.0;
  double radius = 1.0;
  double phi = 0.0;
  double offset = 0.0;
  double lo = 0.0;
  double hi = 0.0;
  int kappa = 1;
  Polynomial poly;
  std::vector<Region> parts;

  static Region disc(cplx center, double radius, bool open = false);
  /// H_phi = {z : Re(z e^{i(phi - pi/2)}) > offset}. H_{pi/2} is the right
  /// half-plane, H_0 the upper one.
  static Region halfplane(double phi, bool open = true, double offset = 0.0);
  static Region sector(double lo, double hi, bool open = true);
  static Region ext_disc(double radius, bool open = true, cplx center = 0.0);
  static Region point(cplx where);
  static Region complement_of(Region inner);
  static Region intersection_of(std::vector<Region> parts);
  static Region preimage_of(Polynomial p, Region inner);
  static Region power_of(Region inner, int kappa);

  bool operator==(const Region& other) const;
};

/// Arg z in (-pi, pi], with Arg 0 = 0.
double principal_arg(cplx z);

/// Distance-to-boundary classification. A point within tol of the boundary
/// is `boundary` regardless of openness; use boundary_rule to decide whether
/// it belongs to the set. The sector apex counts as a boundary point.
Membership region_contains(const Region& d, cplx z, double tol = kBoundaryTol);

/// Componentwise membership for power regions (or for a planar region
/// applied to every coordinate): the worst coordinate wins.
Membership contains_tuple(const Region& d, const std::vector<cplx>& z, double tol = kBoundaryTol);

BoundaryRule boundary_rule(const Region& d, cplx z, double tol = kBoundaryTol);

/// True when z is certainly not a point of D: outside, or on a boundary
/// that D does not contain.
bool excludes(const Region& d, cplx z, double tol = kBoundaryTol);

/// Radius of the disc about the origin used to truncate unbounded regions:
/// 10 + (largest centre/offset/radius appearing in the description).
double truncation_radius(const Region& d);

/// One point with membership `inside`, by rejection from the truncation
/// disc. Throws std::domain_error after 10^6 failed draws.
cplx sample_point(const Region& d, Rng& rng);

/// `count` inside points, deterministic per seed (point i uses stream i).
std::vector<cplx> region_sample(const Region& d, int count, std::uint64_t seed);

/// Signed distance to the boundary, positive inside. Discs and half-planes
/// only; throws otherwise.
double signed_depth(const Region& d, cplx z);

/// Whether C \ D is convex, for the catalogued shapes. Throws
/// std::domain_error for descriptions it cannot decide.
bool complement_is_convex(const Region& d);

/// Disc or half-plane pulled inwards by `margin`.
Region shrink(const Region& d, double margin);

/// Text form, e.g. "disc:c=0+0i,r=1,closed" or "complement:(point:c=0+0i)".
std::string to_string(const Region& d);
Region parse_region(const std::string& spec);

}  // namespace polystab
