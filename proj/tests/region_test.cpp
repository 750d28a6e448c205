#include "polystab/region.hpp"
#include "support.hpp"

using namespace polystab;
using namespace polystab::test;

TEST_CASE("region_contains examples") {
  CHECK(region_contains(Region::disc(0, 1, false), 1, 1e-9) == Membership::boundary);
  CHECK(region_contains(Region::halfplane(kPi / 2, true), -1) == Membership::outside);
  CHECK(region_contains(Region::sector(0, kPi / 3), std::polar(1.0, kPi / 6)) == Membership::inside);
  CHECK_THROWS_AS(region_contains(Region::disc(0, 1), 0, -1.0), std::invalid_argument);
}

TEST_CASE("half-plane orientation") {
  // H_{pi/2} is the right half-plane and H_0 the upper one
  CHECK(region_contains(Region::halfplane(kPi / 2), 1) == Membership::inside);
  CHECK(region_contains(Region::halfplane(kPi / 2), I1) == Membership::boundary);
  CHECK(region_contains(Region::halfplane(0), I1) == Membership::inside);
  CHECK(region_contains(Region::halfplane(0), -I1) == Membership::outside);
}

TEST_CASE("boundary rules follow openness") {
  CHECK(boundary_rule(Region::disc(0, 1, false), 1) == BoundaryRule::included);
  CHECK(boundary_rule(Region::disc(0, 1, true), 1) == BoundaryRule::excluded);
  CHECK(excludes(Region::disc(0, 1, true), 1));
  CHECK(!excludes(Region::disc(0, 1, false), 1));
  // the sector apex is never inside an open sector
  CHECK(excludes(Region::sector(0, kPi / 3), 0));
}

TEST_CASE("region_sample") {
  for (const cplx& z : region_sample(Region::disc(0, 1, false), 100, 1)) CHECK(std::abs(z) <= 1.0);
  for (const cplx& z : region_sample(Region::halfplane(kPi / 2), 100, 2)) CHECK(z.real() > 0.0);
  for (const cplx& z : region_sample(Region::sector(0, kPi / 3), 100, 3)) {
    CHECK(principal_arg(z) > 0.0);
    CHECK(principal_arg(z) < kPi / 3);
  }
  CHECK(region_sample(Region::disc(0, 1), 10, 4) == region_sample(Region::disc(0, 1), 10, 4));
  CHECK_THROWS_AS(region_sample(Region::intersection_of({Region::disc(0, 1), Region::disc(5, 1)}), 1, 0),
                  std::domain_error);
}

TEST_CASE("principal_arg") {
  CHECK(principal_arg(0) == 0.0);
  CHECK(principal_arg(-1) == doctest::Approx(kPi));
  CHECK(principal_arg(cplx(-1, -0.0)) == doctest::Approx(kPi));
}

TEST_CASE("invalid regions") {
  CHECK_THROWS_AS(Region::disc(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(Region::sector(1, 0), std::invalid_argument);
  CHECK_THROWS_AS(Region::sector(0, 7), std::invalid_argument);
  CHECK_THROWS_AS(Region::power_of(Region::disc(0, 1), 0), std::invalid_argument);
  CHECK_THROWS_AS(Region::preimage_of(Polynomial{0}, Region::disc(0, 1)), std::invalid_argument);
}

TEST_CASE("text specs round trip") {
  const char* specs[] = {"disc:c=0+0i,r=1,closed",
                         "disc:c=3-1.5i,r=0.5,open",
                         "halfplane:phi=1.5707963267948966,open",
                         "sector:lo=0,hi=1.0471975511965976,open",
                         "ext-disc:r=10,open",
                         "complement:(disc:c=0+0i,r=1,closed)",
                         "power:(disc:c=0+0i,r=3,closed)^2"};
  for (const char* s : specs) {
    const Region d = parse_region(s);
    CHECK(parse_region(to_string(d)) == d);
  }
  CHECK(parse_region("halfplane:phi=pi/2,open") == Region::halfplane(kPi / 2, true));
  CHECK_THROWS_AS(parse_region("disc:r=1,closed,"), std::invalid_argument);
  CHECK_THROWS_AS(parse_region("blob:r=1"), std::invalid_argument);
  CHECK_THROWS_AS(parse_region("complement:(disc:r=1"), std::invalid_argument);
}

TEST_CASE("property: complement flips membership off the boundary") {
  const Region shapes[] = {Region::disc(cplx(0.5, -0.2), 1.3, false), Region::halfplane(0.7, true, 0.3),
                           Region::sector(-0.5, 2.0), Region::ext_disc(2.0)};
  Rng rng(31);
  for (const Region& d : shapes) {
    const Region c = Region::complement_of(d);
    for (int i = 0; i < 500; ++i) {
      const cplx z = 3.0 * rng.complex_normal();
      const Membership m = region_contains(d, z);
      if (m == Membership::boundary) continue;
      CHECK((region_contains(c, z) == Membership::outside) == (m == Membership::inside));
    }
  }
}

TEST_CASE("property: samples re-test as inside") {
  const Region shapes[] = {Region::disc(1, 0.5, true), Region::halfplane(2.0), Region::sector(0.2, 0.9),
                           Region::ext_disc(1.0), Region::complement_of(Region::disc(0, 2))};
  for (const Region& d : shapes) {
    for (const cplx& z : region_sample(d, 200, 32)) CHECK(region_contains(d, z, 0.0) == Membership::inside);
  }
}

TEST_CASE("property: preimage membership is membership of p(z)") {
  const Polynomial p{0.5, -1, 1};
  const Region inner = Region::disc(0, 1, false);
  const Region pre = Region::preimage_of(p, inner);
  Rng rng(33);
  for (int i = 0; i < 500; ++i) {
    const cplx z = 2.0 * rng.complex_normal();
    CHECK(region_contains(pre, z) == region_contains(inner, p(z)));
  }
}

TEST_CASE("power regions classify tuples coordinatewise") {
  const Region d2 = Region::power_of(Region::disc(0, 1, false), 2);
  CHECK(contains_tuple(d2, {0.1, 0.2}) == Membership::inside);
  CHECK(contains_tuple(d2, {0.1, 2.0}) == Membership::outside);
  CHECK(contains_tuple(d2, {0.1, 1.0}) == Membership::boundary);
  CHECK_THROWS_AS(contains_tuple(d2, {0.1}), std::invalid_argument);
}

TEST_CASE("complement convexity and shrinking") {
  CHECK(complement_is_convex(Region::ext_disc(10)));
  CHECK(complement_is_convex(Region::halfplane(0.3)));
  CHECK(!complement_is_convex(Region::disc(0, 1)));
  const Region s = shrink(Region::halfplane(kPi / 2), 1e-3);
  CHECK(region_contains(s, 5e-4) == Membership::outside);
  CHECK(region_contains(s, 2e-3) == Membership::inside);
  CHECK(signed_depth(Region::disc(0, 2), 0.5) == doctest::Approx(1.5));
}
