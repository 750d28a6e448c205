#include "polystab/families.hpp"
#include "polystab/hyperstability.hpp"
#include "support.hpp"

using namespace polystab;
using namespace polystab::test;

TEST_CASE("family names round trip") {
  for (Family f : all_families()) CHECK(parse_family(to_string(f)) == f);
  CHECK(all_families().size() == 8);
  CHECK_THROWS_AS(parse_family("nope"), std::invalid_argument);
}

TEST_CASE("mgt construction and hypotheses") {
  FamilyParams fp;
  fp.n = 1;
  fp.matrices["R"] = CMatrix::Ones(1, 1);
  const MatrixPolynomial p = make_family(Family::mgt, fp, 0).polynomial();
  const cplx want[] = {1, 2, 2, 1};
  for (int j = 0; j <= 3; ++j) CHECK(std::abs(p.coeff(j)(0, 0) - want[j]) < 1e-15);

  FamilyParams bad = fp;
  bad.a = 1.0;
  const HypothesisReport rep = check_family_hypotheses(assemble_family(Family::mgt, bad, 0));
  CHECK(rep.verdict.violated());
  CHECK_THROWS_AS(make_family(Family::mgt, bad, 0), std::invalid_argument);
  bad = fp;
  bad.c = 3.0;  // b > c fails
  CHECK(check_family_hypotheses(assemble_family(Family::mgt, bad, 0)).verdict.violated());
}

TEST_CASE("subadd hypothesis arithmetic") {
  FamilyParams fp;
  fp.n = 2;
  fp.matrices["A0"] = 2.0 * CMatrix::Identity(2, 2);
  fp.matrices["A1"] = 0.5 * CMatrix::Identity(2, 2);
  fp.matrices["A2"] = diag2(0.5, 0.25);
  CHECK(check_family_hypotheses(assemble_family(Family::subadd, fp, 0)).verdict.holds());
  fp.matrices["A0"] = 0.9 * CMatrix::Identity(2, 2);
  CHECK(check_family_hypotheses(assemble_family(Family::subadd, fp, 0)).verdict.violated());
}

TEST_CASE("pencil-aJ with a = 0") {
  FamilyParams fp;
  fp.n = 3;
  fp.a = 0.0;
  const FamilyInstance inst = make_family(Family::pencil_aj, fp, 1);
  const auto& pt = inst.parts;
  CHECK((inst.polynomial().coeff(0) - pt.at("R0")).norm() == 0.0);
  CHECK((inst.polynomial().coeff(1) - (pt.at("R1") + pt.at("J"))).norm() == 0.0);
}

TEST_CASE("kernel condition") {
  FamilyParams fp;
  fp.n = 2;
  for (const char* k : {"R0", "R1", "R2", "J"}) fp.matrices[k] = CMatrix::Zero(2, 2);
  CHECK(check_family_hypotheses(assemble_family(Family::ph_quadratic, fp, 0)).verdict.violated());
  fp.matrices["J"] = mat2(0, 1, -1, 0);
  CHECK(check_family_hypotheses(assemble_family(Family::ph_quadratic, fp, 0)).verdict.holds());
  fp.matrices["J"] = mat2(0, 1, 1, 0);  // not skew-Hermitian
  CHECK(check_family_hypotheses(assemble_family(Family::ph_quadratic, fp, 0)).verdict.violated());
}

TEST_CASE("expected regions") {
  FamilyParams fp;
  const Region rhp = Region::halfplane(kPi / 2, true);
  CHECK(make_family(Family::mgt, fp, 1).expected_region == rhp);
  CHECK(make_family(Family::ph_quadratic, fp, 1).expected_region == rhp);
  CHECK(make_family(Family::ph_corollary_q, fp, 1).expected_region == rhp);
  CHECK(make_family(Family::pencil_aj, fp, 1).expected_region == rhp);
  CHECK(make_family(Family::subadd, fp, 1).expected_region == Region::disc(0, fp.r, true));
  CHECK(make_family(Family::psd_cubic_sector, fp, 1).expected_region == Region::sector(0, kPi / 3));
  CHECK(make_family(Family::palindromic_psd_cubic, fp, 1).expected_region == Region::sector(0, kPi / 3));
  const Region angle = make_family(Family::angle_cubic, fp, 1).expected_region;
  CHECK(excludes(angle, 0));
  CHECK(region_contains(angle, 1) == Membership::inside);
  CHECK(excludes(angle, cplx(1, 2)));
}

TEST_CASE("instances are deterministic and parts are independent") {
  FamilyParams fp;
  fp.n = 3;
  const FamilyInstance a = make_family(Family::ph_quadratic, fp, 5);
  const FamilyInstance b = make_family(Family::ph_quadratic, fp, 5);
  CHECK(a.coefficients == b.coefficients);
  fp.matrices["R0"] = CMatrix::Identity(3, 3);
  const FamilyInstance c = make_family(Family::ph_quadratic, fp, 5);
  CHECK(c.parts.at("R1") == a.parts.at("R1"));
  CHECK(c.parts.at("J") == a.parts.at("J"));
}

TEST_CASE("every family satisfies its claim") {
  ClaimOptions opt;
  opt.samples = 200;
  opt.nx = 10;
  for (Family f : all_families()) {
    for (std::uint64_t seed : {1u, 2u}) {
      FamilyParams fp;
      fp.n = 3;
      const FamilyInstance inst = make_family(f, fp, seed);
      CHECK(check_family_hypotheses(inst).verdict.holds());
      const ClaimReport rep = verify_family_claim(inst, opt, seed);
      INFO(to_string(f), " seed ", seed);
      for (const auto& c : rep.checks) {
        INFO(c.name, ": ", c.detail);
        CHECK(c.ok);
      }
      CHECK(rep.ok);
    }
  }
}

TEST_CASE("property: pencil-aJ stays in the closed left half-plane for a in [0, 5]") {
  double worst = -1e300;
  for (int i = 0; i < 50; ++i) {
    FamilyParams fp;
    fp.n = 2 + i % 4;
    fp.a = 5.0 * i / 49.0;
    for (const cplx& z : eigenvalues(make_family(Family::pencil_aj, fp, 800 + i).polynomial()).eigenvalues.roots) {
      worst = std::max(worst, z.real());
    }
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("property: certificates of Q^H P map back to P") {
  const Region rhp = Region::halfplane(kPi / 2, true);
  for (int i = 0; i < 10; ++i) {
    FamilyParams fp;
    fp.n = 2 + i % 3;
    const FamilyInstance inst = make_family(Family::ph_corollary_q, fp, 900 + i);
    const MatrixPolynomial p = inst.polynomial();
    const CMatrix& q = inst.parts.at("Q");
    // Q^H P = l^2 Q^H A2 + l Q^H (J + R) Q + Q^H A0 is port-Hamiltonian
    const MatrixPolynomial reduced = p.sandwich(q.adjoint(), CMatrix::Identity(fp.n, fp.n));
    CHECK(is_psd(reduced.coeff(0)));
    CHECK(is_psd(reduced.coeff(2)));
    CHECK(is_skew(reduced.coeff(1) - hermitian_part(reduced.coeff(1))));
    for (const auto& e : hyper_survey(reduced, rhp, 5, 200, i).entries) {
      REQUIRE(e.certificate);
      CHECK(verify_certificate(p, e.x, q * e.certificate->y, rhp).has_value());
    }
  }
}

TEST_CASE("psd cubic companions have no singular samples") {
  FamilyParams fp;
  fp.n = 2;
  const auto comps = family_companions(make_family(Family::psd_cubic_sector, fp, 3));
  CHECK(comps.size() == 3);
  for (const auto& c : comps) {
    CHECK(mv_stability_sample(c.poly, Region::power_of(c.region, 2), 300, 4).holds());
  }
}

TEST_CASE("angle-cubic generator") {
  FamilyParams fp;
  const FamilyInstance inst = make_family(Family::angle_cubic, fp, 6);
  const MatrixPolynomial g = angle_cubic_generator(inst);
  CHECK(g.degree() == 2);
  CHECK((g.coeff(1) - 2.0 * (inst.parts.at("R1") + inst.parts.at("J"))).norm() < 1e-15);
  CHECK_THROWS_AS(angle_cubic_generator(make_family(Family::mgt, fp, 6)), std::invalid_argument);
}
