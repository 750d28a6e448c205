#include "polystab/families.hpp"
#include "polystab/hyperstability.hpp"
#include "polystab/suites.hpp"
#include "support.hpp"

using namespace polystab;
using namespace polystab::test;

namespace {

const CVector e1 = vec2(1, 0);
const CVector e2 = vec2(0, 1);

// |<u, v>| / (|u| |v|): 1 when u and v are parallel
double alignment(const CVector& u, const CVector& v) { return std::abs(u.dot(v)) / (u.norm() * v.norm()); }

void check_certificate(const MatrixPolynomial& p, const Certificate& c, const Region& d) {
  for (int j = 0; j <= p.degree(); ++j) {
    const cplx expect = (c.y.adjoint() * p.coeff(j) * c.x)(0);
    CHECK(std::abs(c.scalar[j] - expect) <= 1e-12 * std::max(1.0, std::abs(expect)));
  }
  CHECK(is_stable_scalar(c.scalar, d).holds());
}

MatrixPolynomial ph(Index n, std::uint64_t seed) {
  FamilyParams fp;
  fp.n = n;
  return make_family(Family::ph_quadratic, fp, seed).polynomial();
}

const Region rhp = Region::halfplane(kPi / 2, true);

}  // namespace

TEST_CASE("span_decompose") {
  Rng rng(51);
  const CVector u = random_gaussian(3, 1, rng);
  const CVector v = random_gaussian(3, 1, rng);
  const SpanDecomposition a = span_decompose(u + 2.0 * v, u, v);
  CHECK(a.dependent);
  CHECK(std::abs(a.alpha - 1.0) < 1e-12);
  CHECK(std::abs(a.beta - 2.0) < 1e-12);

  CVector w(3), x(3), y(3);
  w << 0, 0, 1;
  x << 1, 0, 0;
  y << 0, 1, 0;
  const SpanDecomposition b = span_decompose(w, x, y);
  CHECK(!b.dependent);
  CHECK(b.residual == doctest::Approx(1.0));

  const SpanDecomposition c = span_decompose(e2, e2, e1);
  CHECK(c.dependent);
  CHECK(std::abs(c.alpha - 1.0) < 1e-14);
  CHECK(std::abs(c.beta) < 1e-14);

  CHECK(span_decompose(e1, CVector::Zero(2), CVector::Zero(2)).residual == doctest::Approx(1.0));
  CHECK_THROWS_AS(span_decompose(CVector::Zero(2), CVector::Zero(2), CVector::Zero(2)), std::invalid_argument);
}

TEST_CASE("structural quadratic construction") {
  const MatrixPolynomial p33 = fixture_stable_not_hyperstable();
  const Region disc = Region::disc(0, 1, false);
  const CertificateSearch s = structural_certificate_quadratic(p33, e2, disc, Variant::a);
  CHECK(!s.found());
  CHECK(!s.diagnostic.empty());
  CHECK_THROWS_AS(structural_certificate_quadratic(p33, e2, disc, Variant::b), std::invalid_argument);

  // l^2 I + l J + I, x = e1: y = e2 gives a scalar proportional to l
  const MatrixPolynomial pj({CMatrix::Identity(2, 2), mat2(0, 1, -1, 0), CMatrix::Identity(2, 2)});
  const CertificateSearch b = structural_certificate_quadratic(pj, e1, rhp, Variant::b);
  REQUIRE(b.found());
  CHECK(alignment(b.certificate->y, e2) == doctest::Approx(1.0));
  CHECK(b.certificate->scalar.degree() == 1);
  CHECK(std::abs(b.certificate->scalar[0]) < 1e-14);
  check_certificate(pj, *b.certificate, rhp);

  const MatrixPolynomial pd({diag2(5, 1), diag2(1, 0), diag2(1, 0)});
  const CertificateSearch a = structural_certificate_quadratic(pd, e1, disc, Variant::a);
  REQUIRE(a.found());
  CHECK(alignment(a.certificate->y, e1) == doctest::Approx(1.0));
  check_certificate(pd, *a.certificate, disc);
}

TEST_CASE("structural cubic construction") {
  FamilyParams fp;
  fp.n = 2;
  const MatrixPolynomial p = make_family(Family::palindromic_psd_cubic, fp, 3).polynomial();
  const Region sector = Region::sector(0, kPi / 3);
  Rng rng(52);
  for (int i = 0; i < 10; ++i) {
    const CVector x = random_unit_vector(2, rng);
    const CertificateSearch s = structural_certificate_cubic(p, x, sector, Variant::b);
    REQUIRE(s.found());
    check_certificate(p, *s.certificate, sector);
  }

  // diag(l^3 + 2, 1) with x = e1; the region must leave out 0
  const MatrixPolynomial q({diag2(2, 1), CMatrix::Zero(2, 2), CMatrix::Zero(2, 2), diag2(1, 0)});
  const Region off = Region::disc(3, 1, false);
  const CertificateSearch s = structural_certificate_cubic(q, e1, off, Variant::b);
  REQUIRE(s.found());
  check_certificate(q, *s.certificate, off);
  CHECK_THROWS_AS(structural_certificate_cubic(q, e1, Region::disc(0, 1, true), Variant::b), std::invalid_argument);

  // variant a: the region may not contain -1
  CHECK_THROWS_AS(structural_certificate_cubic(p, e1, Region::disc(-1, 0.5), Variant::a), std::invalid_argument);
  const CertificateSearch a = structural_certificate_cubic(p, e1, Region::disc(3, 0.5), Variant::a);
  if (a.found()) check_certificate(p, *a.certificate, Region::disc(3, 0.5));
}

TEST_CASE("pencil_form_detect") {
  FamilyParams fp;
  fp.n = 3;
  const FamilyInstance mgt = make_family(Family::mgt, fp, 7);
  const auto f = pencil_form_detect(mgt.polynomial());
  REQUIRE(f);
  // monic: p = l^3 + 2 l^2, q = l + c/b, B = b R
  CHECK(f->p.degree() == 3);
  CHECK(std::abs(f->p[2] - 2.0) < 1e-12);
  CHECK(std::abs(f->p[0]) < 1e-12);
  CHECK(f->q.degree() == 1);
  CHECK(std::abs(f->q[0] - 0.5) < 1e-12);
  CHECK((f->a - CMatrix::Identity(3, 3)).norm() < 1e-12);
  CHECK((f->b - 2.0 * mgt.parts.at("R")).norm() < 1e-12);

  Rng rng(53);
  const CMatrix a = random_gaussian(2, 2, rng);
  const CMatrix b = random_gaussian(2, 2, rng);
  const auto g = pencil_form_detect(MatrixPolynomial({b, a}));
  REQUIRE(g);
  for (cplx z : {cplx(0.3, 1), cplx(-2, 0.5)}) {
    CHECK((g->p(z) * g->a + g->q(z) * g->b - (z * a + b)).norm() < 1e-12);
  }

  CHECK(!pencil_form_detect(fixture_stable_not_hyperstable()));
}

TEST_CASE("hyper_check") {
  const Region disc = Region::disc(0, 1, false);
  const CertificateSearch s = hyper_check(fixture_stable_not_hyperstable(), e2, disc, 500, 1);
  CHECK(!s.found());
  CHECK(s.candidates_tried <= 500);

  const MatrixPolynomial p({diag2(2, 1), diag2(1, 0)});
  const CertificateSearch t = hyper_check(p, e1, disc, 100, 2);
  REQUIRE(t.found());
  check_certificate(p, *t.certificate, disc);

  const CertificateSearch z = hyper_check(ph(3, 1), CVector::Unit(3, 0), rhp, 0, 3);
  CHECK(!z.found());
  CHECK(z.diagnostic.find("budget exhausted") != std::string::npos);

  CHECK_THROWS_AS(hyper_check(p, CVector::Zero(2), disc, 10, 0), std::invalid_argument);
}

TEST_CASE("hyper_survey") {
  const HyperSurveyReport a = hyper_survey(fixture_stable_not_hyperstable(), Region::disc(0, 1, false), 10, 200, 1);
  CHECK(a.verdict == SurveyVerdict::counterexample_candidate);
  REQUIRE(a.candidate);
  CHECK((*a.candidate - e2).norm() == 0.0);
  CHECK(a.certified() + a.failures() == a.sampled());

  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const HyperSurveyReport b = hyper_survey(ph(4, seed), rhp, 20, 200, seed);
    CHECK(b.verdict == SurveyVerdict::all_certified);
    CHECK(b.sampled() == 24);
  }

  FamilyParams fp;
  fp.n = 3;
  const HyperSurveyReport m = hyper_survey(make_family(Family::mgt, fp, 4).polynomial(), rhp, 20, 200, 4);
  CHECK(m.verdict == SurveyVerdict::all_certified);

  const HyperSurveyReport z = hyper_survey(ph(2, 5), rhp, 3, 0, 5);
  CHECK(z.verdict == SurveyVerdict::inconclusive);
  for (const auto& e : z.entries) CHECK(e.diagnostic.find("budget exhausted") != std::string::npos);
  CHECK_THROWS_AS(hyper_survey(ph(2, 5), rhp, 0, 10, 5), std::invalid_argument);
}

TEST_CASE("hyper_survey does not depend on the thread count") {
  const MatrixPolynomial p = ph(4, 9);
  const HyperSurveyReport a = hyper_survey(p, rhp, 30, 200, 9, 1);
  const HyperSurveyReport b = hyper_survey(p, rhp, 30, 200, 9, 4);
  REQUIRE(a.entries.size() == b.entries.size());
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(a.entries[i].x == b.entries[i].x);
    REQUIRE(a.entries[i].certificate.has_value() == b.entries[i].certificate.has_value());
    if (a.entries[i].certificate) CHECK(a.entries[i].certificate->y == b.entries[i].certificate->y);
  }
}

TEST_CASE("gauss_lucas_transfer") {
  const MatrixPolynomial g = fixture_gauss_lucas();
  const Region far = Region::ext_disc(10, true);
  const HyperSurveyReport s = hyper_survey(g, far, 10, 200, 1);
  REQUIRE(s.verdict == SurveyVerdict::all_certified);
  const HyperSurveyReport t = gauss_lucas_transfer(g, far, s);
  CHECK(t.verdict == SurveyVerdict::all_certified);
  const MatrixPolynomial dg = derivative(g);
  for (const auto& e : t.entries) {
    REQUIRE(e.certificate);
    check_certificate(dg, *e.certificate, far);
  }

  // diag(l, 1) has a singular derivative
  const MatrixPolynomial d({diag2(0, 1), diag2(1, 0)});
  const Region outside = Region::ext_disc(1, true);
  const HyperSurveyReport sd = hyper_survey(d, outside, 5, 50, 2);
  CHECK(sd.verdict == SurveyVerdict::all_certified);
  CHECK_THROWS_AS(gauss_lucas_transfer(d, outside, sd), std::invalid_argument);

  // scalar case: p = (l - 1)(l - 2) outside a disc around [1, 2]
  const MatrixPolynomial sc({2.0 * CMatrix::Ones(1, 1), -3.0 * CMatrix::Ones(1, 1), CMatrix::Ones(1, 1)});
  const Region hole = Region::ext_disc(1, true, 1.5);
  const HyperSurveyReport ss = hyper_survey(sc, hole, 2, 10, 3);
  REQUIRE(ss.verdict == SurveyVerdict::all_certified);
  const HyperSurveyReport ts = gauss_lucas_transfer(sc, hole, ss);
  CHECK(ts.verdict == SurveyVerdict::all_certified);
  CHECK(std::abs(ts.entries[0].certificate->roots.roots.at(0) - 1.5) < 1e-12);

  // the region's complement must be convex
  CHECK_THROWS_AS(gauss_lucas_transfer(sc, Region::disc(0, 0.5), hyper_survey(sc, Region::disc(0, 0.5), 2, 10, 4)),
                  std::invalid_argument);
}

TEST_CASE("property: returned certificates re-verify") {
  for (int i = 0; i < 10; ++i) {
    const MatrixPolynomial p = ph(2 + i % 4, 100 + i);
    for (const auto& e : hyper_survey(p, rhp, 5, 200, i).entries) {
      REQUIRE(e.certificate);
      check_certificate(p, *e.certificate, rhp);
      CHECK(verify_certificate(p, e.x, e.certificate->y, rhp).has_value());
    }
  }
}

TEST_CASE("property: certificate search is scale invariant") {
  Rng rng(54);
  const Region disc = Region::disc(0, 1, false);
  for (int i = 0; i < 30; ++i) {
    const MatrixPolynomial p = i % 2 ? ph(3, 200 + i) : random_matpoly(3, 2, rng);
    const Region d = i % 2 ? rhp : disc;
    const cplx c = rng.complex_normal() * 3.0 + 0.1;
    const CVector x = random_unit_vector(3, rng);
    const CertificateSearch a = hyper_check(p, x, d, 100, i);
    const CertificateSearch b = hyper_check(p * c, x, d, 100, i);
    CHECK(a.found() == b.found());
    if (a.found()) CHECK(verify_certificate(p * c, x, a.certificate->y, d).has_value());
  }
}

TEST_CASE("property: certificates carry over through Q^H P S") {
  Rng rng(55);
  for (int i = 0; i < 10; ++i) {
    const Index n = 2 + i % 2;
    const MatrixPolynomial p0 = ph(n, 300 + i);
    const CMatrix q = random_gaussian(n, n, rng) + 2.0 * CMatrix::Identity(n, n);
    const CMatrix s = random_gaussian(n, n, rng) + 2.0 * CMatrix::Identity(n, n);
    // P = Q^{-H} P0 S^{-1}, so Q^H P S = P0
    const MatrixPolynomial p = p0.sandwich(q.adjoint().inverse(), s.inverse());
    for (const auto& e : hyper_survey(p0, rhp, 5, 200, i).entries) {
      REQUIRE(e.certificate);
      CHECK(verify_certificate(p, s * e.x, q * e.certificate->y, rhp).has_value());
    }
  }
}

TEST_CASE("property: block upper-triangular polynomials") {
  for (int i = 0; i < 5; ++i) {
    const MatrixPolynomial a = ph(2, 400 + i);
    const MatrixPolynomial d = ph(2, 500 + i);
    Rng rng(56, i);
    std::vector<CMatrix> c;
    for (int j = 0; j <= 2; ++j) {
      CMatrix m = CMatrix::Zero(4, 4);
      m.topLeftCorner(2, 2) = a.coeff(j);
      m.topRightCorner(2, 2) = random_gaussian(2, 2, rng);
      m.bottomRightCorner(2, 2) = d.coeff(j);
      c.push_back(m);
    }
    const MatrixPolynomial p(c);
    CHECK(hyper_survey(p, rhp, 10, 200, i).verdict == SurveyVerdict::all_certified);
    // x in the trailing block: pad the block certificate with zeros
    for (const auto& e : hyper_survey(d, rhp, 5, 200, i).entries) {
      REQUIRE(e.certificate);
      CVector x = CVector::Zero(4), y = CVector::Zero(4);
      x.tail(2) = e.x;
      y.tail(2) = e.certificate->y;
      CHECK(verify_certificate(p, x, y, rhp).has_value());
    }
  }
}

TEST_CASE("property: stable pencils are hyperstable") {
  Rng rng(57);
  for (int i = 0; i < 100; ++i) {
    const Index n = 2 + i % 3;
    const MatrixPolynomial p({random_gaussian(n, n, rng), random_gaussian(n, n, rng)});
    const auto eig = eigenvalues(p).eigenvalues.roots;
    const cplx c = rng.complex_normal();
    double r = 3.0;
    for (const cplx& z : eig) r = std::min(r, 0.9 * std::abs(z - c));
    const Region d = Region::disc(c, r, false);
    REQUIRE(is_stable(p, d).holds());
    const HyperSurveyReport s = hyper_survey(p, d, 5, 100, i);
    CHECK(s.verdict == SurveyVerdict::all_certified);
  }
}
