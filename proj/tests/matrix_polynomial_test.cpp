#include "polystab/families.hpp"
#include "polystab/hyperstability.hpp"
#include "polystab/polarization.hpp"
#include "polystab/suites.hpp"
#include "support.hpp"

using namespace polystab;
using namespace polystab::test;

namespace {

MatrixPolynomial shifted_diagonal() { return MatrixPolynomial({diag2(-1, -2), CMatrix::Identity(2, 2)}); }

}  // namespace

TEST_CASE("eval") {
  const MatrixPolynomial p = fixture_stable_not_hyperstable();
  CHECK(p.eval(cplx(0)) == CMatrix::Identity(2, 2));
  const MatrixPolynomial q({diag2(2, -1), CMatrix::Identity(2, 2)});
  CHECK(q.eval(cplx(1)) == diag2(3, 0));
  CHECK_THROWS_AS(MatrixPolynomial({CMatrix::Zero(2, 2)}), std::invalid_argument);
  CHECK_THROWS_AS(MatrixPolynomial({CMatrix::Zero(2, 2), CMatrix::Zero(3, 3)}), std::invalid_argument);
}

TEST_CASE("determinant_polynomial") {
  const Polynomial d1 = determinant_polynomial(fixture_stable_not_hyperstable());
  CHECK(d1.degree() == 0);
  CHECK(std::abs(d1[0] - 1.0) < 1e-12);

  const Polynomial d2 = determinant_polynomial(MatrixPolynomial({diag2(2, -1), CMatrix::Identity(2, 2)}));
  CHECK(d2.degree() == 2);
  CHECK(std::abs(d2[0] + 2.0) < 1e-12);
  CHECK(std::abs(d2[1] - 1.0) < 1e-12);
  CHECK(std::abs(d2[2] - 1.0) < 1e-12);

  // cofactor expansion of the perturbed fixture
  const double eps = 1e-3;
  const Polynomial d3 = determinant_polynomial(fixture_perturbed_derivative(eps));
  const cplx want[] = {0, 0, 1, 0, 0, 0, -3 * eps, 0, eps};
  CHECK(d3.degree() == 8);
  for (int j = 0; j <= 8; ++j) CHECK(std::abs(d3[j] - want[j]) <= 1e-10);
}

TEST_CASE("eigenvalues") {
  const EigenReport a = eigenvalues(shifted_diagonal());
  CHECK(a.regular);
  CHECK(match_distance(a.eigenvalues.roots, {1, 2}) < 1e-12);

  const EigenReport b = eigenvalues(fixture_stable_not_hyperstable());
  CHECK(b.regular);
  CHECK(b.eigenvalues.size() == 0);
  CHECK(b.drop_in_degree == 4);

  FamilyParams fp;
  fp.n = 1;
  fp.matrices["R"] = CMatrix::Ones(1, 1);
  const EigenReport c = eigenvalues(make_family(Family::mgt, fp, 0).polynomial());
  CHECK(match_distance(c.eigenvalues.roots, {-1, cplx(-0.5, std::sqrt(3.0) / 2), cplx(-0.5, -std::sqrt(3.0) / 2)}) <
        1e-10);

  // [[l, l], [1, 1]] is singular
  const EigenReport s = eigenvalues(MatrixPolynomial({mat2(0, 0, 1, 1), mat2(1, 1, 0, 0)}));
  CHECK(!s.regular);
  CHECK(s.eigenvalues.size() == 0);
  CHECK(s.det_poly.is_zero());
}

TEST_CASE("is_stable") {
  for (const Region& d : {Region::disc(0, 1, false), Region::halfplane(0.3), Region::sector(0, 1)}) {
    CHECK(is_stable(fixture_stable_not_hyperstable(), d).holds());
  }
  CHECK(is_stable(shifted_diagonal(), Region::disc(0, 1, true)).holds());
  const StabilityVerdict v = is_stable(shifted_diagonal(), Region::disc(0, 1.5, false));
  CHECK(v.violated());
  REQUIRE(v.witness.size() == 1);
  CHECK(std::abs(v.witness[0] - 1.0) < 1e-12);
  CHECK_THROWS_AS(is_stable(MatrixPolynomial({mat2(0, 0, 1, 1), mat2(1, 1, 0, 0)}), Region::disc(0, 1)),
                  std::domain_error);
}

TEST_CASE("derivative") {
  const double eps = 1e-3;
  const MatrixPolynomial d = derivative(fixture_perturbed_derivative(eps));
  // [[4l^3 - 6l, 3l^2 - 4], [1, 4 eps l^3]]
  CHECK(d.degree() == 3);
  CHECK((d.coeff(0) - mat2(0, -4, 1, 0)).norm() == 0.0);
  CHECK((d.coeff(1) - mat2(-6, 0, 0, 0)).norm() == 0.0);
  CHECK((d.coeff(2) - mat2(0, 3, 0, 0)).norm() == 0.0);
  CHECK((d.coeff(3) - mat2(4, 0, 0, 4 * eps)).norm() < 1e-15);

  const MatrixPolynomial g = derivative(MatrixPolynomial({diag2(0, 1), diag2(1, 0)}));
  CHECK(g.degree() == 0);
  CHECK(!eigenvalues(g).regular);

  const MatrixPolynomial h = derivative(MatrixPolynomial({CMatrix::Zero(2, 2), CMatrix::Zero(2, 2), mat2(1, 2, 3, 4)}));
  CHECK((h.coeff(1) - 2.0 * mat2(1, 2, 3, 4)).norm() == 0.0);
  CHECK_THROWS_AS(derivative(MatrixPolynomial({CMatrix::Identity(2, 2)})), std::invalid_argument);
}

TEST_CASE("entries_linearly_independent") {
  CHECK(entries_linearly_independent(derivative(fixture_perturbed_derivative(1e-3))));
  CHECK(!entries_linearly_independent(MatrixPolynomial({diag2(1, 0)})));
  CHECK(!entries_linearly_independent(MatrixPolynomial({mat2(0, 0, 1, 1), mat2(1, 2, 0, 0)})));
}

TEST_CASE("numerical_range_sample") {
  const NumericalRangeSample w = numerical_range_sample(shifted_diagonal(), 100, 1);
  CHECK(w.points.size() == 100);
  for (const cplx& z : w.points) {
    CHECK(std::abs(z.imag()) <= 1e-8);
    CHECK(z.real() >= 1 - 1e-8);
    CHECK(z.real() <= 2 + 1e-8);
  }
  const NumericalRangeSample s = numerical_range_sample(MatrixPolynomial({CMatrix::Ones(1, 1), CMatrix::Zero(1, 1),
                                                                          CMatrix::Ones(1, 1)}),
                                                        5, 2);
  for (const cplx& z : s.points) CHECK(std::abs(std::abs(z.imag()) - 1.0) < 1e-12);

  FamilyParams fp;
  fp.n = 3;
  const MatrixPolynomial ph = make_family(Family::ph_quadratic, fp, 4).polynomial();
  const NumericalRangeSample t = numerical_range_sample(ph, 100, 3);
  for (std::size_t i = 0; i < t.points.size(); ++i) {
    CHECK(t.points[i].real() <= 1e-8);
    const CVector& x = t.generators[t.generator[i]];
    const cplx v = (x.adjoint() * ph.eval(t.points[i]) * x)(0);
    double scale = 0.0;
    for (int j = 0; j <= ph.degree(); ++j) scale += spectral_norm(ph.coeff(j)) * std::pow(std::abs(t.points[i]), j);
    CHECK(std::abs(v) <= 1e-8 * scale);
  }
}

TEST_CASE("szasz_bound") {
  Rng rng(41);
  const MatrixPolynomial p({CMatrix::Identity(2, 2), random_gaussian(2, 2, rng), random_gaussian(2, 2, rng)});
  CHECK(szasz_bound(p, 0) == doctest::Approx(2.0));
  const MatrixPolynomial q({CMatrix::Ones(1, 1), I1 * CMatrix::Ones(1, 1)});
  for (double t : {-3.0, -0.5, 0.0, 1.0, 4.0}) {
    CHECK(szasz_bound(q, t) == doctest::Approx(2 * std::exp(t * t / 2)));
    CHECK(std::abs(1.0 + I1 * t) <= szasz_bound(q, t));
  }
  const MatrixPolynomial r({CMatrix::Ones(1, 1), CMatrix::Ones(1, 1)});
  CHECK(szasz_bound(r, 1) == doctest::Approx(2 * std::exp(1.5)));
  CHECK_THROWS_AS(szasz_bound(MatrixPolynomial({2.0 * CMatrix::Identity(2, 2), CMatrix::Identity(2, 2)}), 1),
                  std::invalid_argument);
}

TEST_CASE("szasz_bound holds with the numerical range in the upper half-plane") {
  const Region upper = Region::halfplane(0.0, false);
  for (int i = 0; i < 50; ++i) {
    const Index n = 1 + i % 4;
    const CMatrix b1 = gen_psd(n, mix_seed(42, 2 * i)) / double(2 * n);
    const CMatrix b2 = gen_psd(n, mix_seed(42, 2 * i + 1)) / double(4 * n);
    const MatrixPolynomial p({CMatrix::Identity(n, n), I1 * b1, -b2});
    for (const cplx& z : numerical_range_sample(p, 50, i).points) CHECK(!excludes(upper, z, 1e-8));
    for (int gx = 0; gx < 20; ++gx) {
      for (int gy = 0; gy < 20; ++gy) {
        const cplx z(-5.0 + 10.0 * gx / 19.0, -5.0 + 10.0 * gy / 19.0);
        CHECK(spectral_norm(p.eval(z)) <= szasz_bound(p, z) * (1 + 1e-9));
      }
    }
  }
}

TEST_CASE("szasz_bound fails with the numerical range in the left half-plane") {
  // W(1 + l + l^2) = {(-1 +- i sqrt 3)/2}; at z = 2i the bound is 2 e^{-2}
  const MatrixPolynomial p({CMatrix::Ones(1, 1), CMatrix::Ones(1, 1), CMatrix::Ones(1, 1)});
  const cplx z(0, 2);
  CHECK(szasz_bound(p, z) == doctest::Approx(2 * std::exp(-2.0)));
  CHECK(spectral_norm(p.eval(z)) > szasz_bound(p, z));
}

TEST_CASE("multivariate evaluation") {
  const MultivariateMatrixPolynomial t = polarize(fixture_stable_not_hyperstable(), 2).result;
  CHECK((t.eval({2, 0}) - CMatrix::Ones(2, 2)).norm() < 1e-15);
  CHECK(sigma_min(t.eval({2, 0})) < 1e-14);
  MultivariateMatrixPolynomial c(2, 3);
  c.add_term({0, 0, 0}, CMatrix::Identity(2, 2));
  CHECK(c.eval({1.5, -I1, 7}) == CMatrix::Identity(2, 2));
  CHECK_THROWS_AS(c.eval({1, 2}), std::invalid_argument);

  FamilyParams fp;
  fp.n = 3;
  const FamilyInstance inst = make_family(Family::ph_quadratic, fp, 5);
  const auto comps = family_companions(inst);
  REQUIRE(comps.size() == 1);
  CHECK((comps[0].poly.eval({0, 0}) - inst.parts.at("R0")).norm() < 1e-14);
}

TEST_CASE("mv_stability_sample") {
  const MultivariateMatrixPolynomial t = polarize(fixture_stable_not_hyperstable(), 2).result;
  const StabilityVerdict v = mv_stability_sample(t, Region::power_of(Region::disc(0, 3, false), 2), 200, 1);
  CHECK(v.violated());
  REQUIRE(v.witness.size() == 2);
  const cplx diff = v.witness[0] - v.witness[1];
  CHECK(std::min(std::abs(diff - 2.0), std::abs(diff + 2.0)) <= 1e-6);

  MultivariateMatrixPolynomial c(2, 2);
  c.add_term({0, 0}, CMatrix::Identity(2, 2));
  const StabilityVerdict h = mv_stability_sample(c, Region::power_of(Region::disc(0, 1), 2), 50, 2);
  CHECK(h.holds());
  CHECK(h.evidence_only);
  CHECK(h.min_sigma == doctest::Approx(1.0));

  FamilyParams fp;
  fp.n = 3;
  const auto comps = family_companions(make_family(Family::ph_quadratic, fp, 6));
  const StabilityVerdict e =
      mv_stability_sample(comps[0].poly, Region::power_of(Region::halfplane(kPi / 2), 2), 500, 3);
  CHECK(e.holds());
  CHECK(e.evidence_only);
}

TEST_CASE("property: determinant polynomial matches direct determinants") {
  Rng rng(43);
  for (int i = 0; i < 200; ++i) {
    const Index n = 1 + i % 4;
    const int d = 1 + (i / 4) % 3;
    const MatrixPolynomial p = random_matpoly(n, d, rng);
    const Polynomial det = determinant_polynomial(p);
    for (int k = 0; k < 20; ++k) {
      const cplx z = rng.complex_normal();
      const cplx direct = p.eval(z).determinant();
      CHECK(std::abs(det(z) - direct) <= 1e-8 * std::max(1.0, std::abs(direct)));
    }
  }
}

TEST_CASE("property: eigenvalues make P singular") {
  Rng rng(44);
  for (int i = 0; i < 100; ++i) {
    const MatrixPolynomial p = random_matpoly(1 + i % 4, 1 + i % 3, rng);
    for (const cplx& z : eigenvalues(p).eigenvalues.roots) {
      double scale = 0.0;
      for (int j = 0; j <= p.degree(); ++j) scale += spectral_norm(p.coeff(j)) * std::pow(std::abs(z), j);
      CHECK(sigma_min(p.eval(z)) <= 1e-7 * scale);
    }
  }
}

TEST_CASE("property: eigenvalues lie in the numerical range") {
  // the null vector x of P(mu) gives x* P(mu) x = 0
  Rng rng(45);
  for (int i = 0; i < 50; ++i) {
    const MatrixPolynomial p = random_matpoly(2 + i % 3, 1 + i % 2, rng);
    for (const cplx& z : eigenvalues(p).eigenvalues.roots) {
      Eigen::JacobiSVD<CMatrix> svd(p.eval(z), Eigen::ComputeFullV);
      const CVector x = svd.matrixV().col(p.n() - 1);
      const Polynomial s = scalar_form(p, x, x, 0.0);
      CHECK(std::abs(s(z)) <= 1e-7 * std::max(1.0, s.max_abs() * std::pow(std::max(1.0, std::abs(z)), p.degree())));
    }
  }
}

TEST_CASE("property: no certificate exists at a null vector of an eigenvalue in D") {
  // y* P(mu) x = 0 for every y when P(mu) x = 0
  Rng rng(46);
  const Region d = Region::disc(0, 0.5, false);
  int hits = 0;
  for (int i = 0; i < 40; ++i) {
    const MatrixPolynomial p = random_matpoly(2, 1 + i % 2, rng);
    for (const cplx& z : eigenvalues(p).eigenvalues.roots) {
      if (std::abs(z) > 0.45) continue;
      Eigen::JacobiSVD<CMatrix> svd(p.eval(z), Eigen::ComputeFullV);
      const CVector x = svd.matrixV().col(p.n() - 1);
      CHECK_FALSE(hyper_check(p, x, d, 50, mix_seed(46, i)).found());
      ++hits;
    }
  }
  CHECK(hits > 0);
}
