#include "support.hpp"

using namespace polystab;
using namespace polystab::test;

TEST_CASE("sigma_min") {
  CHECK(sigma_min(CMatrix::Identity(2, 2)) == doctest::Approx(1.0));
  CHECK(sigma_min(diag2(3, 0)) == doctest::Approx(0.0));
  CHECK(sigma_min(mat2(0, 2, 0, 0)) == doctest::Approx(0.0));
  CHECK_THROWS_AS(sigma_min(CMatrix::Zero(2, 3)), std::invalid_argument);
}

TEST_CASE("spectral_norm") {
  CHECK(spectral_norm(CMatrix::Identity(3, 3)) == doctest::Approx(1.0));
  CHECK(spectral_norm(mat2(0, 2, 0, 0)) == doctest::Approx(2.0));
  CHECK(spectral_norm(diag2(1, -3.0 * I1)) == doctest::Approx(3.0));
}

TEST_CASE("lambda_h") {
  CHECK(std::abs(lambda_h(I1 * CMatrix::Identity(2, 2))) < 1e-14);
  CHECK(lambda_h(diag2(1, 2)) == doctest::Approx(2.0));
  CHECK(lambda_h(mat2(0, 2, 0, 0)) == doctest::Approx(1.0));
  CHECK_THROWS_AS(lambda_h(CMatrix::Zero(3, 2)), std::invalid_argument);
}

TEST_CASE("hermitian_eigenvalues") {
  auto e = hermitian_eigenvalues(diag2(2, 1));
  CHECK(e[0] == doctest::Approx(1.0));
  CHECK(e[1] == doctest::Approx(2.0));
  e = hermitian_eigenvalues(mat2(0, 1, 1, 0));
  CHECK(e[0] == doctest::Approx(-1.0));
  CHECK(e[1] == doctest::Approx(1.0));
  e = hermitian_eigenvalues(CMatrix::Ones(3, 3));
  CHECK(std::abs(e[0]) < 1e-12);
  CHECK(std::abs(e[1]) < 1e-12);
  CHECK(e[2] == doctest::Approx(3.0));
  CHECK_THROWS_AS(hermitian_eigenvalues(mat2(0, 1, 0, 0)), std::invalid_argument);
}

TEST_CASE("gen_psd is Hermitian, PSD and deterministic") {
  for (Index n = 1; n <= 5; ++n) {
    const CMatrix a = gen_psd(n, 7 + n);
    CHECK((a - a.adjoint()).norm() <= 1e-14);
    CHECK(sigma_min(a) >= 0.0);
    CHECK(hermitian_eigenvalues(a).front() >= -1e-12);
    CHECK(a == gen_psd(n, 7 + n));
  }
}

TEST_CASE("gen_skew") {
  const CMatrix j = gen_skew(4, 3);
  CHECK((j + j.adjoint()).norm() == 0.0);
  CHECK(j == gen_skew(4, 3));
  const CMatrix g = gen_skew(4, 3, true);
  CHECK((g + g.adjoint()).norm() == 0.0);
  CHECK(hermitian_eigenvalues(hermitian_part(-I1 * g)).front() >= -1e-12);
}

TEST_CASE("property: sigma_min <= spectral_norm on 1000 matrices") {
  Rng rng(11);
  for (int i = 0; i < 1000; ++i) {
    const Index n = 1 + i % 5;
    const CMatrix m = random_gaussian(n, n, rng);
    CHECK(sigma_min(m) <= spectral_norm(m) * (1 + 1e-14));
  }
}

TEST_CASE("property: lambda_h of a Hermitian matrix is its top eigenvalue") {
  Rng rng(12);
  for (int i = 0; i < 100; ++i) {
    const CMatrix h = hermitian_part(random_gaussian(4, 4, rng));
    CHECK(std::abs(lambda_h(h) - hermitian_eigenvalues(h).back()) <= 1e-10);
  }
}

TEST_CASE("property: gen_psd quadratic form is nonnegative") {
  const CMatrix a = gen_psd(5, 99);
  const double scale = spectral_norm(a);
  Rng rng(13);
  for (int i = 0; i < 100; ++i) {
    const CVector x = random_gaussian(5, 1, rng);
    CHECK((x.adjoint() * a * x)(0).real() >= -1e-12 * scale * x.squaredNorm());
  }
}

TEST_CASE("Rng streams are reproducible and distinct") {
  Rng a(5, 1), b(5, 1), c(5, 2);
  const double va = a.normal();
  CHECK(va == b.normal());
  CHECK(va != c.normal());
  CHECK(mix_seed(1, 2) == mix_seed(1, 2));
  CHECK(mix_seed(1, 2) != mix_seed(2, 1));
  Rng u(3);
  for (int i = 0; i < 1000; ++i) {
    const double x = u.uniform();
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
}
