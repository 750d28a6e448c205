#pragma once

#include <doctest.h>

#include "polystab/matrix_polynomial.hpp"

namespace polystab::test {

inline CMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

inline CVector vec2(cplx a, cplx b) {
  CVector v(2);
  v << a, b;
  return v;
}

inline CMatrix diag2(cplx a, cplx b) { return mat2(a, 0, 0, b); }

inline const cplx I1{0.0, 1.0};

/// Random complex polynomial of exact degree d with Gaussian coefficients.
inline Polynomial random_poly(int d, Rng& rng) {
  std::vector<cplx> c(d + 1);
  for (auto& v : c) v = rng.complex_normal();
  return Polynomial(std::move(c));
}

inline MatrixPolynomial random_matpoly(Index n, int d, Rng& rng) {
  std::vector<CMatrix> c;
  for (int j = 0; j <= d; ++j) c.push_back(random_gaussian(n, n, rng));
  return MatrixPolynomial(std::move(c));
}

/// Distance from each expected value to the nearest computed one.
inline double match_distance(const std::vector<cplx>& got, const std::vector<cplx>& want) {
  if (got.size() != want.size()) return 1e300;
  double worst = 0.0;
  for (const cplx& w : want) {
    double best = 1e300;
    for (const cplx& g : got) best = std::min(best, std::abs(g - w));
    worst = std::max(worst, best);
  }
  return worst;
}

}  // namespace polystab::test
