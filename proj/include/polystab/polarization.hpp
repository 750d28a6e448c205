#pragma once

#include <vector>

#include "polystab/matrix_polynomial.hpp"

namespace polystab {

/// s_j(z_1, ..., z_kappa), with s_0 = 1. Throws when j is outside [0, kappa].
cplx elementary_symmetric(int j, const std::vector<cplx>& z);

/// Every s_0 .. s_kappa at once, by expanding prod (t + z_i).
std::vector<cplx> elementary_symmetric_all(const std::vector<cplx>& z);

/// Largest kappa accepted by polarize.
inline constexpr int kMaxKappa = 8;

struct PolarizedPolynomial {
  MatrixPolynomial base;
  int kappa;
  MultivariateMatrixPolynomial result;
};

/// T_kappa P = sum_j binom(kappa, j)^{-1} s_j(z) A_j, stored as one term per
/// subset of variables. Coefficients beyond the degree are zero.
PolarizedPolynomial polarize(const MatrixPolynomial& p, int kappa);

/// Sets every variable equal to lambda and collects by total degree.
MatrixPolynomial restrict_diagonal(const MultivariateMatrixPolynomial& p);

/// A point zeta_0 of D with p(zeta_0, ..., zeta_0) = p(zeta). p must be
/// symmetric and multi-affine, D a disc or half-plane, and no zeta_i
/// outside D. Throws std::runtime_error when no root of the diagonal
/// equation lands in D (tolerance 1e-6); that would be a numerical anomaly.
cplx gws_witness(const MultivariatePolynomial& p, const std::vector<cplx>& zeta, const Region& d);

struct DegreeTransform {
  MatrixPolynomial q;
  /// Intersection of the preimages p_j^{-1}(D).
  Region region;
};

/// Q(lambda) = (T_kappa P)(p_1(lambda), ..., p_kappa(lambda)).
DegreeTransform degree_transform(const MatrixPolynomial& p, int kappa, const std::vector<Polynomial>& subs,
                                 const Region& d);

}  // namespace polystab
