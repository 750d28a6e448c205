#pragma once

#include <map>
#include <stdexcept>
#include <vector>

#include "polystab/numeric.hpp"
#include "polystab/polynomial.hpp"
#include "polystab/region.hpp"
#include "polystab/stability.hpp"

namespace polystab {

/// P(lambda) = sum_j lambda^j A_j with square n x n coefficients.
///
/// Trailing coefficients that are exactly zero are dropped; the zero
/// polynomial is rejected.
template <typename Scalar>
class BasicMatrixPolynomial {
 public:
  using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

  explicit BasicMatrixPolynomial(std::vector<Matrix> coeffs) : a_(std::move(coeffs)) {
    if (a_.empty()) throw std::invalid_argument("MatrixPolynomial: no coefficients");
    const Index n = a_[0].rows();
    if (n < 1) throw std::invalid_argument("MatrixPolynomial: empty coefficient");
    for (const auto& m : a_) {
      if (m.rows() != n || m.cols() != n) {
        throw std::invalid_argument("MatrixPolynomial: coefficients must be square and of equal size");
      }
      if (!m.allFinite()) throw std::invalid_argument("MatrixPolynomial: non-finite coefficient");
    }
    while (a_.size() > 1 && a_.back().isZero(0)) a_.pop_back();
    if (a_.size() == 1 && a_[0].isZero(0)) throw std::invalid_argument("MatrixPolynomial: zero polynomial");
  }

  Index n() const { return a_[0].rows(); }
  int degree() const { return static_cast<int>(a_.size()) - 1; }
  const std::vector<Matrix>& coeffs() const { return a_; }

  /// A_j, or the zero matrix beyond the degree.
  Matrix coeff(int j) const {
    if (j >= 0 && j <= degree()) return a_[j];
    return Matrix::Zero(n(), n());
  }

  template <typename T>
  auto eval(const T& z) const {
    using R = decltype(Scalar() * z);
    using M = Eigen::Matrix<R, Eigen::Dynamic, Eigen::Dynamic>;
    M acc = a_.back().template cast<R>();
    for (int j = degree() - 1; j >= 0; --j) {
      M next = acc * z;
      next += a_[j].template cast<R>();
      acc = std::move(next);
    }
    return acc;
  }

  BasicMatrixPolynomial operator*(Scalar s) const {
    std::vector<Matrix> c = a_;
    for (auto& m : c) m *= s;
    return BasicMatrixPolynomial(std::move(c));
  }

  /// L * P(lambda) * R.
  BasicMatrixPolynomial sandwich(const Matrix& left, const Matrix& right) const {
    std::vector<Matrix> c;
    c.reserve(a_.size());
    for (const auto& m : a_) c.push_back(left * m * right);
    return BasicMatrixPolynomial(std::move(c));
  }

 private:
  std::vector<Matrix> a_;
};

using MatrixPolynomial = BasicMatrixPolynomial<cplx>;

inline CMatrix eval_matrix(const MatrixPolynomial& p, cplx z) { return p.eval(z); }

/// Scalar polynomial y^H P(lambda) x. Coefficients with
/// |y^H A_j x| <= flush * ||y|| ||A_j x|| are set to exactly zero so that
/// orthogonality used by certificate constructions survives rounding.
Polynomial scalar_form(const MatrixPolynomial& p, const CVector& x, const CVector& y,
                       double flush = 1e-12);

struct DeterminantInterpolation {
  std::vector<cplx> raw;       // interpolated coefficients before flushing
  Polynomial det;              // flushed; zero when P is numerically singular
  double max_sample = 0.0;     // largest |det P| on the interpolation circle
  double rho = 1.0;            // interpolation radius
};

/// det P(lambda) by evaluation at n*d+1 points rho*e^{2 pi i k/N} and an
/// inverse DFT. A coefficient is flushed when |c_j| rho^j falls below
/// 1e-10 * max sample.
DeterminantInterpolation interpolate_determinant(const MatrixPolynomial& p);
Polynomial determinant_polynomial(const MatrixPolynomial& p);

struct EigenReport {
  bool regular = false;
  Polynomial det_poly;
  std::vector<cplx> raw_coefficients;
  RootSet eigenvalues;
  /// n*d - deg det P; a proxy for eigenvalues at infinity.
  int drop_in_degree = 0;
};

EigenReport eigenvalues(const MatrixPolynomial& p);

/// Throws std::domain_error for an irregular polynomial.
StabilityVerdict is_stable(const MatrixPolynomial& p, const Region& d, double tol = kBoundaryTol);

/// Coefficientwise derivative. Throws when the result would be zero.
MatrixPolynomial derivative(const MatrixPolynomial& p);

/// Treats the n^2 entries as coefficient vectors in lambda and checks that
/// they have full rank n^2 (singular values >= tol * largest).
bool entries_linearly_independent(const MatrixPolynomial& p, double tol = 1e-10);

struct NumericalRangeSample {
  std::vector<cplx> points;
  /// generator[i] indexes `generators` for points[i].
  std::vector<std::size_t> generator;
  std::vector<CVector> generators;
};

/// Roots of x^H P(lambda) x for `count` seeded unit vectors x.
NumericalRangeSample numerical_range_sample(const MatrixPolynomial& p, int count, std::uint64_t seed);

/// 2 exp(lambda_H(z A_1 - |z|^2 A_2) + |z|^2 ||A_1||^2 / 2). Requires A_0 = I.
double szasz_bound(const MatrixPolynomial& p, cplx z);

/// Sparse map from exponent tuples to n x n coefficients.
class MultivariateMatrixPolynomial {
 public:
  using Exponent = std::vector<int>;

  MultivariateMatrixPolynomial(Index n, int arity);

  Index n() const { return n_; }
  int arity() const { return arity_; }
  const std::map<Exponent, CMatrix>& terms() const { return terms_; }

  /// Adds z^alpha * m; zero results are not stored.
  void add_term(const Exponent& alpha, const CMatrix& m);
  CMatrix coefficient(const Exponent& alpha) const;

  CMatrix eval(const std::vector<cplx>& z) const;
  /// sum_alpha ||A_alpha|| |z|^alpha, the natural scale for sigma_min(P(z)).
  double scale_at(const std::vector<cplx>& z) const;
  /// Fixes every coordinate except `k` and returns the univariate
  /// polynomial in z_k.
  MatrixPolynomial restrict_to(int k, const std::vector<cplx>& z) const;
  /// y^H P(z) x as a scalar multivariate polynomial.
  MultivariatePolynomial scalar_form(const CVector& x, const CVector& y) const;

 private:
  Index n_;
  int arity_;
  std::map<Exponent, CMatrix> terms_;
};

inline CMatrix mv_eval_matrix(const MultivariateMatrixPolynomial& p, const std::vector<cplx>& z) {
  return p.eval(z);
}

/// Sampling evidence for stability on D^kappa: seeded uniform tuples in D
/// (truncated for unbounded D), then eigenvalue line searches along each
/// coordinate from the best samples. A relative sigma_min <= 1e-10 is a
/// witness. Without a witness the verdict is `holds` with evidence_only.
StabilityVerdict mv_stability_sample(const MultivariateMatrixPolynomial& p, const Region& d, int count,
                                     std::uint64_t seed);

}  // namespace polystab
