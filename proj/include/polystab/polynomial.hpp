#pragma once

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <map>
#include <stdexcept>
#include <vector>

#include "polystab/numeric.hpp"

namespace polystab {

/// Dense univariate polynomial c_0 + c_1 z + ... + c_d z^d.
///
/// Coefficients are stored in ascending order with exact trailing zeros
/// trimmed, so degree() is the true degree. The zero polynomial is stored as
/// the single coefficient 0 and reports degree 0; use is_zero() to tell it
/// apart from nonzero constants.
template <typename Scalar>
class BasicPolynomial {
 public:
  using scalar_type = Scalar;

  BasicPolynomial() : c_(1, Scalar(0)) {}
  BasicPolynomial(std::initializer_list<Scalar> ascending) : c_(ascending) { trim(); }
  explicit BasicPolynomial(std::vector<Scalar> ascending) : c_(std::move(ascending)) { trim(); }

  static BasicPolynomial constant(Scalar v) { return BasicPolynomial(std::vector<Scalar>{v}); }
  static BasicPolynomial monomial(int k, Scalar v = Scalar(1)) {
    std::vector<Scalar> c(static_cast<std::size_t>(k) + 1, Scalar(0));
    c.back() = v;
    return BasicPolynomial(std::move(c));
  }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.size() == 1 && c_[0] == Scalar(0); }
  const std::vector<Scalar>& coeffs() const { return c_; }
  Scalar operator[](int j) const { return j >= 0 && j <= degree() ? c_[j] : Scalar(0); }
  Scalar leading() const { return c_.back(); }

  /// Horner evaluation.
  template <typename T>
  auto operator()(const T& z) const {
    using R = decltype(Scalar() * z);
    R acc = R(c_.back());
    for (int j = degree() - 1; j >= 0; --j) acc = acc * z + R(c_[j]);
    return acc;
  }

  BasicPolynomial derivative() const {
    if (degree() == 0) return BasicPolynomial();
    std::vector<Scalar> d(c_.size() - 1);
    for (std::size_t j = 1; j < c_.size(); ++j) d[j - 1] = Scalar(double(j)) * c_[j];
    return BasicPolynomial(std::move(d));
  }

  /// Largest coefficient modulus.
  double max_abs() const {
    double m = 0.0;
    for (const auto& v : c_) m = std::max(m, double(std::abs(v)));
    return m;
  }

  friend BasicPolynomial operator+(const BasicPolynomial& a, const BasicPolynomial& b) {
    std::vector<Scalar> c(std::max(a.c_.size(), b.c_.size()), Scalar(0));
    for (std::size_t j = 0; j < a.c_.size(); ++j) c[j] += a.c_[j];
    for (std::size_t j = 0; j < b.c_.size(); ++j) c[j] += b.c_[j];
    return BasicPolynomial(std::move(c));
  }
  friend BasicPolynomial operator-(const BasicPolynomial& a) { return a * Scalar(-1); }
  friend BasicPolynomial operator-(const BasicPolynomial& a, const BasicPolynomial& b) { return a + (-b); }
  friend BasicPolynomial operator*(const BasicPolynomial& a, const BasicPolynomial& b) {
    std::vector<Scalar> c(a.c_.size() + b.c_.size() - 1, Scalar(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return BasicPolynomial(std::move(c));
  }
  friend BasicPolynomial operator*(const BasicPolynomial& a, Scalar s) {
    std::vector<Scalar> c = a.c_;
    for (auto& v : c) v *= s;
    return BasicPolynomial(std::move(c));
  }
  friend BasicPolynomial operator*(Scalar s, const BasicPolynomial& a) { return a * s; }
  friend bool operator==(const BasicPolynomial& a, const BasicPolynomial& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    if (c_.empty()) c_.push_back(Scalar(0));
    while (c_.size() > 1 && c_.back() == Scalar(0)) c_.pop_back();
  }

  std::vector<Scalar> c_;
};

using Polynomial = BasicPolynomial<cplx>;

inline cplx eval(const Polynomial& p, cplx z) { return p(z); }
inline Polynomial derivative(const Polynomial& p) { return p.derivative(); }

/// Compose p(q(z)).
Polynomial compose(const Polynomial& p, const Polynomial& q);

struct RootCluster {
  cplx center;
  int multiplicity = 1;
};

struct RootSet {
  std::vector<cplx> roots;
  /// |p(r)| / (max|c_j| * max(1,|r|)^d) per root.
  std::vector<double> residuals;
  std::vector<RootCluster> clusters;

  std::size_t size() const { return roots.size(); }
  double max_residual() const {
    double m = 0.0;
    for (double r : residuals) m = std::max(m, r);
    return m;
  }
};

/// All roots of p by Aberth-Ehrlich iteration. Exact zero roots are split
/// off first. Throws for the zero polynomial; constants give an empty set.
RootSet roots(const Polynomial& p);

/// Scaled residual used by RootSet.
double relative_residual(const Polynomial& p, cplx r);

/// Winding number of p around the circle |z - center| = radius, by adaptive
/// sampling of arg p. Throws std::domain_error when |p| nearly vanishes on
/// the contour (relative to sum |c_j||z|^j, threshold 1e-12).
int count_roots_in_disc(const Polynomial& p, cplx center, double radius);

/// Sparse polynomial in kappa variables.
class MultivariatePolynomial {
 public:
  using Exponent = std::vector<int>;

  explicit MultivariatePolynomial(int arity);

  int arity() const { return arity_; }
  const std::map<Exponent, cplx>& terms() const { return terms_; }

  /// Adds c * z^alpha; entries that cancel to exactly zero are dropped.
  void add_term(const Exponent& alpha, cplx c);
  cplx coefficient(const Exponent& alpha) const;

  cplx operator()(const std::vector<cplx>& z) const;

  bool is_multi_affine() const;
  /// Coefficients agree under variable transpositions (all of them for
  /// arity <= 6, seeded random permutations beyond) within tol * max|c|.
  bool is_symmetric(double tol = 1e-12) const;
  /// p(t, t, ..., t).
  Polynomial diagonal() const;

 private:
  int arity_;
  std::map<Exponent, cplx> terms_;
};

cplx mv_eval(const MultivariatePolynomial& p, const std::vector<cplx>& z);

}  // namespace polystab
