#include "polystab/polarization.hpp"

#include <algorithm>

namespace polystab {

namespace {

double binomial(int n, int k) {
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Coefficients of prod (t + z_i) read from the top give s_0 .. s_kappa.
template <typename T>
std::vector<T> symmetric_products(const std::vector<T>& z, T one) {
  std::vector<T> e(z.size() + 1, one * 0.0);
  e[0] = one;
  for (std::size_t i = 0; i < z.size(); ++i) {
    for (std::size_t j = i + 1; j >= 1; --j) e[j] = e[j] + e[j - 1] * z[i];
  }
  return e;
}

}  // namespace

std::vector<cplx> elementary_symmetric_all(const std::vector<cplx>& z) {
  return symmetric_products<cplx>(z, 1.0);
}

cplx elementary_symmetric(int j, const std::vector<cplx>& z) {
  if (j < 0 || j > static_cast<int>(z.size())) {
    throw std::invalid_argument("elementary_symmetric: j must lie in [0, kappa]");
  }
  return elementary_symmetric_all(z)[j];
}

PolarizedPolynomial polarize(const MatrixPolynomial& p, int kappa) {
  if (kappa < p.degree()) throw std::invalid_argument("polarize: kappa must be at least the degree");
  if (kappa < 1 || kappa > kMaxKappa) throw std::invalid_argument("polarize: kappa must lie in [1, 8]");
  MultivariateMatrixPolynomial out(p.n(), kappa);
  for (unsigned mask = 0; mask < (1u << kappa); ++mask) {
    const int j = __builtin_popcount(mask);
    if (j > p.degree()) continue;
    MultivariateMatrixPolynomial::Exponent alpha(kappa);
    for (int i = 0; i < kappa; ++i) alpha[i] = (mask >> i) & 1u;
    out.add_term(alpha, p.coeffs()[j] / binomial(kappa, j));
  }
  return {p, kappa, std::move(out)};
}

MatrixPolynomial restrict_diagonal(const MultivariateMatrixPolynomial& p) {
  std::vector<CMatrix> c(1, CMatrix::Zero(p.n(), p.n()));
  for (const auto& [alpha, m] : p.terms()) {
    int total = 0;
    for (int a : alpha) total += a;
    if (static_cast<int>(c.size()) <= total) c.resize(total + 1, CMatrix::Zero(p.n(), p.n()));
    c[total] += m;
  }
  return MatrixPolynomial(std::move(c));
}

cplx gws_witness(const MultivariatePolynomial& p, const std::vector<cplx>& zeta, const Region& d) {
  if (static_cast<int>(zeta.size()) != p.arity()) throw std::invalid_argument("gws_witness: arity mismatch");
  if (!p.is_multi_affine()) throw std::invalid_argument("gws_witness: polynomial is not multi-affine");
  if (!p.is_symmetric()) throw std::invalid_argument("gws_witness: polynomial is not symmetric");
  if (d.kind != RegionKind::disc && d.kind != RegionKind::halfplane) {
    throw std::invalid_argument("gws_witness: region must be a disc or a half-plane");
  }
  for (const cplx& z : zeta) {
    if (region_contains(d, z) == Membership::outside) throw std::invalid_argument("gws_witness: point outside D");
  }
  const cplx v = p(zeta);
  const Polynomial q = p.diagonal() - Polynomial{v};
  if (q.is_zero()) return zeta[0];

  constexpr double kTol = 1e-6;
  bool found = false;
  cplx best = 0.0;
  double best_depth = 0.0;
  for (const cplx& r : roots(q).roots) {
    if (region_contains(d, r, kTol) == Membership::outside) continue;
    const double depth = signed_depth(d, r);
    const bool better = !found || depth > best_depth ||
                        (depth == best_depth && (r.real() < best.real() ||
                                                 (r.real() == best.real() && r.imag() < best.imag())));
    if (better) {
      found = true;
      best = r;
      best_depth = depth;
    }
  }
  if (!found) throw std::runtime_error("gws_witness: numerical anomaly, no diagonal root in D");
  return best;
}

DegreeTransform degree_transform(const MatrixPolynomial& p, int kappa, const std::vector<Polynomial>& subs,
                                 const Region& d) {
  if (static_cast<int>(subs.size()) != kappa) throw std::invalid_argument("degree_transform: need kappa substitutions");
  if (kappa < p.degree()) throw std::invalid_argument("degree_transform: kappa must be at least the degree");
  const std::vector<Polynomial> s = symmetric_products<Polynomial>(subs, Polynomial{1.0});

  int deg = 0;
  for (int j = 0; j <= p.degree(); ++j) deg = std::max(deg, s[j].degree());
  std::vector<CMatrix> c(deg + 1, CMatrix::Zero(p.n(), p.n()));
  for (int j = 0; j <= p.degree(); ++j) {
    const double w = 1.0 / binomial(kappa, j);
    for (int k = 0; k <= s[j].degree(); ++k) c[k] += (w * s[j][k]) * p.coeffs()[j];
  }

  std::vector<Region> parts;
  for (const auto& sub : subs) parts.push_back(Region::preimage_of(sub, d));
  Region e = parts.size() == 1 ? parts[0] : Region::intersection_of(std::move(parts));
  return {MatrixPolynomial(std::move(c)), std::move(e)};
}

}  // namespace polystab
