#include "polystab/matrix_polynomial.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace polystab {

Polynomial scalar_form(const MatrixPolynomial& p, const CVector& x, const CVector& y, double flush) {
  if (x.size() != p.n() || y.size() != p.n()) {
    throw std::invalid_argument("scalar_form: vector size does not match the polynomial");
  }
  const double ny = y.norm();
  std::vector<cplx> c(p.degree() + 1);
  for (int j = 0; j <= p.degree(); ++j) {
    const CVector ax = p.coeffs()[j] * x;
    const cplx v = y.dot(ax);  // conjugates y
    c[j] = std::abs(v) <= flush * ny * ax.norm() ? cplx(0.0) : v;
  }
  return Polynomial(std::move(c));
}

namespace {

struct Circle {
  double rho;
  double max_sample = 0.0;
  double scale = 0.0;  // (sum_j ||A_j|| rho^j)^n, the size of a generic det sample
  std::vector<cplx> c;  // interpolated coefficients
};

Circle interpolate_on(const MatrixPolynomial& p, const std::vector<double>& norms, double rho) {
  const int n = static_cast<int>(p.n());
  const int big_n = n * p.degree() + 1;
  Circle out;
  out.rho = rho;
  double s = 0.0;
  for (std::size_t j = 0; j < norms.size(); ++j) s += norms[j] * std::pow(rho, double(j));
  out.scale = std::pow(s, n);

  std::vector<cplx> samples(big_n);
  for (int k = 0; k < big_n; ++k) {
    const CMatrix m = p.eval(std::polar(rho, 2.0 * kPi * k / big_n));
    samples[k] = Eigen::PartialPivLU<CMatrix>(m).determinant();
    out.max_sample = std::max(out.max_sample, std::abs(samples[k]));
  }
  out.c.resize(big_n);
  for (int j = 0; j < big_n; ++j) {
    cplx acc = 0.0;
    for (int k = 0; k < big_n; ++k) acc += samples[k] * std::polar(1.0, -2.0 * kPi * double(j) * k / big_n);
    out.c[j] = acc / double(big_n) / std::pow(rho, double(j));
  }
  return out;
}

}  // namespace

DeterminantInterpolation interpolate_determinant(const MatrixPolynomial& p) {
  const int d = p.degree();
  std::vector<double> norms(d + 1);
  double sum = 0.0;
  for (int j = 0; j <= d; ++j) sum += norms[j] = spectral_norm(p.coeffs()[j]);
  int low = 0;
  while (norms[low] == 0.0) ++low;

  // One circle resolves only the coefficients whose terms dominate on it, so
  // sweep radii 2^m across the range the eigenvalue moduli can span and take
  // each coefficient from the circle where its noise floor is lowest.
  const double hi = std::max(1.0, sum / norms[d]);
  const double lo = std::max(1.0, sum / norms[low]);
  const int m_hi = static_cast<int>(std::ceil(std::log2(hi)));
  const int m_lo = -static_cast<int>(std::ceil(std::log2(lo)));
  std::vector<Circle> circles;
  for (int m = std::max(m_lo, -60); m <= std::min(m_hi, 60); ++m) {
    circles.push_back(interpolate_on(p, norms, std::ldexp(1.0, m)));
  }

  const int big_n = static_cast<int>(p.n()) * d + 1;
  DeterminantInterpolation out;
  out.rho = circles.back().rho;
  out.max_sample = circles.back().max_sample;
  out.raw.assign(big_n, 0.0);
  std::vector<cplx> flushed(big_n, 0.0);
  for (int j = 0; j < big_n; ++j) {
    double best = std::numeric_limits<double>::infinity();
    for (const Circle& c : circles) {
      const double floor = std::max(1e-10 * c.max_sample, 1e-14 * c.scale) / std::pow(c.rho, double(j));
      if (floor < best) {
        best = floor;
        out.raw[j] = c.c[j];
      }
    }
    flushed[j] = std::abs(out.raw[j]) < best ? cplx(0.0) : out.raw[j];
  }
  out.det = Polynomial(std::move(flushed));
  return out;
}

Polynomial determinant_polynomial(const MatrixPolynomial& p) { return interpolate_determinant(p).det; }

namespace {

double relative_sigma(const MatrixPolynomial& p, cplx z) {
  double scale = 0.0;
  for (int j = p.degree(); j >= 0; --j) scale = scale * std::abs(z) + spectral_norm(p.coeffs()[j]);
  return sigma_min(p.eval(z)) / std::max(scale, 1e-300);
}

// Newton on det P, with (det P)'/det P = tr(P^{-1} P'). Simple roots only;
// a step is kept only if it lowers the relative sigma_min.
void polish_eigenvalues(const MatrixPolynomial& p, const Polynomial& det, RootSet& rs) {
  if (p.degree() == 0) return;
  const MatrixPolynomial dp = derivative(p);
  for (RootCluster& cl : rs.clusters) {
    if (cl.multiplicity != 1) continue;
    for (std::size_t i = 0; i < rs.roots.size(); ++i) {
      if (rs.roots[i] != cl.center) continue;
      cplx z = rs.roots[i];
      double best = relative_sigma(p, z);
      for (int it = 0; it < 8 && best > 0.0; ++it) {
        const Eigen::PartialPivLU<CMatrix> lu(p.eval(z));
        const cplx t = lu.solve(dp.eval(z)).trace();
        if (t == 0.0 || !std::isfinite(std::abs(t))) break;
        const cplx next = z - 1.0 / t;
        const double s = relative_sigma(p, next);
        if (!(s < best)) break;
        const bool small = std::abs(next - z) <= 1e-15 * (1.0 + std::abs(z));
        z = next;
        best = s;
        if (small) break;
      }
      rs.roots[i] = z;
      rs.residuals[i] = relative_residual(det, z);
      cl.center = z;
      break;
    }
  }
}

}  // namespace

EigenReport eigenvalues(const MatrixPolynomial& p) {
  const DeterminantInterpolation di = interpolate_determinant(p);
  EigenReport r;
  r.det_poly = di.det;
  r.raw_coefficients = di.raw;
  r.regular = !di.det.is_zero();
  if (!r.regular) return r;
  r.eigenvalues = roots(di.det);
  polish_eigenvalues(p, di.det, r.eigenvalues);
  r.drop_in_degree = static_cast<int>(p.n()) * p.degree() - di.det.degree();
  return r;
}

StabilityVerdict is_stable(const MatrixPolynomial& p, const Region& d, double tol) {
  const EigenReport r = eigenvalues(p);
  if (!r.regular) throw std::domain_error("is_stable: matrix polynomial is not regular");
  return classify_points(r.eigenvalues.roots, d, tol);
}

MatrixPolynomial derivative(const MatrixPolynomial& p) {
  if (p.degree() == 0) throw std::invalid_argument("derivative: constant polynomial has zero derivative");
  std::vector<CMatrix> c;
  for (int j = 1; j <= p.degree(); ++j) c.push_back(double(j) * p.coeffs()[j]);
  return MatrixPolynomial(std::move(c));
}

bool entries_linearly_independent(const MatrixPolynomial& p, double tol) {
  const Index n = p.n();
  const int d = p.degree();
  CMatrix m(n * n, d + 1);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      for (int k = 0; k <= d; ++k) m(i * n + j, k) = p.coeffs()[k](i, j);
    }
  }
  if (d + 1 < n * n) return false;
  Eigen::JacobiSVD<CMatrix> svd(m);
  const auto& s = svd.singularValues();
  if (s(0) == 0.0) return false;
  Index rank = 0;
  for (Index k = 0; k < s.size(); ++k) {
    if (s(k) >= tol * s(0)) ++rank;
  }
  return rank == n * n;
}

NumericalRangeSample numerical_range_sample(const MatrixPolynomial& p, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("numerical_range_sample: count must be >= 1");
  NumericalRangeSample out;
  for (int i = 0; i < count; ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    const CVector x = random_unit_vector(p.n(), rng);
    std::vector<cplx> c(p.degree() + 1);
    double cmax = 0.0;
    for (int j = 0; j <= p.degree(); ++j) {
      c[j] = x.dot(p.coeffs()[j] * x);
      cmax = std::max(cmax, std::abs(c[j]));
    }
    if (cmax <= 1e-14) continue;
    // drop leading coefficients that are rounding noise
    while (c.size() > 1 && std::abs(c.back()) <= 1e-14 * cmax) c.pop_back();
    const Polynomial q(std::move(c));
    if (q.degree() == 0) continue;
    out.generators.push_back(x);
    for (const cplx& r : roots(q).roots) {
      out.points.push_back(r);
      out.generator.push_back(out.generators.size() - 1);
    }
  }
  return out;
}

double szasz_bound(const MatrixPolynomial& p, cplx z) {
  const CMatrix id = CMatrix::Identity(p.n(), p.n());
  if (spectral_norm(p.coeff(0) - id) > 1e-12) {
    throw std::invalid_argument("szasz_bound: constant coefficient must be the identity");
  }
  const CMatrix a1 = p.coeff(1);
  const CMatrix a2 = p.coeff(2);
  const double az2 = std::norm(z);
  const double na1 = spectral_norm(a1);
  const CMatrix x = z * a1 - az2 * a2;
  return 2.0 * std::exp(lambda_h(x) + 0.5 * az2 * na1 * na1);
}

// ------------------------------------------------------------ multivariate

MultivariateMatrixPolynomial::MultivariateMatrixPolynomial(Index n, int arity) : n_(n), arity_(arity) {
  if (n < 1) throw std::invalid_argument("MultivariateMatrixPolynomial: n must be >= 1");
  if (arity < 1) throw std::invalid_argument("MultivariateMatrixPolynomial: arity must be >= 1");
}

void MultivariateMatrixPolynomial::add_term(const Exponent& alpha, const CMatrix& m) {
  if (static_cast<int>(alpha.size()) != arity_) throw std::invalid_argument("add_term: exponent arity mismatch");
  if (m.rows() != n_ || m.cols() != n_) throw std::invalid_argument("add_term: coefficient size mismatch");
  for (int a : alpha) {
    if (a < 0) throw std::invalid_argument("add_term: negative exponent");
  }
  if (m.isZero(0)) return;
  auto it = terms_.find(alpha);
  if (it == terms_.end()) {
    terms_.emplace(alpha, m);
    return;
  }
  it->second += m;
  if (it->second.isZero(0)) terms_.erase(it);
}

CMatrix MultivariateMatrixPolynomial::coefficient(const Exponent& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? CMatrix(CMatrix::Zero(n_, n_)) : it->second;
}

namespace {

cplx monomial(const std::vector<int>& alpha, const std::vector<cplx>& z) {
  cplx m = 1.0;
  for (std::size_t i = 0; i < alpha.size(); ++i) {
    for (int e = 0; e < alpha[i]; ++e) m *= z[i];
  }
  return m;
}

}  // namespace

CMatrix MultivariateMatrixPolynomial::eval(const std::vector<cplx>& z) const {
  if (static_cast<int>(z.size()) != arity_) throw std::invalid_argument("mv_eval_matrix: tuple arity mismatch");
  CMatrix acc = CMatrix::Zero(n_, n_);
  for (const auto& [alpha, m] : terms_) acc += monomial(alpha, z) * m;
  return acc;
}

double MultivariateMatrixPolynomial::scale_at(const std::vector<cplx>& z) const {
  double s = 0.0;
  for (const auto& [alpha, m] : terms_) s += spectral_norm(m) * std::abs(monomial(alpha, z));
  return s;
}

MatrixPolynomial MultivariateMatrixPolynomial::restrict_to(int k, const std::vector<cplx>& z) const {
  if (k < 0 || k >= arity_) throw std::invalid_argument("restrict_to: variable index out of range");
  std::vector<CMatrix> c(1, CMatrix::Zero(n_, n_));
  for (const auto& [alpha, m] : terms_) {
    std::vector<int> rest = alpha;
    const int e = rest[k];
    rest[k] = 0;
    if (static_cast<int>(c.size()) <= e) c.resize(e + 1, CMatrix::Zero(n_, n_));
    c[e] += monomial(rest, z) * m;
  }
  return MatrixPolynomial(std::move(c));
}

MultivariatePolynomial MultivariateMatrixPolynomial::scalar_form(const CVector& x, const CVector& y) const {
  MultivariatePolynomial out(arity_);
  for (const auto& [alpha, m] : terms_) out.add_term(alpha, y.dot(m * x));
  return out;
}

StabilityVerdict mv_stability_sample(const MultivariateMatrixPolynomial& p, const Region& region, int count,
                                     std::uint64_t seed) {
  const Region* dp = &region;
  if (region.kind == RegionKind::power) {
    if (region.kappa != p.arity()) throw std::invalid_argument("mv_stability_sample: power does not match arity");
    dp = &region.parts[0];
  }
  const Region& d = *dp;
  constexpr double kWitness = 1e-10;

  StabilityVerdict v;
  v.evidence_only = true;
  v.min_sigma = std::numeric_limits<double>::infinity();

  struct Sample {
    double rel;
    std::vector<cplx> z;
  };
  std::vector<Sample> best;

  auto relative_sigma = [&](const std::vector<cplx>& z) {
    const double scale = p.scale_at(z);
    const double s = sigma_min(p.eval(z));
    return scale > 0.0 ? s / scale : s;
  };
  auto witness = [&](const std::vector<cplx>& z, double rel, const char* how) {
    v.outcome = Outcome::violated;
    v.evidence_only = false;
    v.witness = z;
    v.min_sigma = rel;
    v.detail = how;
  };

  for (int i = 0; i < count; ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    std::vector<cplx> z(p.arity());
    for (auto& zi : z) zi = sample_point(d, rng);
    const double rel = relative_sigma(z);
    if (rel <= kWitness) {
      witness(z, rel, "singular sample");
      return v;
    }
    if (rel < v.min_sigma) {
      v.min_sigma = rel;
      v.witness = z;
    }
    best.push_back({rel, z});
    std::sort(best.begin(), best.end(), [](const Sample& a, const Sample& b) { return a.rel < b.rel; });
    if (best.size() > 4) best.pop_back();
  }

  for (const Sample& s : best) {
    for (int k = 0; k < p.arity(); ++k) {
      EigenReport rep;
      try {
        rep = eigenvalues(p.restrict_to(k, s.z));
      } catch (const std::invalid_argument&) {
        continue;  // restriction vanishes identically
      }
      if (!rep.regular) continue;
      for (const cplx& e : rep.eigenvalues.roots) {
        if (excludes(d, e)) continue;
        std::vector<cplx> z = s.z;
        z[k] = e;
        const double rel = relative_sigma(z);
        if (rel <= kWitness) {
          witness(z, rel, "line search along one coordinate");
          return v;
        }
      }
    }
  }
  std::ostringstream os;
  os << "no singular point among " << count << " samples; min relative sigma " << v.min_sigma;
  v.detail = os.str();
  return v;
}

}  // namespace polystab
