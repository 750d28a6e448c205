#include "polystab/polynomial.hpp"

#include <numeric>

namespace polystab {

Polynomial compose(const Polynomial& p, const Polynomial& q) {
  Polynomial acc = Polynomial::constant(p.leading());
  for (int j = p.degree() - 1; j >= 0; --j) acc = acc * q + Polynomial::constant(p[j]);
  return acc;
}

double relative_residual(const Polynomial& p, cplx r) {
  const double scale = p.max_abs() * std::pow(std::max(1.0, std::abs(r)), p.degree());
  if (scale == 0.0) return 0.0;
  return std::abs(p(r)) / scale;
}

namespace {

constexpr int kMaxSweeps = 200;

std::vector<cplx> aberth(const std::vector<cplx>& c) {
  const int d = static_cast<int>(c.size()) - 1;
  // Cauchy bound on root moduli.
  double bound = 0.0;
  for (int j = 0; j < d; ++j) bound = std::max(bound, std::abs(c[j] / c[d]));
  bound += 1.0;
  // Start inside the bound; geometric mean of root moduli is a better radius
  // when it is smaller.
  const double gm = std::pow(std::abs(c[0] / c[d]), 1.0 / d);
  const double radius = std::min(bound, std::max(gm, 1e-3));

  std::vector<cplx> z(d);
  for (int k = 0; k < d; ++k) z[k] = std::polar(radius, 2.0 * kPi * k / d + 0.4);

  std::vector<bool> done(d, false);
  for (int sweep = 0; sweep < kMaxSweeps; ++sweep) {
    bool all_done = true;
    for (int i = 0; i < d; ++i) {
      if (done[i]) continue;
      cplx pv = c[d];
      cplx dv = 0.0;
      for (int j = d - 1; j >= 0; --j) {
        dv = dv * z[i] + pv;
        pv = pv * z[i] + c[j];
      }
      if (pv == 0.0) {
        done[i] = true;
        continue;
      }
      cplx s = 0.0;
      for (int j = 0; j < d; ++j) {
        if (j != i) s += 1.0 / (z[i] - z[j]);
      }
      cplx denom = dv - pv * s;
      if (denom == 0.0) denom = cplx(1e-300, 0.0);
      const cplx w = pv / denom;
      z[i] -= w;
      if (std::abs(w) < 1e-14 * (1.0 + std::abs(z[i]))) {
        done[i] = true;
      } else {
        all_done = false;
      }
    }
    if (all_done) break;
  }
  return z;
}

std::vector<RootCluster> cluster(const std::vector<cplx>& rs) {
  std::vector<RootCluster> out;
  std::vector<cplx> sums;
  for (const cplx& r : rs) {
    bool merged = false;
    for (std::size_t k = 0; k < out.size(); ++k) {
      const double tol = 1e-7 * std::max(1.0, std::abs(out[k].center));
      if (std::abs(r - out[k].center) <= tol) {
        sums[k] += r;
        out[k].multiplicity += 1;
        out[k].center = sums[k] / double(out[k].multiplicity);
        merged = true;
        break;
      }
    }
    if (!merged) {
      out.push_back({r, 1});
      sums.push_back(r);
    }
  }
  return out;
}

}  // namespace

RootSet roots(const Polynomial& p) {
  if (p.is_zero()) throw std::invalid_argument("roots: zero polynomial");
  RootSet out;
  const auto& c = p.coeffs();
  std::size_t low = 0;
  while (c[low] == 0.0) ++low;
  for (std::size_t k = 0; k < low; ++k) out.roots.push_back(0.0);

  std::vector<cplx> q(c.begin() + static_cast<std::ptrdiff_t>(low), c.end());
  const int d = static_cast<int>(q.size()) - 1;
  if (d == 1) {
    out.roots.push_back(-q[0] / q[1]);
  } else if (d > 1) {
    for (const cplx& r : aberth(q)) out.roots.push_back(r);
  }
  out.residuals.reserve(out.roots.size());
  for (const cplx& r : out.roots) out.residuals.push_back(relative_residual(p, r));
  out.clusters = cluster(out.roots);
  return out;
}

namespace {

struct ContourWalk {
  const Polynomial& p;
  cplx center;
  double radius;
  double scale_floor = 0.0;

  cplx value(double t) const {
    const cplx z = center + std::polar(radius, t);
    const cplx v = p(z);
    double s = 0.0;
    const double az = std::abs(z);
    for (int j = p.degree(); j >= 0; --j) s = s * az + std::abs(p[j]);
    if (std::abs(v) <= 1e-12 * s) {
      throw std::domain_error("count_roots_in_disc: polynomial (nearly) vanishes on the contour");
    }
    return v;
  }

  double arc(double t0, double t1, cplx v0, cplx v1, int depth) const {
    const double step = std::arg(v1 / v0);
    if (std::abs(step) <= 0.25 || depth > 40) return step;
    const double tm = 0.5 * (t0 + t1);
    const cplx vm = value(tm);
    return arc(t0, tm, v0, vm, depth + 1) + arc(tm, t1, vm, v1, depth + 1);
  }
};

}  // namespace

int count_roots_in_disc(const Polynomial& p, cplx center, double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("count_roots_in_disc: radius must be positive");
  if (p.is_zero()) throw std::invalid_argument("count_roots_in_disc: zero polynomial");
  if (p.degree() == 0) return 0;
  const ContourWalk walk{p, center, radius};
  const int n = std::max(64, 16 * p.degree());
  double total = 0.0;
  double t_prev = 0.0;
  cplx v_prev = walk.value(0.0);
  const cplx v_start = v_prev;
  for (int k = 1; k <= n; ++k) {
    const double t = 2.0 * kPi * k / n;
    const cplx v = k == n ? v_start : walk.value(t);
    total += walk.arc(t_prev, t, v_prev, v, 0);
    t_prev = t;
    v_prev = v;
  }
  return static_cast<int>(std::lround(total / (2.0 * kPi)));
}

MultivariatePolynomial::MultivariatePolynomial(int arity) : arity_(arity) {
  if (arity < 1) throw std::invalid_argument("MultivariatePolynomial: arity must be >= 1");
}

void MultivariatePolynomial::add_term(const Exponent& alpha, cplx c) {
  if (static_cast<int>(alpha.size()) != arity_) {
    throw std::invalid_argument("MultivariatePolynomial: exponent arity mismatch");
  }
  for (int a : alpha) {
    if (a < 0) throw std::invalid_argument("MultivariatePolynomial: negative exponent");
  }
  if (c == 0.0) return;
  auto it = terms_.find(alpha);
  if (it == terms_.end()) {
    terms_.emplace(alpha, c);
    return;
  }
  it->second += c;
  if (it->second == 0.0) terms_.erase(it);
}

cplx MultivariatePolynomial::coefficient(const Exponent& alpha) const {
  auto it = terms_.find(alpha);
  return it == terms_.end() ? cplx(0.0) : it->second;
}

cplx MultivariatePolynomial::operator()(const std::vector<cplx>& z) const {
  if (static_cast<int>(z.size()) != arity_) {
    throw std::invalid_argument("mv_eval: tuple arity mismatch");
  }
  cplx acc = 0.0;
  for (const auto& [alpha, c] : terms_) {
    cplx m = c;
    for (int i = 0; i < arity_; ++i) {
      for (int e = 0; e < alpha[i]; ++e) m *= z[i];
    }
    acc += m;
  }
  return acc;
}

bool MultivariatePolynomial::is_multi_affine() const {
  for (const auto& [alpha, c] : terms_) {
    for (int a : alpha) {
      if (a > 1) return false;
    }
  }
  return true;
}

bool MultivariatePolynomial::is_symmetric(double tol) const {
  double scale = 0.0;
  for (const auto& [alpha, c] : terms_) scale = std::max(scale, std::abs(c));
  const double thr = tol * std::max(scale, 1e-300);

  auto invariant_under = [&](const std::vector<int>& perm) {
    for (const auto& [alpha, c] : terms_) {
      Exponent moved(alpha.size());
      for (std::size_t i = 0; i < alpha.size(); ++i) moved[perm[i]] = alpha[i];
      if (std::abs(coefficient(moved) - c) > thr) return false;
    }
    return true;
  };

  std::vector<int> ident(arity_);
  std::iota(ident.begin(), ident.end(), 0);
  if (arity_ <= 6) {
    for (int i = 0; i < arity_; ++i) {
      for (int j = i + 1; j < arity_; ++j) {
        std::vector<int> perm = ident;
        std::swap(perm[i], perm[j]);
        if (!invariant_under(perm)) return false;
      }
    }
    return true;
  }
  Rng rng(0x53594D, static_cast<std::uint64_t>(arity_));
  for (int trial = 0; trial < 64; ++trial) {
    std::vector<int> perm = ident;
    for (int i = arity_ - 1; i > 0; --i) {
      const int j = static_cast<int>(rng.uniform() * (i + 1));
      std::swap(perm[i], perm[std::min(j, i)]);
    }
    if (!invariant_under(perm)) return false;
  }
  return true;
}

Polynomial MultivariatePolynomial::diagonal() const {
  std::vector<cplx> c(1, 0.0);
  for (const auto& [alpha, v] : terms_) {
    const int deg = std::accumulate(alpha.begin(), alpha.end(), 0);
    if (static_cast<int>(c.size()) <= deg) c.resize(deg + 1, 0.0);
    c[deg] += v;
  }
  return Polynomial(std::move(c));
}

cplx mv_eval(const MultivariatePolynomial& p, const std::vector<cplx>& z) { return p(z); }

}  // namespace polystab
