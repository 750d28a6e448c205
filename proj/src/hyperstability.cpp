#include "polystab/hyperstability.hpp"

#include <atomic>
#include <sstream>
#include <thread>

namespace polystab {

std::optional<Certificate> verify_certificate(const MatrixPolynomial& p, const CVector& x, const CVector& y,
                                              const Region& d, double tol, const std::string& method) {
  const double ny = y.norm();
  if (!(ny > 0.0) || !std::isfinite(ny)) return std::nullopt;
  const CVector yn = y / ny;
  Polynomial s = scalar_form(p, x, yn);
  if (s.is_zero()) return std::nullopt;
  RootSet rs = roots(s);
  if (!classify_points(rs.roots, d, tol).holds()) return std::nullopt;
  return Certificate{x, yn, std::move(s), std::move(rs), d, method};
}

namespace {

CMatrix columns(const std::vector<CVector>& vs, Index n) {
  CMatrix m(n, static_cast<Index>(vs.size()));
  for (std::size_t k = 0; k < vs.size(); ++k) m.col(static_cast<Index>(k)) = vs[k];
  return m;
}

// Minimum-norm least-squares coefficients of v in the span of `basis`.
CVector ls_coefficients(const CVector& v, const std::vector<CVector>& basis) {
  if (basis.empty()) return CVector(0);
  const CMatrix m = columns(basis, v.size());
  double scale = 0.0;
  for (const auto& b : basis) scale = std::max(scale, b.norm());
  if (scale == 0.0) return CVector::Zero(static_cast<Index>(basis.size()));
  Eigen::CompleteOrthogonalDecomposition<CMatrix> cod(m);
  cod.setThreshold(1e-13);
  return cod.solve(v);
}

CVector orth_residual(const CVector& v, const std::vector<CVector>& basis) {
  if (basis.empty()) return v;
  const CVector c = ls_coefficients(v, basis);
  return v - columns(basis, v.size()) * c;
}

bool usable(const CVector& r, double ref) { return r.norm() > 1e-12 * std::max(ref, 1e-300); }

// Shared bookkeeping for one x: verifies candidates against a budget.
class Search {
 public:
  Search(const MatrixPolynomial& p, const CVector& x, const Region& d, double tol, int budget)
      : p_(p), x_(x), d_(d), tol_(tol), budget_(budget) {}

  bool found() const { return result_.found(); }
  bool done() const { return found() || exhausted(); }
  bool exhausted() const { return budget_ >= 0 && result_.candidates_tried >= budget_; }

  bool attempt(const CVector& y, const std::string& method) {
    if (done()) return result_.found();
    if (!(y.norm() > 0.0)) return false;
    ++result_.candidates_tried;
    auto cert = verify_certificate(p_, x_, y, d_, tol_, method);
    if (cert) result_.certificate = std::move(cert);
    return result_.found();
  }

  void note(const std::string& s) {
    if (!result_.diagnostic.empty()) result_.diagnostic += "; ";
    result_.diagnostic += s;
  }

  const MatrixPolynomial& poly() const { return p_; }
  const CVector& x() const { return x_; }
  const Region& region() const { return d_; }
  double tol() const { return tol_; }
  CertificateSearch take() { return std::move(result_); }

 private:
  const MatrixPolynomial& p_;
  const CVector& x_;
  const Region& d_;
  double tol_;
  int budget_;
  CertificateSearch result_;
};

// P(lambda) x = sum_g m_g(lambda) v_g.
struct Group {
  CVector v;
  Polynomial m;
  std::string name;
};

std::string poly_text(const Polynomial& p) {
  std::ostringstream os;
  os << "[";
  for (int j = 0; j <= p.degree(); ++j) {
    if (j) os << ", ";
    os << p[j].real();
    if (p[j].imag() != 0.0) os << (p[j].imag() < 0 ? "-" : "+") << std::abs(p[j].imag()) << "i";
  }
  os << "]";
  return os.str();
}

// The case analysis shared by every structural variant: the designated
// group k either has a component orthogonal to the others, or it is a
// combination of them; then one of the factor polynomials m_j + c_j m_k is
// D-stable and y is chosen orthogonal to the remaining vectors, falling back
// to the collinear choices y = v_i.
void structural_engine(Search& s, const std::vector<Group>& groups, std::size_t k, const std::string& label) {
  std::vector<CVector> others;
  std::vector<std::size_t> idx;
  for (std::size_t j = 0; j < groups.size(); ++j) {
    if (j == k) continue;
    others.push_back(groups[j].v);
    idx.push_back(j);
  }
  const CVector& vk = groups[k].v;
  double ref = vk.norm();
  for (const auto& o : others) ref = std::max(ref, o.norm());

  const CVector r = orth_residual(vk, others);
  if (usable(r, ref)) {
    if (s.attempt(r, label + ":orthogonal")) return;
  }
  if (s.done()) return;

  const CVector c = ls_coefficients(vk, others);
  bool any_stable = false;
  std::string factors;
  for (std::size_t t = 0; t < idx.size(); ++t) {
    const Group& g = groups[idx[t]];
    const Polynomial f = g.m + c(static_cast<Index>(t)) * groups[k].m;
    if (!factors.empty()) factors += ", ";
    factors += g.name + " factor " + poly_text(f);
    if (f.is_zero() || !is_stable_scalar(f, s.region(), s.tol()).holds()) {
      factors += " not stable";
      continue;
    }
    factors += " stable";
    any_stable = true;
    std::vector<CVector> rest;
    for (std::size_t u = 0; u < idx.size(); ++u) {
      if (u != t) rest.push_back(others[u]);
    }
    const CVector rj = orth_residual(g.v, rest);
    if (usable(rj, ref) && s.attempt(rj, label + ":factor-" + g.name)) return;
    for (const CVector& other : rest) {
      if (s.attempt(other, label + ":collinear")) return;
    }
    if (s.attempt(g.v, label + ":collinear")) return;
    if (s.done()) return;
  }
  s.note(label + ": " + (any_stable ? "no verified y in the stable branch (" : "no D-stable factor (") + factors + ")");
}

void require_excluded(const Region& d, cplx z, double tol, const char* what) {
  if (!excludes(d, z, tol)) {
    throw std::invalid_argument(std::string(what) + ": region must exclude the point required by this variant");
  }
}

std::vector<Group> quadratic_groups(const MatrixPolynomial& p, const CVector& x) {
  return {{p.coeff(0) * x, Polynomial{1.0}, "A0x"},
          {p.coeff(1) * x, Polynomial{0.0, 1.0}, "A1x"},
          {p.coeff(2) * x, Polynomial{0.0, 0.0, 1.0}, "A2x"}};
}

bool palindromic_cubic_shape(const MatrixPolynomial& p) {
  double scale = 0.0;
  for (const auto& a : p.coeffs()) scale = std::max(scale, a.norm());
  return p.degree() == 3 && (p.coeff(3) - p.coeff(0)).norm() <= 1e-12 * scale;
}

std::vector<Group> cubic_groups(const MatrixPolynomial& p, const CVector& x, bool shape) {
  if (shape) {
    return {{p.coeff(0) * x, Polynomial{1.0, 0.0, 0.0, 1.0}, "A0x"},
            {p.coeff(1) * x, Polynomial{0.0, 1.0}, "A1x"},
            {p.coeff(2) * x, Polynomial{0.0, 0.0, 1.0}, "A2x"}};
  }
  return {{p.coeff(0) * x, Polynomial{1.0}, "A0x"},
          {p.coeff(1) * x, Polynomial{0.0, 1.0}, "A1x"},
          {p.coeff(2) * x, Polynomial{0.0, 0.0, 1.0}, "A2x"},
          {p.coeff(3) * x, Polynomial{0.0, 0.0, 0.0, 1.0}, "A3x"}};
}

const char* variant_name(Variant v) {
  switch (v) {
    case Variant::a:
      return "a";
    case Variant::b:
      return "b";
    default:
      return "c";
  }
}

void check_x(const MatrixPolynomial& p, const CVector& x) {
  if (x.size() != p.n()) throw std::invalid_argument("x has the wrong dimension");
  if (!(x.norm() > 0.0)) throw std::invalid_argument("x must be nonzero");
}

void quadratic_into(Search& s, Variant variant) {
  const auto groups = quadratic_groups(s.poly(), s.x());
  const std::size_t k = variant == Variant::a ? 0 : variant == Variant::b ? 1 : 2;
  structural_engine(s, groups, k, std::string("quadratic-") + variant_name(variant));
}

void cubic_into(Search& s, Variant variant) {
  const bool shape = palindromic_cubic_shape(s.poly());
  const auto groups = cubic_groups(s.poly(), s.x(), shape);
  const std::size_t k = variant == Variant::a ? 0 : variant == Variant::b ? 1 : 2;
  structural_engine(s, groups, k, std::string("cubic-") + variant_name(variant));
}

const std::vector<cplx>& cube_roots_of_minus_one() {
  static const std::vector<cplx> pts{cplx(-1.0, 0.0), std::polar(1.0, kPi / 3.0), std::polar(1.0, -kPi / 3.0)};
  return pts;
}

}  // namespace

SpanDecomposition span_decompose(const CVector& w, const CVector& u, const CVector& v, double tol) {
  if (w.size() != u.size() || w.size() != v.size()) throw std::invalid_argument("span_decompose: size mismatch");
  if (w.norm() == 0.0 && u.norm() == 0.0 && v.norm() == 0.0) {
    throw std::invalid_argument("span_decompose: all vectors are zero");
  }
  SpanDecomposition out;
  const CVector c = ls_coefficients(w, {u, v});
  out.alpha = c(0);
  out.beta = c(1);
  const double nw = w.norm();
  out.residual = nw == 0.0 ? 0.0 : (w - out.alpha * u - out.beta * v).norm() / nw;
  out.dependent = out.residual <= tol;
  return out;
}

CertificateSearch structural_certificate_quadratic(const MatrixPolynomial& p, const CVector& x, const Region& d,
                                                   Variant variant, double tol) {
  if (p.degree() != 2) throw std::invalid_argument("structural_certificate_quadratic: degree 2 required");
  check_x(p, x);
  if (variant != Variant::a) require_excluded(d, 0.0, tol, "structural_certificate_quadratic");
  Search s(p, x, d, tol, -1);
  quadratic_into(s, variant);
  return s.take();
}

CertificateSearch structural_certificate_cubic(const MatrixPolynomial& p, const CVector& x, const Region& d,
                                               Variant variant, double tol) {
  if (p.degree() != 3) throw std::invalid_argument("structural_certificate_cubic: degree 3 required");
  check_x(p, x);
  if (variant == Variant::a) {
    if (!palindromic_cubic_shape(p)) {
      throw std::invalid_argument("structural_certificate_cubic: variant a needs A3 = A0");
    }
    for (const cplx& z : cube_roots_of_minus_one()) require_excluded(d, z, tol, "structural_certificate_cubic");
  } else {
    require_excluded(d, 0.0, tol, "structural_certificate_cubic");
  }
  Search s(p, x, d, tol, -1);
  cubic_into(s, variant);
  return s.take();
}

std::optional<PencilForm> pencil_form_detect(const MatrixPolynomial& p, double tol) {
  const int d = p.degree();
  const auto& a = p.coeffs();
  std::vector<double> norms(d + 1);
  double nmax = 0.0;
  for (int j = 0; j <= d; ++j) nmax = std::max(nmax, norms[j] = a[j].norm());

  // first basis matrix: the largest coefficient (highest index on ties)
  int i1 = 0;
  for (int j = 0; j <= d; ++j) {
    if (norms[j] >= norms[i1]) i1 = j;
  }
  const Index nn = p.n() * p.n();
  auto vec = [&](const CMatrix& m) { return CVector(Eigen::Map<const CVector>(m.data(), nn)); };
  const CVector b1 = vec(a[i1]);
  int i2 = -1;
  double best = tol * nmax;
  for (int j = 0; j <= d; ++j) {
    if (j == i1) continue;
    const CVector vj = vec(a[j]);
    const cplx proj = b1.dot(vj) / b1.squaredNorm();
    const double r = (vj - proj * b1).norm();
    if (r > best) {
      best = r;
      i2 = j;
    }
  }

  std::vector<CVector> basis{b1};
  if (i2 >= 0) basis.push_back(vec(a[i2]));
  std::vector<cplx> pc(d + 1, 0.0);
  std::vector<cplx> qc(d + 1, 0.0);
  for (int j = 0; j <= d; ++j) {
    const CVector vj = vec(a[j]);
    const CVector c = ls_coefficients(vj, basis);
    CVector fit = c(0) * basis[0];
    if (basis.size() > 1) fit += c(1) * basis[1];
    if ((vj - fit).norm() > tol * std::max(nmax, 1e-300)) return std::nullopt;
    pc[j] = c(0);
    if (basis.size() > 1) qc[j] = c(1);
  }
  // rounding noise in exact zero slots
  for (auto& v : pc) {
    if (std::abs(v) <= 1e-14) v = 0.0;
  }
  for (auto& v : qc) {
    if (std::abs(v) <= 1e-14) v = 0.0;
  }
  PencilForm f{Polynomial(pc), Polynomial(qc), a[i1], i2 >= 0 ? a[i2] : CMatrix(CMatrix::Zero(p.n(), p.n()))};
  const cplx lp = f.p.leading();
  f.p = f.p * (1.0 / lp);
  f.a *= lp;
  if (!f.q.is_zero()) {
    const cplx lq = f.q.leading();
    f.q = f.q * (1.0 / lq);
    f.b *= lq;
    if (f.q.degree() > f.p.degree()) {
      std::swap(f.p, f.q);
      std::swap(f.a, f.b);
    }
  }
  return f;
}

namespace {

// y candidates from a Schur triangularisation of p A + q B.
struct Triangular {
  CMatrix u;        // unitary Schur factor
  CMatrix y_basis;  // columns C^{-H} U e_r
};

std::optional<Triangular> triangularise(const PencilForm& f) {
  const Index n = f.a.rows();
  const std::vector<cplx> shifts{0.0, 1.0, -1.0, cplx(0.0, 1.0), cplx(0.6, 0.8), cplx(-0.3, 1.7)};
  for (int swap = 0; swap < 2; ++swap) {
    const CMatrix& a = swap ? f.b : f.a;
    const CMatrix& b = swap ? f.a : f.b;
    for (const cplx& t : shifts) {
      const CMatrix c = a + t * b;
      const double nc = spectral_norm(c);
      if (!(nc > 0.0) || sigma_min(c) <= 1e-8 * nc) continue;
      const Eigen::PartialPivLU<CMatrix> lu(c);
      const CMatrix k = lu.solve(b);
      Eigen::ComplexSchur<CMatrix> schur(k);
      if (schur.info() != Eigen::Success) continue;
      Triangular tri;
      tri.u = schur.matrixU();
      tri.y_basis = c.adjoint().partialPivLu().solve(tri.u);
      (void)n;
      return tri;
    }
  }
  return std::nullopt;
}

struct Context {
  const MatrixPolynomial& p;
  const Region& d;
  double tol;
  std::optional<Triangular> tri;
  bool quadratic = false;
  bool cubic = false;
  bool cubic_shape = false;
  bool zero_excluded = false;
  bool cube_roots_excluded = false;
};

Context prepare(const MatrixPolynomial& p, const Region& d, double tol) {
  Context ctx{p, d, tol, std::nullopt};
  if (auto f = pencil_form_detect(p)) ctx.tri = triangularise(*f);
  ctx.quadratic = p.degree() == 2;
  ctx.cubic = p.degree() == 3;
  ctx.cubic_shape = ctx.cubic && palindromic_cubic_shape(p);
  ctx.zero_excluded = excludes(d, 0.0, tol);
  ctx.cube_roots_excluded = true;
  for (const cplx& z : cube_roots_of_minus_one()) ctx.cube_roots_excluded &= excludes(d, z, tol);
  return ctx;
}

CertificateSearch run_check(const Context& ctx, const CVector& x, int budget, std::uint64_t seed) {
  Search s(ctx.p, x, ctx.d, ctx.tol, budget);
  if (budget <= 0) {
    s.note("budget exhausted");
    return s.take();
  }

  if (ctx.tri) {
    const CVector xp = ctx.tri->u.adjoint() * x;
    const double scale = xp.norm();
    Index last = xp.size() - 1;
    while (last > 0 && std::abs(xp(last)) <= 1e-12 * scale) --last;
    for (Index r = last; r >= 0 && !s.done(); --r) {
      if (s.attempt(ctx.tri->y_basis.col(r), "triangular")) return s.take();
    }
    if (!s.found()) s.note("triangular: no verified y (P may be unstable)");
  }

  if (ctx.quadratic) {
    quadratic_into(s, Variant::a);
    if (ctx.zero_excluded && !s.done()) quadratic_into(s, Variant::b);
    if (ctx.zero_excluded && !s.done()) quadratic_into(s, Variant::c);
  } else if (ctx.cubic) {
    if (ctx.cubic_shape && ctx.cube_roots_excluded) cubic_into(s, Variant::a);
    if (ctx.zero_excluded && !s.done()) cubic_into(s, Variant::b);
    if (ctx.zero_excluded && !s.done()) cubic_into(s, Variant::c);
  }
  if (s.found()) return s.take();

  std::vector<CVector> ax;
  double ref = 0.0;
  for (int j = 0; j <= ctx.p.degree(); ++j) {
    ax.push_back(ctx.p.coeffs()[j] * x);
    ref = std::max(ref, ax.back().norm());
  }
  for (const auto& v : ax) {
    if (s.attempt(v, "distinguished")) return s.take();
  }
  for (std::size_t j = 0; j < ax.size() && !s.done(); ++j) {
    std::vector<CVector> rest;
    for (std::size_t i = 0; i < ax.size(); ++i) {
      if (i != j) rest.push_back(ax[i]);
    }
    const CVector r = orth_residual(ax[j], rest);
    if (usable(r, ref) && s.attempt(r, "distinguished-orthogonal")) return s.take();
  }
  if (s.attempt(x, "numerical-range")) return s.take();

  Rng rng(seed, 0x72616E64);
  while (!s.done()) {
    if (s.attempt(random_unit_vector(x.size(), rng), "random")) return s.take();
  }
  std::ostringstream os;
  os << "budget exhausted after " << budget << " candidates";
  s.note(os.str());
  return s.take();
}

}  // namespace

CertificateSearch hyper_check(const MatrixPolynomial& p, const CVector& x, const Region& d, int budget,
                              std::uint64_t seed, double tol) {
  check_x(p, x);
  const Context ctx = prepare(p, d, tol);
  return run_check(ctx, x, budget, seed);
}

const char* to_string(SurveyVerdict v) {
  switch (v) {
    case SurveyVerdict::all_certified:
      return "all-certified";
    case SurveyVerdict::counterexample_candidate:
      return "counterexample-candidate";
    case SurveyVerdict::inconclusive:
      return "inconclusive";
  }
  return "?";
}

std::size_t HyperSurveyReport::certified() const {
  std::size_t c = 0;
  for (const auto& e : entries) c += e.certificate.has_value();
  return c;
}

namespace {

void finish(HyperSurveyReport& rep) {
  rep.candidate.reset();
  bool all = true;
  for (const auto& e : rep.entries) {
    if (e.certificate) continue;
    all = false;
    if (!rep.candidate && e.candidates_tried > 0) rep.candidate = e.x;
  }
  if (all) {
    rep.verdict = SurveyVerdict::all_certified;
  } else if (rep.candidate) {
    rep.verdict = SurveyVerdict::counterexample_candidate;
  } else {
    rep.verdict = SurveyVerdict::inconclusive;
  }
}

}  // namespace

HyperSurveyReport hyper_survey(const MatrixPolynomial& p, const Region& d, int nx, int budget, std::uint64_t seed,
                               int threads, double tol) {
  if (nx < 1) throw std::invalid_argument("hyper_survey: nx must be >= 1");
  const Index n = p.n();
  std::vector<CVector> xs;
  for (Index i = 0; i < n; ++i) xs.push_back(CVector::Unit(n, i));
  for (int i = 0; i < nx; ++i) {
    Rng rng(seed, 0x78000000ULL + static_cast<std::uint64_t>(i));
    xs.push_back(random_unit_vector(n, rng));
  }

  const Context ctx = prepare(p, d, tol);
  HyperSurveyReport rep;
  rep.entries.resize(xs.size());
  auto work = [&](std::size_t i) {
    CertificateSearch cs = run_check(ctx, xs[i], budget, mix_seed(seed, i));
    rep.entries[i] = SurveyEntry{xs[i], std::move(cs.certificate), std::move(cs.diagnostic), cs.candidates_tried};
  };

  const int workers = std::max(1, std::min<int>(threads, static_cast<int>(xs.size())));
  if (workers == 1) {
    for (std::size_t i = 0; i < xs.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    for (int t = 0; t < workers; ++t) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < xs.size(); i = next++) work(i);
      });
    }
    for (auto& th : pool) th.join();
  }
  finish(rep);
  return rep;
}

HyperSurveyReport gauss_lucas_transfer(const MatrixPolynomial& p, const Region& d, const HyperSurveyReport& survey,
                                       double tol) {
  if (!complement_is_convex(d)) {
    throw std::invalid_argument("gauss_lucas_transfer: the complement of the region is not convex");
  }
  const MatrixPolynomial dp = derivative(p);
  if (!entries_linearly_independent(dp)) {
    throw std::invalid_argument("gauss_lucas_transfer: entries of the derivative are linearly dependent");
  }
  if (survey.verdict != SurveyVerdict::all_certified) {
    throw std::invalid_argument("gauss_lucas_transfer: survey is not all-certified");
  }
  HyperSurveyReport out;
  for (const auto& e : survey.entries) {
    SurveyEntry t;
    t.x = e.x;
    t.candidates_tried = 1;
    t.certificate = verify_certificate(dp, e.x, e.certificate->y, d, tol, "gauss-lucas");
    if (!t.certificate) t.diagnostic = "transferred y does not certify the derivative";
    out.entries.push_back(std::move(t));
  }
  finish(out);
  return out;
}

}  // namespace polystab
