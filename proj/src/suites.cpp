#include "polystab/suites.hpp"

#include <algorithm>
#include <chrono>
#include <limits>
#include <sstream>

#include "polystab/polarization.hpp"

namespace polystab {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

class Recorder {
 public:
  Recorder(std::string name, std::string title) {
    r_.name = std::move(name);
    r_.title = std::move(title);
  }

  void le(const std::string& name, double value, double limit, const std::string& detail = "") {
    add(name, value, limit, "<=", value <= limit, detail);
  }
  void ge(const std::string& name, double value, double limit, const std::string& detail = "") {
    add(name, value, limit, ">=", value >= limit, detail);
  }
  void eq(const std::string& name, double value, double limit, const std::string& detail = "") {
    add(name, value, limit, "==", value == limit, detail);
  }
  void check(const std::string& name, bool ok, const std::string& detail = "") {
    add(name, ok ? 1.0 : 0.0, 1.0, "", ok, detail);
  }
  void note(const std::string& text) { r_.notes.push_back(text); }

  SuiteResult take() { return std::move(r_); }

 private:
  void add(const std::string& name, double value, double limit, const char* op, bool ok, const std::string& detail) {
    r_.measures.push_back({name, value, limit, op, ok, detail});
    r_.passed = r_.passed && ok;
  }
  SuiteResult r_;
};

CMatrix mat2(cplx a, cplx b, cplx c, cplx d) {
  CMatrix m(2, 2);
  m << a, b, c, d;
  return m;
}

double max_real(const std::vector<cplx>& zs) {
  double m = -kInf;
  for (const cplx& z : zs) m = std::max(m, z.real());
  return m;
}

std::string str(double v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

std::uint64_t instance_seed(std::uint64_t suite_seed, int i) { return mix_seed(suite_seed, static_cast<std::uint64_t>(i)); }

// Counts eigenvalues with lo + margin < Arg z < hi - margin, ignoring the origin.
int count_in_sector(const std::vector<cplx>& zs, double lo, double hi, double margin) {
  int c = 0;
  for (const cplx& z : zs) {
    if (std::abs(z) <= 1e-10) continue;
    const double a = principal_arg(z);
    if (a > lo + margin && a < hi - margin) ++c;
  }
  return c;
}

double max_coeff_diff(const MatrixPolynomial& a, const MatrixPolynomial& b) {
  double m = 0.0;
  const int d = std::max(a.degree(), b.degree());
  for (int j = 0; j <= d; ++j) m = std::max(m, (a.coeff(j) - b.coeff(j)).cwiseAbs().maxCoeff());
  return m;
}

// ------------------------------------------------------------------ suites

SuiteResult stable_not_hyperstable(const SuiteOptions& opt) {
  Recorder r("stable-not-hyperstable", "stable but not hyperstable quadratic");
  const std::uint64_t seed = mix_seed(opt.seed, 1);
  const MatrixPolynomial p = fixture_stable_not_hyperstable();

  const DeterminantInterpolation di = interpolate_determinant(p);
  double rest = 0.0;
  for (std::size_t j = 1; j < di.raw.size(); ++j) rest = std::max(rest, std::abs(di.raw[j]));
  r.le("|det coefficient 0 - 1|", std::abs(di.raw[0] - 1.0), 1e-10);
  r.le("max |det coefficient j|, j >= 1", rest, 1e-10);
  const EigenReport ev = eigenvalues(p);
  r.check("regular, no finite eigenvalues", ev.regular && ev.eigenvalues.size() == 0);
  r.eq("drop in degree", ev.drop_in_degree, 4);

  const CVector e2 = CVector::Unit(2, 1);
  double worst = 0.0;
  double product = 0.0;
  for (int i = 0; i < 1000; ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    const CVector y = random_unit_vector(2, rng);
    const Polynomial s = scalar_form(p, e2, y);
    const RootSet rs = roots(s);
    double nearest = kInf;
    for (const cplx& z : rs.roots) nearest = std::min(nearest, std::abs(z));
    worst = std::max(worst, nearest);
    if (rs.size() == 2) product = std::max(product, std::abs(std::abs(rs.roots[0] * rs.roots[1]) - 1.0));
  }
  r.le("max over 1000 y of the smallest |root| of y*P x, x = e2", worst, 1.0 + 1e-8);
  r.le("max ||r1 r2| - 1|", product, 1e-8);

  const HyperSurveyReport s = hyper_survey(p, Region::disc(0.0, 1.0, false), 20, 200, seed, opt.threads);
  r.check("survey over the closed unit disc: counterexample candidate", s.verdict == SurveyVerdict::counterexample_candidate,
          to_string(s.verdict));
  r.le("|candidate - e2|", s.candidate ? (*s.candidate - e2).norm() : kInf, 1e-12);

  const MatrixPolynomial shifted = shift(p, cplx(0.0, -1.0));
  const HyperSurveyReport sh = hyper_survey(shifted, Region::halfplane(0.0, true), 20, 200, seed, opt.threads);
  r.check("P(lambda - i) over the open upper half-plane: counterexample candidate at e2",
          sh.verdict == SurveyVerdict::counterexample_candidate && sh.candidate && (*sh.candidate - e2).norm() < 1e-12,
          to_string(sh.verdict));

  // equivalence by a unimodular factor: P = L(lambda) U(lambda), U triangular
  const MatrixPolynomial lower({CMatrix::Identity(2, 2), mat2(0, 0, 1, 0)});
  const MatrixPolynomial upper({CMatrix::Identity(2, 2), mat2(0, 1, 0, 0)});
  double fact = 0.0;
  for (int k = 0; k < 5; ++k) {
    const cplx z(0.3 * k - 0.7, 0.2 * k);
    fact = std::max(fact, (lower.eval(z) * upper.eval(z) - p.eval(z)).norm());
  }
  r.le("|L(z) U(z) - P(z)| at 5 points", fact, 1e-14);
  const HyperSurveyReport su = hyper_survey(upper, Region::disc(0.0, 1.0, false), 20, 200, seed, opt.threads);
  r.check("triangular factor U is hyperstable (survey all-certified)", su.verdict == SurveyVerdict::all_certified,
          to_string(su.verdict));
  return r.take();
}

SuiteResult polarized_singularity(const SuiteOptions& opt) {
  Recorder r("polarized-singularity", "polarization of a stable polynomial can be unstable");
  const std::uint64_t seed = mix_seed(opt.seed, 2);
  const MatrixPolynomial p = fixture_stable_not_hyperstable();
  const MultivariateMatrixPolynomial t = polarize(p, 2).result;

  double dev = 0.0;
  Rng rng(seed, 0);
  for (int i = 0; i < 100; ++i) {
    const cplx z1 = 2.0 * rng.complex_normal();
    const cplx z2 = 2.0 * rng.complex_normal();
    const cplx h = (z1 - z2) / 2.0;
    dev = std::max(dev, std::abs(t.eval({z1, z2}).determinant() - (1.0 - h * h)));
  }
  r.le("max |det T2P - (1 - ((z1 - z2)/2)^2)| at 100 points", dev, 1e-10);

  const StabilityVerdict v = mv_stability_sample(t, Region::power_of(Region::disc(0.0, 3.0, false), 2), 200, seed);
  r.check("sampling over the closed disc of radius 3, squared, finds a singular point", v.violated(), v.detail);
  double off = kInf;
  if (v.violated() && v.witness.size() == 2) {
    const cplx diff = v.witness[0] - v.witness[1];
    off = std::min(std::abs(diff - 2.0), std::abs(diff + 2.0));
  }
  r.le("||mu1 - mu2| - 2| at the witness", off, 1e-6);
  r.le("relative sigma_min at the witness", v.violated() ? v.min_sigma : kInf, 1e-10);
  return r.take();
}

SuiteResult derivative_counterexample(const SuiteOptions& opt) {
  Recorder r("derivative-counterexample", "eigenvalues of a derivative need hyperstability");
  const std::uint64_t seed = mix_seed(opt.seed, 3);
  const double eps = 1e-3;
  const MatrixPolynomial p = fixture_perturbed_derivative(eps);

  // cofactor expansion: (l^4 - 3l^2)(1 + eps l^4) - l (l^3 - 4l)
  const std::vector<cplx> oracle{0, 0, 1, 0, 0, 0, -3 * eps, 0, eps};
  const Polynomial det = determinant_polynomial(p);
  double dev = 0.0;
  for (int j = 0; j < 9; ++j) dev = std::max(dev, std::abs((j <= det.degree() ? det[j] : 0.0) - oracle[j]));
  r.le("max |det coefficient - cofactor oracle|", dev, 1e-10);

  const MatrixPolynomial dp0 = derivative(fixture_perturbed_derivative(0.0));
  const Polynomial det0 = determinant_polynomial(dp0);
  const std::vector<cplx> oracle0{4, 0, -3};
  double dev0 = 0.0;
  for (int j = 0; j <= std::max(2, det0.degree()); ++j) {
    dev0 = std::max(dev0, std::abs((j <= det0.degree() ? det0[j] : 0.0) - (j < 3 ? oracle0[j] : 0.0)));
  }
  r.le("max |det P'_0 coefficient - (4 - 3 l^2)|", dev0, 1e-10);
  const StabilityVerdict s0 = is_stable(dp0, Region::disc(0.0, 1.0, false));
  r.check("P'_0 has no eigenvalue in the closed unit disc", s0.holds(), "roots +-2/sqrt(3)");

  const MatrixPolynomial dp = derivative(p);
  r.check("entries of P'_eps linearly independent", entries_linearly_independent(dp));

  const EigenReport ev = eigenvalues(p);
  int inside = 0;
  double outer = 0.0;
  for (const cplx& z : ev.eigenvalues.roots) {
    if (std::abs(z) < 1.0) ++inside;
    outer = std::max(outer, std::abs(z));
  }
  std::ostringstream os;
  os << "discrepancy: det P_eps = l^2 + eps l^8 - 3 eps l^6 has " << ev.eigenvalues.size() - inside << " of "
     << ev.eigenvalues.size() << " eigenvalues outside the unit disc (largest modulus " << outer
     << ", eps^(-1/6) = " << std::pow(eps, -1.0 / 6.0) << "); the inside-the-disc claim is not asserted";
  r.note(os.str());

  // transfer to the derivative, with a polynomial whose derivative has
  // independent entries
  const MatrixPolynomial g = fixture_gauss_lucas();
  const Region far = Region::ext_disc(10.0, true);
  const HyperSurveyReport sg = hyper_survey(g, far, 10, 200, seed, opt.threads);
  r.check("[[l^4 + 1, l^3], [l^2, l + 2]] over |z| > 10: survey all-certified", sg.verdict == SurveyVerdict::all_certified,
          to_string(sg.verdict));
  bool transferred = false;
  std::string why;
  try {
    transferred = gauss_lucas_transfer(g, far, sg).verdict == SurveyVerdict::all_certified;
  } catch (const std::exception& e) {
    why = e.what();
  }
  r.check("every certificate transfers to the derivative", transferred, why);

  // diag(l, 1): hyperstable outside the unit disc, derivative singular
  const MatrixPolynomial dg({mat2(0, 0, 0, 1), mat2(1, 0, 0, 0)});
  const Region outside = Region::ext_disc(1.0, true);
  const HyperSurveyReport sd = hyper_survey(dg, outside, 5, 50, seed, opt.threads);
  bool rejected = false;
  try {
    gauss_lucas_transfer(dg, outside, sd);
  } catch (const std::invalid_argument&) {
    rejected = true;
  }
  r.check("diag(l, 1): survey all-certified, transfer rejected (dependent derivative entries)",
          sd.verdict == SurveyVerdict::all_certified && rejected);
  return r.take();
}

SuiteResult ph_quadratic(const SuiteOptions& opt) {
  Recorder r("ph-quadratic", "port-Hamiltonian quadratics: hyperstable on the right half-plane");
  const std::uint64_t seed = mix_seed(opt.seed, 4);
  const Region rhp = Region::halfplane(kPi / 2, true);
  double worst_eig = -kInf;
  double worst_cert = -kInf;
  int certified = 0;
  int sampled = 0;
  int witnesses = 0;
  double min_sigma = kInf;
  for (int i = 0; i < 50; ++i) {
    FamilyParams fp;
    fp.n = 2 + i % 5;
    const FamilyInstance inst = make_family(Family::ph_quadratic, fp, instance_seed(seed, i));
    const MatrixPolynomial p = inst.polynomial();
    worst_eig = std::max(worst_eig, max_real(eigenvalues(p).eigenvalues.roots));
    const HyperSurveyReport s = hyper_survey(p, rhp, 20, 200, instance_seed(seed, 1000 + i), opt.threads);
    sampled += static_cast<int>(s.sampled());
    certified += static_cast<int>(s.certified());
    for (const auto& e : s.entries) {
      if (e.certificate) worst_cert = std::max(worst_cert, max_real(e.certificate->roots.roots));
    }
    for (const Companion& c : family_companions(inst)) {
      const StabilityVerdict v =
          mv_stability_sample(c.poly, Region::power_of(c.region, 2), 2000, instance_seed(seed, 2000 + i));
      witnesses += v.violated();
      min_sigma = std::min(min_sigma, v.min_sigma);
    }
  }
  r.le("max Re(eigenvalue) over 50 instances", worst_eig, 1e-8);
  r.eq("x certified", certified, sampled, std::to_string(certified) + "/" + std::to_string(sampled));
  r.le("max Re(root) over all certificate scalars", worst_cert, 1e-8);
  r.eq("singular witnesses of z1 z2 R2 + z2 (J + R1) + R0 (2000 points each)", witnesses, 0,
       "min relative sigma " + str(min_sigma));
  return r.take();
}

SuiteResult psd_cubic(const SuiteOptions& opt) {
  Recorder r("psd-cubic", "PSD cubics: no eigenvalues in the sector 0 < Arg z < pi/3");
  const std::uint64_t seed = mix_seed(opt.seed, 5);
  int in_sector = 0;
  int eigs = 0;
  for (int i = 0; i < 50; ++i) {
    FamilyParams fp;
    fp.n = 2 + i % 5;
    const FamilyInstance inst = make_family(Family::psd_cubic_sector, fp, instance_seed(seed, i));
    const EigenReport ev = eigenvalues(inst.polynomial());
    eigs += static_cast<int>(ev.eigenvalues.size());
    in_sector += count_in_sector(ev.eigenvalues.roots, 0.0, kPi / 3, 1e-8);
  }
  r.eq("eigenvalues with 1e-8 < Arg < pi/3 - 1e-8 (50 instances)", in_sector, 0, std::to_string(eigs) + " eigenvalues");

  // two-variable companions on a few instances
  int witnesses = 0;
  for (int i = 0; i < 5; ++i) {
    FamilyParams fp;
    fp.n = 2 + i % 3;
    const FamilyInstance inst = make_family(Family::psd_cubic_sector, fp, instance_seed(seed, 100 + i));
    for (const Companion& c : family_companions(inst)) {
      witnesses += mv_stability_sample(c.poly, Region::power_of(c.region, 2), 300, instance_seed(seed, 200 + i)).violated();
    }
  }
  r.eq("singular witnesses of P1, P2, P3 over their sector squares (5 instances)", witnesses, 0);

  const Region d = Region::sector(0.0, kPi / 3, true);
  int certified = 0;
  int tried = 0;
  int palin_eigs = 0;
  for (int i = 0; i < 50; ++i) {
    FamilyParams fp;
    fp.n = 2 + i % 5;
    const FamilyInstance inst = make_family(Family::palindromic_psd_cubic, fp, instance_seed(seed, 300 + i));
    const MatrixPolynomial p = inst.polynomial();
    palin_eigs += count_in_sector(eigenvalues(p).eigenvalues.roots, 0.0, kPi / 3, 1e-8);
    for (int k = 0; k < 20; ++k) {
      Rng rng(instance_seed(seed, 300 + i), static_cast<std::uint64_t>(k));
      const CVector x = random_unit_vector(p.n(), rng);
      ++tried;
      certified += structural_certificate_cubic(p, x, d, Variant::b).found();
    }
  }
  r.eq("palindromic-shape eigenvalues in the sector", palin_eigs, 0);
  r.eq("x certified by the cubic construction, variant b", certified, tried,
       std::to_string(certified) + "/" + std::to_string(tried));
  return r.take();
}

SuiteResult mgt(const SuiteOptions& opt) {
  Recorder r("mgt", "third-order MGT-type polynomial: pencil structure and hyperstability");
  const std::uint64_t seed = mix_seed(opt.seed, 6);
  const Region rhp = Region::halfplane(kPi / 2, true);
  const double a = 2.0;
  const double b = 2.0;
  const double c = 1.0;
  int detected = 0;
  double form_dev = 0.0;
  double worst_eig = -kInf;
  int all_certified = 0;
  for (int i = 0; i < 20; ++i) {
    FamilyParams fp;
    fp.n = 2 + i % 4;
    fp.a = a;
    fp.b = b;
    fp.c = c;
    const FamilyInstance inst = make_family(Family::mgt, fp, instance_seed(seed, i));
    const MatrixPolynomial p = inst.polynomial();
    const auto f = pencil_form_detect(p);
    if (f && f->p.degree() == 3 && f->q.degree() == 1) {
      ++detected;
      // monic normalisation: p = l^3 + a l^2, q = (b l + c)/b, B = b R
      const Polynomial q_expect{c / b, 1.0};
      const Polynomial p_expect{0.0, 0.0, a, 1.0};
      double dev = (f->a - CMatrix::Identity(p.n(), p.n())).norm() + (f->b / b - inst.parts.at("R")).norm();
      for (int j = 0; j <= 3; ++j) dev += std::abs(f->p[j] - p_expect[j]);
      for (int j = 0; j <= 1; ++j) dev += std::abs(f->q[j] - q_expect[j]);
      form_dev = std::max(form_dev, dev);
    }
    worst_eig = std::max(worst_eig, max_real(eigenvalues(p).eigenvalues.roots));
    all_certified += hyper_survey(p, rhp, 10, 200, instance_seed(seed, 100 + i), opt.threads).verdict ==
                     SurveyVerdict::all_certified;
  }
  r.eq("p A + q B form detected", detected, 20);
  r.le("deviation from p = l^3 + a l^2, q = (b l + c)/b, A = I, B = b R", form_dev, 1e-10);
  r.le("max Re(eigenvalue)", worst_eig, 1e-8);
  r.eq("surveys all-certified", all_certified, 20);

  FamilyParams one;
  one.n = 1;
  one.matrices["R"] = CMatrix::Ones(1, 1);
  const EigenReport ev = eigenvalues(make_family(Family::mgt, one, seed).polynomial());
  const std::vector<cplx> expect{-1.0, cplx(-0.5, std::sqrt(3.0) / 2), cplx(-0.5, -std::sqrt(3.0) / 2)};
  double dev = ev.eigenvalues.size() == 3 ? 0.0 : kInf;
  for (const cplx& e : expect) {
    double best = kInf;
    for (const cplx& z : ev.eigenvalues.roots) best = std::min(best, std::abs(z - e));
    dev = std::max(dev, best);
  }
  r.le("n = 1, R = 1: distance to {-1, -1/2 +- i sqrt(3)/2}", dev, 1e-10);
  return r.take();
}

SuiteResult subadditive(const SuiteOptions& opt) {
  Recorder r("subadditive", "dominant constant coefficient: hyperstable on the disc");
  const std::uint64_t seed = mix_seed(opt.seed, 7);
  int stable = 0;
  int witnesses = 0;
  int certified = 0;
  double min_sigma = kInf;
  for (int i = 0; i < 20; ++i) {
    FamilyParams fp;
    fp.n = 2 + i % 4;
    fp.r = 1.0;
    fp.margin = 2.0;
    const FamilyInstance inst = make_family(Family::subadd, fp, instance_seed(seed, i));
    const MatrixPolynomial p = inst.polynomial();
    stable += is_stable(p, inst.expected_region).holds();
    for (const Companion& c : family_companions(inst)) {
      const StabilityVerdict v =
          mv_stability_sample(c.poly, Region::power_of(c.region, 2), 500, instance_seed(seed, 100 + i));
      witnesses += v.violated();
      min_sigma = std::min(min_sigma, v.min_sigma);
    }
    certified += hyper_survey(p, inst.expected_region, 5, 200, instance_seed(seed, 200 + i), opt.threads).verdict ==
                 SurveyVerdict::all_certified;
  }
  r.eq("instances with no eigenvalue in the open unit disc", stable, 20);
  r.eq("singular witnesses of z1^2 A2 + z2 A1 + A0 over the disc squared", witnesses, 0,
       "min relative sigma " + str(min_sigma));
  r.eq("surveys all-certified", certified, 20);
  return r.take();
}

SuiteResult degree_transform_suite(const SuiteOptions& opt) {
  Recorder r("degree-transform", "polarization used to raise and lower the degree");
  const std::uint64_t seed = mix_seed(opt.seed, 8);
  const Region rhp = Region::halfplane(kPi / 2, true);
  const Polynomial lam{0.0, 1.0};
  const Polynomial lam2{0.0, 0.0, 1.0};

  double dev = 0.0;
  int in_region = 0;
  int region_mismatch = 0;
  for (int i = 0; i < 20; ++i) {
    FamilyParams fp;
    fp.n = 2 + i % 4;
    const FamilyInstance inst = make_family(Family::angle_cubic, fp, instance_seed(seed, i));
    const MatrixPolynomial q = inst.polynomial();
    const DegreeTransform t = degree_transform(angle_cubic_generator(inst), 2, {lam2, lam}, rhp);
    dev = std::max(dev, max_coeff_diff(t.q, q));
    in_region += count_in_sector(eigenvalues(q).eigenvalues.roots, -kPi / 4, kPi / 4, 0.0);
    if (i == 0) {
      Rng rng(seed, 77);
      for (int k = 0; k < 1000; ++k) {
        const cplx z = 3.0 * rng.complex_normal();
        const Membership a = region_contains(t.region, z);
        const Membership b = region_contains(inst.expected_region, z);
        if (a != Membership::boundary && b != Membership::boundary && a != b) ++region_mismatch;
      }
    }
  }
  r.le("max |T2P(l^2, l) - (l^3 R2 + (l^2 + l)(R1 + J) + R0)|", dev, 1e-12);
  r.eq("angle-cubic eigenvalues in -pi/4 < Arg < pi/4 (origin excluded)", in_region, 0);
  r.eq("points where the preimage intersection and the angle disagree", region_mismatch, 0);

  double worst = -kInf;
  double dev8 = 0.0;
  for (int i = 0; i < 20; ++i) {
    FamilyParams fp;
    fp.n = 2 + i % 4;
    fp.a = 5.0 * i / 19.0;
    const FamilyInstance inst = make_family(Family::pencil_aj, fp, instance_seed(seed, 100 + i));
    worst = std::max(worst, max_real(eigenvalues(inst.polynomial()).eigenvalues.roots));
    if (fp.a > 0.0) {
      const auto& pt = inst.parts;
      const MatrixPolynomial gen({pt.at("R0"), 2.0 * pt.at("J"), pt.at("R1") / fp.a});
      const DegreeTransform t = degree_transform(gen, 2, {lam, Polynomial{fp.a}}, rhp);
      dev8 = std::max(dev8, max_coeff_diff(t.q, inst.polynomial()));
    }
  }
  r.le("pencil-aJ, a in [0, 5]: max Re(eigenvalue)", worst, 1e-8);
  r.le("max |T2P(l, a) - (l (R1 + J) + R0 + a J)|", dev8, 1e-12);
  return r.take();
}

SuiteResult root_finder(const SuiteOptions& opt) {
  Recorder r("root-finder", "root finder against the argument principle and Gauss-Lucas");
  const std::uint64_t seed = mix_seed(opt.seed, 9);
  double worst_res = 0.0;
  int disagreements = 0;
  int redraws = 0;
  double hull = 0.0;
  for (int i = 0; i < 500; ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    const int d = 1 + static_cast<int>(rng.uniform() * 12);
    std::vector<cplx> c(d + 1);
    for (auto& v : c) v = rng.complex_normal();
    const Polynomial p(c);
    const RootSet rs = roots(p);
    worst_res = std::max(worst_res, rs.max_residual());

    cplx center;
    double radius = 0.0;
    for (;;) {
      center = rng.complex_normal();
      radius = 0.2 + 1.8 * rng.uniform();
      bool clear = true;
      for (const cplx& z : rs.roots) clear = clear && std::abs(std::abs(z - center) - radius) > 1e-6;
      if (clear) break;
      ++redraws;
    }
    int inside = 0;
    for (const cplx& z : rs.roots) inside += std::abs(z - center) < radius;
    disagreements += inside != count_roots_in_disc(p, center, radius);

    if (d >= 2) {
      for (const cplx& z : roots(p.derivative()).roots) hull = std::max(hull, convex_hull_distance(rs.roots, z));
    }
  }
  r.le("max relative residual", worst_res, 1e-10);
  r.eq("disc counts that disagree with the winding number", disagreements, 0,
       std::to_string(redraws) + " discs redrawn near roots");
  r.le("max distance of a derivative root from the hull of the roots", hull, 1e-8);
  return r.take();
}

SuiteResult polarization_laws(const SuiteOptions& opt) {
  Recorder r("polarization-laws", "polarization: diagonal round trip, GWS witnesses, certificate transfer");
  const std::uint64_t seed = mix_seed(opt.seed, 10);

  double round = 0.0;
  for (int i = 0; i < 100; ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    const Index n = 1 + static_cast<Index>(rng.uniform() * 3);
    const int d = static_cast<int>(rng.uniform() * 5);
    const int kappa = std::max(1, d) + static_cast<int>(rng.uniform() * (7 - std::max(1, d)));
    std::vector<CMatrix> c;
    for (int j = 0; j <= d; ++j) c.push_back(random_gaussian(n, n, rng));
    const MatrixPolynomial p(c);
    round = std::max(round, max_coeff_diff(restrict_diagonal(polarize(p, kappa).result), p));
  }
  r.le("max |restrict_diagonal(polarize(P)) - P|", round, 1e-12);

  const Region disc = Region::disc(0.0, 1.0, false);
  double gws = 0.0;
  int anomalies = 0;
  for (int i = 0; i < 100; ++i) {
    Rng rng(seed, 1000 + static_cast<std::uint64_t>(i));
    const int kappa = 1 + static_cast<int>(rng.uniform() * 4);
    std::vector<cplx> weights(kappa + 1);
    for (auto& w : weights) w = rng.complex_normal();
    MultivariatePolynomial p(kappa);
    for (unsigned mask = 0; mask < (1u << kappa); ++mask) {
      std::vector<int> alpha(kappa);
      for (int k = 0; k < kappa; ++k) alpha[k] = (mask >> k) & 1u;
      p.add_term(alpha, weights[__builtin_popcount(mask)]);
    }
    std::vector<cplx> zeta(kappa);
    for (auto& z : zeta) z = sample_point(disc, rng);
    try {
      const cplx z0 = gws_witness(p, zeta, disc);
      const cplx v = p(zeta);
      gws = std::max(gws, std::abs(v - p(std::vector<cplx>(kappa, z0))) / (1.0 + std::abs(v)));
    } catch (const std::runtime_error&) {
      ++anomalies;
    }
  }
  r.eq("GWS numerical anomalies", anomalies, 0);
  r.le("max |p(zeta) - p(zeta0, ..., zeta0)| / (1 + |p(zeta)|)", gws, 1e-8);

  const Region rhp = Region::halfplane(kPi / 2, true);
  const Region compact = shrink(rhp, 1e-3);
  double min_rel = kInf;
  int certs = 0;
  int diagonal_ok = 0;
  for (int i = 0; i < 10; ++i) {
    FamilyParams fp;
    fp.n = 2 + i % 3;
    const FamilyInstance inst = make_family(Family::ph_quadratic, fp, instance_seed(seed, 2000 + i));
    const MatrixPolynomial p = inst.polynomial();
    const MultivariateMatrixPolynomial t = polarize(p, 2).result;
    const HyperSurveyReport s = hyper_survey(p, rhp, 2, 200, instance_seed(seed, 3000 + i), opt.threads);
    for (const auto& e : s.entries) {
      if (!e.certificate) continue;
      ++certs;
      const MultivariatePolynomial f = t.scalar_form(e.x, e.certificate->y);
      Rng rng(instance_seed(seed, 4000 + i), static_cast<std::uint64_t>(certs));
      for (int k = 0; k < 1000; ++k) {
        const std::vector<cplx> mu{sample_point(compact, rng), sample_point(compact, rng)};
        double scale = 0.0;
        for (const auto& [alpha, c] : f.terms()) scale += std::abs(c) * std::pow(std::abs(mu[0]), alpha[0]) *
                                                          std::pow(std::abs(mu[1]), alpha[1]);
        min_rel = std::min(min_rel, std::abs(f(mu)) / scale);
      }
      // the same y on the diagonal certifies P again
      diagonal_ok += verify_certificate(restrict_diagonal(t), e.x, e.certificate->y, rhp).has_value();
    }
  }
  r.ge("certificates checked", certs, 10);
  r.ge("min relative |y* (T2P)(mu) x| over 1000 samples per certificate", min_rel, 1e-12);
  r.eq("diagonal restrictions that certify P", diagonal_ok, certs);
  return r.take();
}

SuiteResult szasz(const SuiteOptions& opt) {
  Recorder r("szasz", "Szasz-type bound for polynomials with W(P) in a half-plane");
  const std::uint64_t seed = mix_seed(opt.seed, 11);
  const Region upper = Region::halfplane(0.0, false);
  int confirmed = 0;
  int violations = 0;
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    const Index n = 1 + i % 4;
    const std::uint64_t s = instance_seed(seed, i);
    // P = I + i l B1 - l^2 B2 with PSD B1, B2 keeps W(P) in the upper half-plane
    const CMatrix b1 = gen_psd(n, mix_seed(s, 1)) / double(2 * n);
    const CMatrix b2 = gen_psd(n, mix_seed(s, 2)) / double(4 * n);
    const MatrixPolynomial p({CMatrix::Identity(n, n), cplx(0.0, 1.0) * b1, -b2});
    const NumericalRangeSample w = numerical_range_sample(p, 200, mix_seed(s, 3));
    bool in_half = true;
    for (const cplx& z : w.points) in_half = in_half && region_contains(upper, z, 1e-8) != Membership::outside;
    confirmed += in_half;
    for (int gx = 0; gx < 20; ++gx) {
      for (int gy = 0; gy < 20; ++gy) {
        const cplx z(-5.0 + 10.0 * gx / 19.0, -5.0 + 10.0 * gy / 19.0);
        const double norm = spectral_norm(p.eval(z));
        const double bound = szasz_bound(p, z);
        violations += norm > bound * (1.0 + 1e-9);
        if (std::isfinite(bound)) worst = std::max(worst, norm / bound);
      }
    }
  }
  r.eq("instances with W(P) confirmed in the closed upper half-plane", confirmed, 50);
  r.eq("grid points where ||P(z)|| exceeds the bound (50 x 400)", violations, 0);
  r.le("max ||P(z)|| / bound", worst, 1.0 + 1e-9);

  // the literal statement with W(P) in the left half-plane fails
  const MatrixPolynomial left({CMatrix::Ones(1, 1), CMatrix::Ones(1, 1), CMatrix::Ones(1, 1)});
  const cplx z(0.0, 2.0);
  std::ostringstream os;
  os << "1 + l + l^2 (W(P) in the left half-plane) at z = 2i: |P| = " << spectral_norm(left.eval(z))
     << " > bound " << szasz_bound(left, z) << "; the orientation matters";
  r.note(os.str());
  return r.take();
}

}  // namespace

MatrixPolynomial fixture_stable_not_hyperstable() {
  return MatrixPolynomial({CMatrix::Identity(2, 2), mat2(0, 1, 1, 0), mat2(0, 0, 0, 1)});
}

MatrixPolynomial fixture_perturbed_derivative(double eps) {
  return MatrixPolynomial({mat2(0, 0, 0, 1), mat2(0, -4, 1, 0), mat2(-3, 0, 0, 0), mat2(0, 1, 0, 0),
                           mat2(1, 0, 0, eps)});
}

MatrixPolynomial fixture_gauss_lucas() {
  return MatrixPolynomial({mat2(1, 0, 0, 2), mat2(0, 0, 0, 1), mat2(0, 0, 1, 0), mat2(0, 1, 0, 0), mat2(1, 0, 0, 0)});
}

MatrixPolynomial shift(const MatrixPolynomial& p, cplx beta) {
  const int d = p.degree();
  std::vector<CMatrix> c(d + 1, CMatrix::Zero(p.n(), p.n()));
  for (int j = 0; j <= d; ++j) {
    // (l + beta)^j = sum_k binom(j, k) beta^(j-k) l^k
    cplx binom = 1.0;
    for (int k = 0; k <= j; ++k) {
      c[k] += binom * std::pow(beta, j - k) * p.coeffs()[j];
      binom = binom * double(j - k) / double(k + 1);
    }
  }
  return MatrixPolynomial(std::move(c));
}

double convex_hull_distance(const std::vector<cplx>& points, cplx z) {
  if (points.empty()) throw std::invalid_argument("convex_hull_distance: no points");
  std::vector<cplx> pts = points;
  auto less = [](cplx a, cplx b) { return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag()); };
  std::sort(pts.begin(), pts.end(), less);
  auto cross = [](cplx o, cplx a, cplx b) {
    return (a.real() - o.real()) * (b.imag() - o.imag()) - (a.imag() - o.imag()) * (b.real() - o.real());
  };
  std::vector<cplx> hull;
  for (int pass = 0; pass < 2; ++pass) {
    const std::size_t start = hull.size();
    for (const cplx& p : pts) {
      while (hull.size() >= start + 2 && cross(hull[hull.size() - 2], hull.back(), p) <= 0.0) hull.pop_back();
      hull.push_back(p);
    }
    hull.pop_back();
    std::reverse(pts.begin(), pts.end());
  }
  if (hull.empty()) hull.push_back(pts[0]);

  auto segment = [](cplx a, cplx b, cplx p) {
    const cplx ab = b - a;
    const double len = std::norm(ab);
    if (len == 0.0) return std::abs(p - a);
    const double t = std::clamp(((p - a) * std::conj(ab)).real() / len, 0.0, 1.0);
    return std::abs(p - (a + t * ab));
  };
  double dist = kInf;
  bool inside = hull.size() >= 3;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const cplx a = hull[i];
    const cplx b = hull[(i + 1) % hull.size()];
    dist = std::min(dist, segment(a, b, z));
    if (cross(a, b, z) < 0.0) inside = false;
  }
  return inside ? 0.0 : dist;
}

const std::vector<SuiteInfo>& suite_catalog() {
  static const std::vector<SuiteInfo> catalog{
      {"stable-not-hyperstable", "stable but not hyperstable quadratic", 2.0, stable_not_hyperstable},
      {"polarized-singularity", "polarization of a stable polynomial can be unstable", 2.0, polarized_singularity},
      {"derivative-counterexample", "eigenvalues of a derivative need hyperstability", 1.0, derivative_counterexample},
      {"ph-quadratic", "port-Hamiltonian quadratics", 30.0, ph_quadratic},
      {"psd-cubic", "PSD cubics and the sector 0 < Arg z < pi/3", 30.0, psd_cubic},
      {"mgt", "third-order MGT-type polynomial", 10.0, mgt},
      {"subadditive", "dominant constant coefficient", 10.0, subadditive},
      {"degree-transform", "polarization used to raise and lower the degree", 10.0, degree_transform_suite},
      {"root-finder", "root finder soundness", 10.0, root_finder},
      {"polarization-laws", "polarization laws", 20.0, polarization_laws},
      {"szasz", "Szasz-type bound", 20.0, szasz},
  };
  return catalog;
}

SuiteResult run_suite(const std::string& name, const SuiteOptions& opt) {
  for (const SuiteInfo& s : suite_catalog()) {
    if (s.name != name) continue;
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult r;
    try {
      r = s.run(opt);
    } catch (const std::exception& e) {
      r.name = s.name;
      r.title = s.title;
      r.passed = false;
      r.measures.push_back({"suite raised an exception", 0.0, 1.0, "", false, e.what()});
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    r.budget_seconds = s.budget_seconds;
    return r;
  }
  throw std::invalid_argument("unknown suite: " + name);
}

Json suite_to_json(const SuiteResult& r, bool with_timing) {
  Json j;
  j["suite"] = r.name;
  j["title"] = r.title;
  j["passed"] = r.passed;
  Json ms = Json::array();
  for (const Measure& m : r.measures) {
    Json e;
    e["name"] = m.name;
    e["value"] = m.value;
    if (!m.op.empty()) {
      e["op"] = m.op;
      e["limit"] = m.limit;
    }
    e["ok"] = m.ok;
    if (!m.detail.empty()) e["detail"] = m.detail;
    ms.push_back(std::move(e));
  }
  j["measures"] = std::move(ms);
  j["notes"] = r.notes;
  if (with_timing) {
    j["seconds"] = r.seconds;
    j["budget_seconds"] = r.budget_seconds;
  }
  return j;
}

std::string format_suite(const SuiteResult& r, bool with_timing) {
  std::ostringstream os;
  os << (r.passed ? "PASS " : "FAIL ") << r.name << " (" << r.title << ")";
  if (with_timing) os << " " << r.seconds << " s, budget " << r.budget_seconds << " s";
  os << "\n";
  for (const Measure& m : r.measures) {
    os << "  " << (m.ok ? "ok  " : "FAIL") << " " << m.name;
    if (!m.op.empty()) os << " = " << m.value << " (" << m.op << " " << m.limit << ")";
    if (!m.detail.empty()) os << " [" << m.detail << "]";
    os << "\n";
  }
  for (const auto& n : r.notes) os << "  note: " << n << "\n";
  return os.str();
}

}  // namespace polystab
