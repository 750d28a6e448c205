#include "polystab/families.hpp"

#include <sstream>

namespace polystab {

namespace {

struct FamilyName {
  Family tag;
  const char* name;
};

constexpr FamilyName kNames[] = {
    {Family::mgt, "mgt"},
    {Family::subadd, "subadd"},
    {Family::ph_quadratic, "ph-quadratic"},
    {Family::ph_corollary_q, "ph-corollary-Q"},
    {Family::psd_cubic_sector, "psd-cubic-sector"},
    {Family::palindromic_psd_cubic, "palindromic-psd-cubic"},
    {Family::angle_cubic, "angle-cubic"},
    {Family::pencil_aj, "pencil-aJ"},
};

CMatrix identity(Index n) { return CMatrix::Identity(n, n); }

// Each named part draws from its own stream so overriding one part leaves
// the others unchanged.
std::uint64_t part_seed(std::uint64_t seed, const std::string& name) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (char ch : name) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001b3ULL;
  }
  return mix_seed(seed, h);
}

class PartSource {
 public:
  PartSource(const FamilyParams& p, std::uint64_t seed, std::map<std::string, CMatrix>& parts)
      : p_(p), seed_(seed), parts_(parts) {}

  template <typename Make>
  const CMatrix& get(const std::string& name, Make make) {
    auto it = p_.matrices.find(name);
    CMatrix m = it != p_.matrices.end() ? it->second : make(part_seed(seed_, name));
    if (m.rows() != p_.n || m.cols() != p_.n) {
      throw std::invalid_argument("family part " + name + " has the wrong size");
    }
    return parts_[name] = std::move(m);
  }

  const CMatrix& psd(const std::string& name) {
    return get(name, [&](std::uint64_t s) { return gen_psd(p_.n, s); });
  }
  const CMatrix& skew(const std::string& name, bool minus_i_psd = false) {
    return get(name, [&](std::uint64_t s) { return gen_skew(p_.n, s, minus_i_psd); });
  }

 private:
  const FamilyParams& p_;
  std::uint64_t seed_;
  std::map<std::string, CMatrix>& parts_;
};

CMatrix random_unitary(Index n, std::uint64_t seed) {
  Rng rng(seed, 0x554E);
  const CMatrix g = random_gaussian(n, n, rng);
  Eigen::HouseholderQR<CMatrix> qr(g);
  return qr.householderQ() * CMatrix::Identity(n, n);
}

}  // namespace

const char* to_string(Family f) {
  for (const auto& e : kNames) {
    if (e.tag == f) return e.name;
  }
  return "?";
}

const char* to_string(Claim c) { return c == Claim::stable ? "stable" : "hyperstable"; }

Family parse_family(const std::string& s) {
  for (const auto& e : kNames) {
    if (s == e.name) return e.tag;
  }
  throw std::invalid_argument("unknown family: " + s);
}

const std::vector<Family>& all_families() {
  static const std::vector<Family> fams = [] {
    std::vector<Family> v;
    for (const auto& e : kNames) v.push_back(e.tag);
    return v;
  }();
  return fams;
}

MatrixPolynomial FamilyInstance::polynomial() const { return MatrixPolynomial(coefficients); }

FamilyInstance assemble_family(Family tag, const FamilyParams& params, std::uint64_t seed) {
  if (params.n < 1) throw std::invalid_argument("family dimension must be >= 1");
  FamilyInstance inst;
  inst.tag = tag;
  inst.params = params;
  inst.seed = seed;
  PartSource src(params, seed, inst.parts);
  const Index n = params.n;
  const double a = params.a;
  const double b = params.b;
  const double c = params.c;
  const Region rhp = Region::halfplane(kPi / 2, true);
  const Region sector60 = Region::sector(0.0, kPi / 3, true);

  switch (tag) {
    case Family::mgt: {
      const CMatrix& r = src.get("R", [&](std::uint64_t s) -> CMatrix { return gen_psd(n, s) + 1e-3 * identity(n); });
      inst.coefficients = {c * r, b * r, a * identity(n), identity(n)};
      inst.expected_region = rhp;
      inst.claim = Claim::hyperstable;
      break;
    }
    case Family::subadd: {
      const CMatrix& a1 = src.get("A1", [&](std::uint64_t s) -> CMatrix {
        Rng rng(s, 1);
        return random_gaussian(n, n, rng) / std::sqrt(double(n));
      });
      const CMatrix& a2 = src.get("A2", [&](std::uint64_t s) -> CMatrix {
        Rng rng(s, 2);
        return random_gaussian(n, n, rng) / std::sqrt(double(n));
      });
      const double sum = params.r * spectral_norm(a1) + params.r * params.r * spectral_norm(a2);
      const CMatrix& a0 = src.get("A0", [&](std::uint64_t s) -> CMatrix {
        Rng rng(s, 0);
        CMatrix dg = CMatrix::Zero(n, n);
        const double base = sum > 0.0 ? params.margin * sum : 1.0;
        for (Index i = 0; i < n; ++i) dg(i, i) = base * (1.0 + rng.uniform());
        return random_unitary(n, s) * dg;
      });
      inst.coefficients = {a0, a1, a2};
      inst.expected_region = Region::disc(0.0, params.r, true);
      inst.claim = Claim::hyperstable;
      break;
    }
    case Family::ph_quadratic: {
      const CMatrix& r0 = src.psd("R0");
      const CMatrix& r1 = src.psd("R1");
      const CMatrix& r2 = src.psd("R2");
      const CMatrix& j = src.skew("J");
      inst.coefficients = {r0, j + r1, r2};
      inst.expected_region = rhp;
      inst.claim = Claim::hyperstable;
      break;
    }
    case Family::ph_corollary_q: {
      const CMatrix& q = src.get("Q", [&](std::uint64_t s) -> CMatrix {
        Rng rng(s, 3);
        CMatrix m = identity(n);
        for (Index i = 0; i < n; ++i) {
          for (Index k = i + 1; k < n; ++k) m(i, k) = 0.5 * rng.complex_normal();
        }
        return m;
      });
      const CMatrix& r = src.psd("R");
      const CMatrix& j = src.skew("J");
      const CMatrix qinv_h = q.adjoint().partialPivLu().inverse();
      const CMatrix& a2 = src.get("A2", [&](std::uint64_t s) -> CMatrix { return qinv_h * gen_psd(n, s); });
      const CMatrix& a0 = src.get("A0", [&](std::uint64_t s) -> CMatrix { return qinv_h * gen_psd(n, s); });
      inst.coefficients = {a0, (j + r) * q, a2};
      inst.expected_region = rhp;
      inst.claim = Claim::hyperstable;
      break;
    }
    case Family::psd_cubic_sector: {
      const CMatrix& a0 = src.get("A0", [&](std::uint64_t s) -> CMatrix {
        Rng rng(s, 4);
        return hermitian_part(random_gaussian(n, n, rng));
      });
      const CMatrix& g = src.skew("G", true);
      const CMatrix& r1 = src.psd("R1");
      const CMatrix& r2 = src.psd("R2");
      const CMatrix& r3 = src.psd("R3");
      inst.coefficients = {a0 + g, r1, r2, r3};
      inst.expected_region = sector60;
      inst.claim = Claim::stable;
      break;
    }
    case Family::palindromic_psd_cubic: {
      const CMatrix& r0 = src.psd("R0");
      const CMatrix& r1 = src.psd("R1");
      const CMatrix& r2 = src.psd("R2");
      inst.coefficients = {r0, r1, r2, r0};
      inst.expected_region = sector60;
      inst.claim = Claim::hyperstable;
      break;
    }
    case Family::angle_cubic: {
      const CMatrix& r0 = src.psd("R0");
      const CMatrix& r1 = src.psd("R1");
      const CMatrix& r2 = src.psd("R2");
      const CMatrix& j = src.skew("J");
      inst.coefficients = {r0, r1 + j, r1 + j, r2};
      inst.expected_region = Region::intersection_of(
          {Region::sector(-kPi / 4, kPi / 4, true), Region::complement_of(Region::point(0.0))});
      inst.claim = Claim::hyperstable;
      break;
    }
    case Family::pencil_aj: {
      const CMatrix& r0 = src.psd("R0");
      const CMatrix& r1 = src.psd("R1");
      const CMatrix& j = src.skew("J");
      inst.coefficients = {r0 + a * j, r1 + j};
      inst.expected_region = rhp;
      inst.claim = Claim::stable;
      break;
    }
  }
  return inst;
}

bool is_psd(const CMatrix& m) {
  const double scale = std::max(m.norm(), 1e-300);
  if ((m - m.adjoint()).norm() > 1e-12 * scale) return false;
  const auto ev = hermitian_eigenvalues(hermitian_part(m));
  return ev.front() >= -1e-10 * scale;
}

bool is_skew(const CMatrix& m) { return (m + m.adjoint()).norm() <= 1e-12 * std::max(m.norm(), 1.0); }

bool kernels_trivial(const std::vector<CMatrix>& ms) {
  if (ms.empty()) return false;
  const Index n = ms[0].cols();
  CMatrix stacked(n * static_cast<Index>(ms.size()), n);
  for (std::size_t k = 0; k < ms.size(); ++k) stacked.middleRows(static_cast<Index>(k) * n, n) = ms[k];
  const double scale = spectral_norm(stacked);
  if (scale == 0.0) return false;
  Eigen::JacobiSVD<CMatrix> svd(stacked);
  return svd.singularValues()(n - 1) > 1e-10 * scale;
}

HypothesisReport check_family_hypotheses(const FamilyInstance& inst) {
  HypothesisReport rep;
  auto add = [&](const std::string& name, bool ok, const std::string& detail = "") {
    rep.checks.push_back({name, ok, detail});
  };
  const auto& p = inst.parts;
  auto part = [&](const char* name) -> const CMatrix& { return p.at(name); };
  const double a = inst.params.a;

  switch (inst.tag) {
    case Family::mgt: {
      add("a > 1", a > 1.0);
      add("b > c > 0", inst.params.b > inst.params.c && inst.params.c > 0.0);
      const CMatrix& r = part("R");
      const bool pd = is_psd(r) && hermitian_eigenvalues(hermitian_part(r)).front() > 1e-12 * r.norm();
      add("R positive definite", pd);
      break;
    }
    case Family::subadd: {
      const double r = inst.params.r;
      add("r > 0", r > 0.0);
      const double lhs = r * spectral_norm(part("A1")) + r * r * spectral_norm(part("A2"));
      const double rhs = sigma_min(part("A0"));
      std::ostringstream os;
      os << lhs << " < " << rhs;
      add("r||A1|| + r^2||A2|| < sigma_min(A0)", lhs < rhs, os.str());
      break;
    }
    case Family::ph_quadratic:
      add("R0 PSD", is_psd(part("R0")));
      add("R1 PSD", is_psd(part("R1")));
      add("R2 PSD", is_psd(part("R2")));
      add("J skew-Hermitian", is_skew(part("J")));
      add("common kernel trivial", kernels_trivial({part("R0"), part("R1"), part("R2"), part("J")}));
      break;
    case Family::ph_corollary_q: {
      const CMatrix& q = part("Q");
      const bool inv = sigma_min(q) > 1e-10 * spectral_norm(q);
      add("Q invertible", inv);
      const CMatrix qa2 = q.adjoint() * part("A2");
      const CMatrix qa0 = q.adjoint() * part("A0");
      add("Q^H A2 PSD", is_psd(qa2));
      add("Q^H A0 PSD", is_psd(qa0));
      add("R PSD", is_psd(part("R")));
      add("J skew-Hermitian", is_skew(part("J")));
      add("common kernel trivial",
          kernels_trivial({qa0, q.adjoint() * part("R") * q, q.adjoint() * part("J") * q, qa2}));
      break;
    }
    case Family::psd_cubic_sector: {
      const CMatrix& g = part("G");
      add("R1 PSD", is_psd(part("R1")));
      add("R2 PSD", is_psd(part("R2")));
      add("R3 PSD", is_psd(part("R3")));
      const CMatrix& a0 = part("A0");
      add("A0 Hermitian", (a0 - a0.adjoint()).norm() <= 1e-12 * std::max(a0.norm(), 1.0));
      add("G skew-Hermitian", is_skew(g));
      add("-iG PSD", is_psd(hermitian_part(cplx(0.0, -1.0) * g)));
      add("common kernel trivial", kernels_trivial({g, a0, part("R1"), part("R2"), part("R3")}));
      break;
    }
    case Family::palindromic_psd_cubic:
      add("R0 PSD", is_psd(part("R0")));
      add("R1 PSD", is_psd(part("R1")));
      add("R2 PSD", is_psd(part("R2")));
      add("common kernel trivial", kernels_trivial({part("R0"), part("R1"), part("R2")}));
      break;
    case Family::angle_cubic:
      add("R0 PSD", is_psd(part("R0")));
      add("R1 PSD", is_psd(part("R1")));
      add("R2 PSD", is_psd(part("R2")));
      add("J skew-Hermitian", is_skew(part("J")));
      add("common kernel trivial", kernels_trivial({part("R0"), part("R1"), part("R2"), part("J")}));
      break;
    case Family::pencil_aj:
      add("a >= 0", a >= 0.0);
      add("R0 PSD", is_psd(part("R0")));
      add("R1 PSD", is_psd(part("R1")));
      add("J skew-Hermitian", is_skew(part("J")));
      add("common kernel trivial", kernels_trivial({part("R0"), part("R1"), part("J")}));
      break;
  }
  for (const auto& c : rep.checks) {
    if (!c.ok) {
      rep.verdict.outcome = Outcome::violated;
      if (!rep.verdict.detail.empty()) rep.verdict.detail += "; ";
      rep.verdict.detail += c.name;
    }
  }
  return rep;
}

FamilyInstance make_family(Family tag, const FamilyParams& params, std::uint64_t seed) {
  FamilyInstance inst = assemble_family(tag, params, seed);
  const HypothesisReport rep = check_family_hypotheses(inst);
  if (rep.verdict.violated()) {
    throw std::invalid_argument(std::string(to_string(tag)) + ": hypotheses fail: " + rep.verdict.detail);
  }
  return inst;
}

MatrixPolynomial angle_cubic_generator(const FamilyInstance& inst) {
  if (inst.tag != Family::angle_cubic) throw std::invalid_argument("angle_cubic_generator: wrong family");
  const auto& p = inst.parts;
  return MatrixPolynomial({p.at("R0"), 2.0 * (p.at("R1") + p.at("J")), p.at("R2")});
}

std::vector<Companion> family_companions(const FamilyInstance& inst) {
  const Index n = inst.params.n;
  std::vector<Companion> out;
  const auto& p = inst.parts;
  if (inst.tag == Family::ph_quadratic) {
    MultivariateMatrixPolynomial m(n, 2);
    m.add_term({1, 1}, p.at("R2"));
    m.add_term({0, 1}, p.at("J") + p.at("R1"));
    m.add_term({0, 0}, p.at("R0"));
    out.push_back({"z1 z2 R2 + z2 (J + R1) + R0", std::move(m), Region::halfplane(kPi / 2, true)});
  } else if (inst.tag == Family::subadd) {
    MultivariateMatrixPolynomial m(n, 2);
    m.add_term({2, 0}, p.at("A2"));
    m.add_term({0, 1}, p.at("A1"));
    m.add_term({0, 0}, p.at("A0"));
    out.push_back({"z1^2 A2 + z2 A1 + A0", std::move(m), Region::disc(0.0, inst.params.r, true)});
  } else if (inst.tag == Family::psd_cubic_sector) {
    const CMatrix& r1 = p.at("R1");
    const CMatrix& r2 = p.at("R2");
    const CMatrix& r3 = p.at("R3");
    const CMatrix a0g = p.at("A0") + p.at("G");
    MultivariateMatrixPolynomial p1(n, 2);
    p1.add_term({3, 3}, r3);
    p1.add_term({3, 0}, r3);
    p1.add_term({0, 3}, r3);
    p1.add_term({2, 3}, r2);
    p1.add_term({2, 0}, r2);
    p1.add_term({3, 1}, r1);
    p1.add_term({0, 1}, r1);
    p1.add_term({0, 0}, a0g);
    out.push_back({"P1", std::move(p1), Region::sector(0.0, kPi / 6, true)});
    MultivariateMatrixPolynomial p2(n, 2);
    p2.add_term({0, 3}, r3);
    p2.add_term({1, 1}, r2);
    p2.add_term({0, 1}, r1);
    p2.add_term({0, 0}, a0g);
    out.push_back({"P2", std::move(p2), Region::sector(0.0, kPi / 3, true)});
    MultivariateMatrixPolynomial p3(n, 2);
    p3.add_term({1, 3}, r3);
    p3.add_term({1, 2}, r2);
    p3.add_term({0, 2}, r1);
    p3.add_term({1, 0}, a0g);
    out.push_back({"P3", std::move(p3), Region::sector(0.0, kPi / 4, true)});
  }
  return out;
}

ClaimReport verify_family_claim(const FamilyInstance& inst, const ClaimOptions& opt, std::uint64_t seed) {
  ClaimReport rep;
  auto add = [&](const std::string& name, bool ok, const std::string& detail) {
    rep.checks.push_back({name, ok, detail});
    rep.ok = rep.ok && ok;
  };
  const MatrixPolynomial p = inst.polynomial();
  const Region& d = inst.expected_region;

  rep.eigen = eigenvalues(p);
  if (!rep.eigen.regular) {
    add("regular", false, "determinant vanishes identically");
    return rep;
  }
  const StabilityVerdict sv = classify_points(rep.eigen.eigenvalues.roots, d);
  {
    std::ostringstream os;
    os << rep.eigen.eigenvalues.size() << " eigenvalues vs " << to_string(d) << ": " << to_string(sv.outcome);
    if (!sv.witness.empty()) os << " at " << sv.witness[0];
    add("eigenvalues avoid the region", sv.holds(), os.str());
  }

  if (inst.tag == Family::mgt) {
    const auto f = pencil_form_detect(p);
    add("p(lambda) A + q(lambda) B form", f.has_value(), f ? "detected" : "coefficient rank exceeds 2");
  }

  if (inst.claim == Claim::hyperstable) {
    rep.survey = hyper_survey(p, d, opt.nx, opt.budget, seed, opt.threads);
    std::ostringstream os;
    os << rep.survey->certified() << "/" << rep.survey->sampled() << " certified, " << to_string(rep.survey->verdict);
    add("hyperstability survey", rep.survey->verdict == SurveyVerdict::all_certified, os.str());
  }

  if (inst.tag == Family::angle_cubic) {
    // the route through the quadratic generator and the degree transform
    const MatrixPolynomial gen = angle_cubic_generator(inst);
    const Region rhp = Region::halfplane(kPi / 2, true);
    const HyperSurveyReport s = hyper_survey(gen, rhp, opt.nx, opt.budget, seed, opt.threads);
    std::size_t moved = 0;
    for (const auto& e : s.entries) {
      if (e.certificate && verify_certificate(p, e.x, e.certificate->y, d)) ++moved;
    }
    std::ostringstream os;
    os << moved << "/" << s.sampled() << " generator certificates certify the cubic";
    add("degree-transform transfer", moved == s.sampled(), os.str());
  }

  if (inst.tag == Family::ph_corollary_q) {
    const CMatrix& q = inst.parts.at("Q");
    const MatrixPolynomial reduced = p.sandwich(q.adjoint(), CMatrix::Identity(p.n(), p.n()));
    const HyperSurveyReport s = hyper_survey(reduced, d, opt.nx, opt.budget, seed, opt.threads);
    std::size_t moved = 0;
    for (const auto& e : s.entries) {
      if (e.certificate && verify_certificate(p, e.x, q * e.certificate->y, d)) ++moved;
    }
    std::ostringstream os;
    os << moved << "/" << s.sampled() << " certificates of Q^H P map to P via y -> Q y";
    add("Q^H P reduction", moved == s.sampled(), os.str());
  }

  std::uint64_t k = 0;
  for (const Companion& c : family_companions(inst)) {
    const StabilityVerdict v =
        mv_stability_sample(c.poly, Region::power_of(c.region, 2), opt.samples, mix_seed(seed, 0x6D76 + k++));
    std::ostringstream os;
    os << to_string(v.outcome) << ", min relative sigma " << v.min_sigma;
    add(c.name + " over " + to_string(c.region) + "^2", !v.violated(), os.str());
  }
  return rep;
}

}  // namespace polystab
