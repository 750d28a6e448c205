// polystab: command-line front end for the polystab library.
//
// Exit codes: 0 stable / certified / passed, 1 violated or failed,
// 2 inconclusive, 3 singular (irregular) input, 64 usage, 65 malformed
// input, 66 missing file, 70 internal error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "polystab/hyperstability.hpp"
#include "polystab/io.hpp"
#include "polystab/polarization.hpp"
#include "polystab/suites.hpp"

#ifndef POLYSTAB_VERSION
#define POLYSTAB_VERSION "0.0.0"
#endif

namespace ps = polystab;
using ps::Json;

namespace {

enum Exit : int {
  kStable = 0,
  kViolated = 1,
  kInconclusive = 2,
  kIrregular = 3,
  kUsage = 64,
  kDataErr = 65,
  kNoInput = 66,
  kSoftware = 70,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string file;
  std::string region;
  std::uint64_t seed = 0;
  int samples = 200;
  int budget = 200;
  int threads = 1;
  std::string format = "text";
  double tol = ps::kBoundaryTol;
  bool no_timing = false;

  int nx = 20;
  int kappa = 2;
  int grid = 20;
  double extent = 5.0;
  std::vector<std::string> suites;
  bool list = false;

  std::string family;
  ps::FamilyParams params;
  std::string out;
};

// Everything a command prints: a JSON body and the same content as text.
struct Report {
  Json body;
  std::ostringstream text;
  int exit = kStable;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string fmt(ps::cplx z) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g%+.12gi", z.real(), z.imag());
  return buf;
}

Json cjson(ps::cplx z) { return Json::array({z.real(), z.imag()}); }

Json vjson(const ps::CVector& v) {
  Json a = Json::array();
  for (ps::Index i = 0; i < v.size(); ++i) a.push_back(cjson(v(i)));
  return a;
}

std::string vtext(const ps::CVector& v) {
  std::string s = "(";
  for (ps::Index i = 0; i < v.size(); ++i) s += (i ? ", " : "") + fmt(v(i));
  return s + ")";
}

struct Input {
  ps::Instance instance;
  std::string digest;
};

Input load(const std::string& path) {
  if (path.empty()) throw UsageError("an instance file is required");
  const std::string bytes = ps::read_file(path);
  Json j;
  try {
    j = Json::parse(bytes);
  } catch (const Json::parse_error& e) {
    throw ps::ParseError(path + ": " + e.what());
  }
  return {ps::instance_from_json(j), ps::fnv1a_hex(bytes)};
}

const ps::MatrixPolynomial& univariate(const Input& in, const char* command) {
  if (!in.instance.univariate) throw ps::ParseError(std::string(command) + " needs a one-variable instance");
  return *in.instance.univariate;
}

std::optional<ps::Region> region_of(const Options& o) {
  if (o.region.empty()) return std::nullopt;
  try {
    return ps::parse_region(o.region);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--region: ") + e.what());
  }
}

ps::Region require_region(const Options& o, const char* command) {
  auto d = region_of(o);
  if (!d) throw UsageError(std::string(command) + " needs --region");
  return *d;
}

int outcome_exit(ps::Outcome o) {
  switch (o) {
    case ps::Outcome::holds:
      return kStable;
    case ps::Outcome::violated:
      return kViolated;
    case ps::Outcome::inconclusive:
      return kInconclusive;
  }
  return kSoftware;
}

void header(Report& r, const std::string& command, const Options& o, const std::string& digest) {
  r.body["command"] = command;
  r.body["version"] = POLYSTAB_VERSION;
  r.body["seed"] = o.seed;
  if (!digest.empty()) {
    r.body["input"] = {{"path", o.file}, {"digest", digest}};
  }
}

void verdict_json(Json& j, const ps::StabilityVerdict& v) {
  j["outcome"] = ps::to_string(v.outcome);
  if (!v.witness.empty()) {
    Json w = Json::array();
    for (const auto& z : v.witness) w.push_back(cjson(z));
    j["witness"] = std::move(w);
  }
  if (!std::isnan(v.min_sigma)) j["min_sigma"] = v.min_sigma;
  j["evidence_only"] = v.evidence_only;
  if (!v.detail.empty()) j["detail"] = v.detail;
}

void verdict_text(std::ostream& os, const ps::StabilityVerdict& v) {
  os << "verdict: " << ps::to_string(v.outcome);
  if (v.evidence_only) os << " (sampling evidence only)";
  os << "\n";
  for (const auto& z : v.witness) os << "  witness " << fmt(z) << "\n";
  if (!v.detail.empty()) os << "  " << v.detail << "\n";
}

// ------------------------------------------------------------------ commands

void cmd_eig(const Options& o, Report& r) {
  const Input in = load(o.file);
  header(r, "eig", o, in.digest);
  const auto d = region_of(o);
  if (d) r.body["region"] = ps::to_string(*d);

  if (in.instance.multivariate) {
    if (!d) throw UsageError("eig on a multivariate instance needs --region");
    const auto& p = *in.instance.multivariate;
    const ps::Region dk = d->kind == ps::RegionKind::power ? *d : ps::Region::power_of(*d, p.arity());
    const ps::StabilityVerdict v = ps::mv_stability_sample(p, dk, o.samples, o.seed);
    Json vj;
    verdict_json(vj, v);
    r.body["verdict"] = std::move(vj);
    r.text << "multivariate instance, " << p.arity() << " variables, " << o.samples << " samples over "
           << ps::to_string(dk) << "\n";
    verdict_text(r.text, v);
    r.exit = outcome_exit(v.outcome);
    return;
  }

  const ps::MatrixPolynomial& p = univariate(in, "eig");
  const ps::EigenReport ev = ps::eigenvalues(p);
  r.body["n"] = p.n();
  r.body["degree"] = p.degree();
  r.body["regular"] = ev.regular;
  r.text << "n = " << p.n() << ", degree " << p.degree() << "\n";
  if (!ev.regular) {
    r.body["verdict"] = {{"outcome", "irregular"}};
    r.text << "singular: det P vanishes identically\n";
    r.exit = kIrregular;
    return;
  }
  r.body["drop_in_degree"] = ev.drop_in_degree;
  Json eigs = Json::array();
  for (std::size_t i = 0; i < ev.eigenvalues.size(); ++i) {
    eigs.push_back({{"value", cjson(ev.eigenvalues.roots[i])}, {"residual", ev.eigenvalues.residuals[i]}});
  }
  r.body["eigenvalues"] = std::move(eigs);
  if (ev.eigenvalues.size() == 0) {
    r.text << "regular, no finite eigenvalues";
  } else {
    r.text << "regular, " << ev.eigenvalues.size() << " finite eigenvalues";
  }
  r.text << ", drop in degree " << ev.drop_in_degree << "\n";
  for (const auto& z : ev.eigenvalues.roots) r.text << "  " << fmt(z) << "\n";
  if (d) {
    const ps::StabilityVerdict v = ps::is_stable(p, *d, o.tol);
    Json vj;
    verdict_json(vj, v);
    r.body["verdict"] = std::move(vj);
    r.text << "region " << ps::to_string(*d) << "\n";
    verdict_text(r.text, v);
    r.exit = outcome_exit(v.outcome);
  }
}

void cmd_hyper(const Options& o, Report& r) {
  const Input in = load(o.file);
  header(r, "hyper", o, in.digest);
  const ps::Region d = require_region(o, "hyper");
  const ps::MatrixPolynomial& p = univariate(in, "hyper");
  r.body["region"] = ps::to_string(d);
  r.body["nx"] = o.nx;
  r.body["budget"] = o.budget;
  if (!ps::eigenvalues(p).regular) {
    r.body["verdict"] = "irregular";
    r.text << "singular: det P vanishes identically, no certificate can exist\n";
    r.exit = kIrregular;
    return;
  }
  const ps::HyperSurveyReport s = ps::hyper_survey(p, d, o.nx, o.budget, o.seed, o.threads, o.tol);
  Json entries = Json::array();
  r.text << "region " << ps::to_string(d) << ", " << s.sampled() << " x (" << p.n() << " basis + " << o.nx
         << " random), budget " << o.budget << "\n";
  for (std::size_t i = 0; i < s.entries.size(); ++i) {
    const ps::SurveyEntry& e = s.entries[i];
    Json ej;
    ej["x"] = vjson(e.x);
    ej["candidates_tried"] = e.candidates_tried;
    r.text << "x[" << i << "] ";
    if (e.certificate) {
      const ps::Certificate& c = *e.certificate;
      ej["certified"] = true;
      ej["method"] = c.method;
      ej["y"] = vjson(c.y);
      Json roots = Json::array();
      for (const auto& z : c.roots.roots) roots.push_back(cjson(z));
      ej["scalar_roots"] = std::move(roots);
      r.text << "certified by " << c.method << ", y = " << vtext(c.y) << "\n";
    } else {
      ej["certified"] = false;
      ej["diagnostic"] = e.diagnostic;
      r.text << "no certificate: " << e.diagnostic << "\n";
    }
    entries.push_back(std::move(ej));
  }
  r.body["entries"] = std::move(entries);
  r.body["certified"] = s.certified();
  r.body["verdict"] = ps::to_string(s.verdict);
  if (s.candidate) r.body["candidate"] = vjson(*s.candidate);
  r.text << "verdict: " << ps::to_string(s.verdict) << " (" << s.certified() << "/" << s.sampled() << " certified)\n";
  if (s.candidate) r.text << "  candidate x = " << vtext(*s.candidate) << "\n";
  // a candidate is not a disproof, so it shares the inconclusive code
  r.exit = s.verdict == ps::SurveyVerdict::all_certified ? kStable : kInconclusive;
}

void cmd_polarize(const Options& o, Report& r) {
  const Input in = load(o.file);
  const ps::MatrixPolynomial& p = univariate(in, "polarize");
  try {
    const ps::PolarizedPolynomial t = ps::polarize(p, o.kappa);
    Json j = ps::to_json(t.result);
    j["metadata"] = {{"command", "polarize"}, {"kappa", o.kappa}, {"input_digest", in.digest}};
    r.body = std::move(j);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
}

void cmd_numrange(const Options& o, Report& r) {
  const Input in = load(o.file);
  header(r, "numrange", o, in.digest);
  const ps::MatrixPolynomial& p = univariate(in, "numrange");
  const ps::NumericalRangeSample w = ps::numerical_range_sample(p, o.samples, o.seed);
  Json pts = Json::array();
  r.text << "re,im,generator\n";
  for (std::size_t i = 0; i < w.points.size(); ++i) {
    pts.push_back({{"z", cjson(w.points[i])}, {"generator", w.generator[i]}});
    r.text << fmt(w.points[i].real()) << "," << fmt(w.points[i].imag()) << "," << w.generator[i] << "\n";
  }
  r.body["points"] = std::move(pts);
}

void cmd_szasz(const Options& o, Report& r) {
  const Input in = load(o.file);
  header(r, "szasz", o, in.digest);
  const ps::MatrixPolynomial& p = univariate(in, "szasz");
  if (o.grid < 2) throw UsageError("--grid must be at least 2");
  Json rows = Json::array();
  int violations = 0;
  r.text << "re,im,norm,bound\n";
  for (int gx = 0; gx < o.grid; ++gx) {
    for (int gy = 0; gy < o.grid; ++gy) {
      const ps::cplx z(-o.extent + 2 * o.extent * gx / (o.grid - 1), -o.extent + 2 * o.extent * gy / (o.grid - 1));
      const double norm = ps::spectral_norm(p.eval(z));
      const double bound = ps::szasz_bound(p, z);
      violations += norm > bound * (1.0 + 1e-9);
      rows.push_back({{"z", cjson(z)}, {"norm", norm}, {"bound", bound}});
      r.text << fmt(z.real()) << "," << fmt(z.imag()) << "," << fmt(norm) << "," << fmt(bound) << "\n";
    }
  }
  r.body["grid"] = std::move(rows);
  r.body["violations"] = violations;
  // the bound only holds when W(P) lies in the closed upper half-plane
  r.exit = violations ? kViolated : kStable;
}

void cmd_verify(const Options& o, Report& r) {
  header(r, "verify", o, "");
  if (o.list) {
    Json names = Json::array();
    for (const auto& s : ps::suite_catalog()) {
      names.push_back({{"suite", s.name}, {"title", s.title}, {"budget_seconds", s.budget_seconds}});
      r.text << s.name << "  " << s.title << " (budget " << s.budget_seconds << " s)\n";
    }
    r.body["suites"] = std::move(names);
    return;
  }
  std::vector<std::string> names = o.suites;
  if (names.empty()) {
    for (const auto& s : ps::suite_catalog()) names.push_back(s.name);
  }
  ps::SuiteOptions so{o.seed, o.threads};
  Json results = Json::array();
  int failed = 0;
  for (const auto& name : names) {
    ps::SuiteResult res;
    try {
      res = ps::run_suite(name, so);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
    failed += !res.passed;
    results.push_back(ps::suite_to_json(res, !o.no_timing));
    r.text << ps::format_suite(res, !o.no_timing);
  }
  r.body["suites"] = std::move(results);
  r.body["passed"] = failed == 0;
  r.text << (failed ? "FAILED: " + std::to_string(failed) + " of " : "passed: all ") << names.size() << " suites\n";
  r.exit = failed ? kViolated : kStable;
}

void cmd_gen(const Options& o, Report& r) {
  ps::Family f;
  try {
    f = ps::parse_family(o.family);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  ps::FamilyInstance inst;
  try {
    inst = ps::make_family(f, o.params, o.seed);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  r.body = ps::family_to_json(inst);
}

int emit(const Report& r, const Options& o, const std::string& command, double seconds) {
  const bool raw_json = command == "polarize" || command == "gen";
  std::string out;
  if (raw_json) {
    out = r.body.dump(2) + "\n";
  } else if (o.format == "json") {
    Json j = r.body;
    j["exit_code"] = r.exit;
    if (!o.no_timing) j["timing"] = {{"seconds", seconds}};
    out = j.dump(2) + "\n";
  } else {
    out = r.text.str();
    const bool csv = command == "numrange" || command == "szasz";
    if (!csv) {
      std::ostringstream tail;
      tail << "seed " << o.seed << ", polystab " << POLYSTAB_VERSION;
      if (r.body.contains("input")) tail << ", input " << r.body["input"]["digest"].get<std::string>();
      if (!o.no_timing) tail << ", " << fmt(seconds) << " s";
      out += tail.str() + "\n";
    }
  }
  if (o.out.empty()) {
    std::cout << out;
  } else {
    std::ofstream f(o.out, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + o.out);
    f << out;
  }
  return r.exit;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stability and hyperstability of matrix polynomials"};
  app.set_version_flag("--version", POLYSTAB_VERSION);
  app.require_subcommand(1);
  Options o;

  auto common = [&](CLI::App* c, bool with_file) {
    if (with_file) c->add_option("file", o.file, "instance JSON")->required();
    c->add_option("--region", o.region, "region, e.g. disc:c=0+0i,r=1,closed or halfplane:phi=1.5708,open");
    c->add_option("--seed", o.seed, "seed for all randomness");
    c->add_option("--threads", o.threads, "worker threads")->check(CLI::PositiveNumber);
    c->add_option("--format", o.format, "json or text")->check(CLI::IsMember({"json", "text"}));
    c->add_option("--tol", o.tol, "boundary tolerance")->check(CLI::NonNegativeNumber);
    c->add_flag("--no-timing", o.no_timing, "omit timings so reports compare byte for byte");
    c->add_option("-o,--out", o.out, "write to a file instead of stdout");
  };

  auto* eig = app.add_subcommand("eig", "eigenvalues and stability on a region");
  common(eig, true);
  eig->add_option("--samples", o.samples, "samples for multivariate instances")->check(CLI::PositiveNumber);

  auto* hyper = app.add_subcommand("hyper", "hyperstability survey with certificates");
  common(hyper, true);
  hyper->add_option("--nx", o.nx, "random x in addition to the basis vectors")->check(CLI::PositiveNumber);
  hyper->add_option("--budget", o.budget, "candidate y per x (0: no search)")->check(CLI::NonNegativeNumber);

  auto* polarize = app.add_subcommand("polarize", "polarization as a multivariate instance");
  common(polarize, true);
  polarize->add_option("--kappa", o.kappa, "number of variables")->check(CLI::PositiveNumber);

  auto* numrange = app.add_subcommand("numrange", "numerical range point cloud (CSV)");
  common(numrange, true);
  numrange->add_option("--samples", o.samples, "unit vectors x")->check(CLI::PositiveNumber);

  auto* szasz = app.add_subcommand("szasz", "norm bound on a grid (CSV)");
  common(szasz, true);
  szasz->add_option("--grid", o.grid, "points per side");
  szasz->add_option("--extent", o.extent, "grid covers [-e, e]^2")->check(CLI::PositiveNumber);

  auto* verify = app.add_subcommand("verify", "run the reproduction suites");
  common(verify, false);
  verify->add_option("suite", o.suites, "suite names (default: all)");
  verify->add_flag("--list", o.list, "list suites");

  auto* gen = app.add_subcommand("gen", "seeded instance of a structured family");
  common(gen, false);
  gen->add_option("family", o.family, "family tag")->required();
  gen->add_option("--n", o.params.n, "matrix size")->check(CLI::PositiveNumber);
  gen->add_option("--a", o.params.a, "family parameter a");
  gen->add_option("--b", o.params.b, "family parameter b");
  gen->add_option("--c", o.params.c, "family parameter c");
  gen->add_option("--r", o.params.r, "disc radius")->check(CLI::PositiveNumber);
  gen->add_option("--margin", o.params.margin, "dominance margin")->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  const auto t0 = std::chrono::steady_clock::now();
  try {
    Report r;
    if (command == "eig") cmd_eig(o, r);
    if (command == "hyper") cmd_hyper(o, r);
    if (command == "polarize") cmd_polarize(o, r);
    if (command == "numrange") cmd_numrange(o, r);
    if (command == "szasz") cmd_szasz(o, r);
    if (command == "verify") cmd_verify(o, r);
    if (command == "gen") cmd_gen(o, r);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return emit(r, o, command, seconds);
  } catch (const UsageError& e) {
    std::cerr << "polystab: " << e.what() << "\n";
    return kUsage;
  } catch (const ps::MissingFile& e) {
    std::cerr << "polystab: " << e.what() << "\n";
    return kNoInput;
  } catch (const ps::ParseError& e) {
    std::cerr << "polystab: malformed input: " << e.what() << "\n";
    return kDataErr;
  } catch (const std::invalid_argument& e) {
    std::cerr << "polystab: " << e.what() << "\n";
    return kDataErr;
  } catch (const std::domain_error& e) {
    std::cerr << "polystab: " << e.what() << "\n";
    return kDataErr;
  } catch (const std::exception& e) {
    std::cerr << "polystab: internal error: " << e.what() << "\n";
    return kSoftware;
  }
}
