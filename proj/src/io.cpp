#include "polystab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace polystab {

namespace {

Json complex_to_json(cplx z) { return Json::array({z.real(), z.imag()}); }

cplx complex_from_json(const Json& j) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw ParseError("expected a number or a [re, im] pair, got " + j.dump());
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

int int_field(const Json& j, const char* key) {
  const Json& v = field(j, key);
  if (!v.is_number_integer()) throw ParseError(std::string("field \"") + key + "\" must be an integer");
  return v.get<int>();
}

double number_field(const Json& j, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const Json& v = j.at(key);
  if (!v.is_number()) throw ParseError(std::string("field \"") + key + "\" must be a number");
  return v.get<double>();
}

bool open_field(const Json& j, bool fallback) {
  if (!j.contains("open")) return fallback;
  if (!j.at("open").is_boolean()) throw ParseError("field \"open\" must be a boolean");
  return j.at("open").get<bool>();
}

std::vector<int> exponent_from_json(const Json& j, int arity) {
  if (!j.is_array() || static_cast<int>(j.size()) != arity) throw ParseError("exponent must list one entry per variable");
  std::vector<int> e;
  for (const auto& v : j) {
    if (!v.is_number_integer() || v.get<int>() < 0) throw ParseError("exponents must be nonnegative integers");
    e.push_back(v.get<int>());
  }
  return e;
}

}  // namespace

Json matrix_to_json(const CMatrix& m) {
  Json rows = Json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
    rows.push_back(std::move(row));
  }
  return rows;
}

CMatrix matrix_from_json(const Json& j, Index n) {
  if (!j.is_array() || static_cast<Index>(j.size()) != n) throw ParseError("matrix must have n rows");
  CMatrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) throw ParseError("matrix rows must have n entries");
    for (Index k = 0; k < n; ++k) m(i, k) = complex_from_json(row[k]);
  }
  if (!m.allFinite()) throw ParseError("matrix entries must be finite");
  return m;
}

Json to_json(const MatrixPolynomial& p) {
  Json j;
  j["n"] = p.n();
  j["degree"] = p.degree();
  Json cs = Json::array();
  for (const auto& a : p.coeffs()) cs.push_back(matrix_to_json(a));
  j["coefficients"] = std::move(cs);
  return j;
}

Json to_json(const MultivariateMatrixPolynomial& p) {
  Json j;
  j["n"] = p.n();
  j["variables"] = p.arity();
  Json terms = Json::array();
  for (const auto& [alpha, m] : p.terms()) {
    Json t;
    t["exponent"] = alpha;
    t["matrix"] = matrix_to_json(m);
    terms.push_back(std::move(t));
  }
  j["terms"] = std::move(terms);
  return j;
}

Instance instance_from_json(const Json& j) {
  if (!j.is_object()) throw ParseError("instance must be a JSON object");
  const int n = int_field(j, "n");
  if (n < 1) throw ParseError("n must be >= 1");
  Instance inst;
  if (j.contains("metadata")) inst.metadata = j.at("metadata");
  try {
    if (j.contains("coefficients")) {
      const Json& cs = j.at("coefficients");
      if (!cs.is_array() || cs.empty()) throw ParseError("coefficients must be a nonempty array");
      if (j.contains("degree") && int_field(j, "degree") + 1 != static_cast<int>(cs.size())) {
        throw ParseError("degree does not match the number of coefficients");
      }
      std::vector<CMatrix> a;
      for (const auto& m : cs) a.push_back(matrix_from_json(m, n));
      inst.univariate.emplace(std::move(a));
      return inst;
    }
    const int arity = int_field(j, "variables");
    if (arity < 1) throw ParseError("variables must be >= 1");
    const Json& terms = field(j, "terms");
    if (!terms.is_array()) throw ParseError("terms must be an array");
    MultivariateMatrixPolynomial p(n, arity);
    for (const auto& t : terms) p.add_term(exponent_from_json(field(t, "exponent"), arity), matrix_from_json(field(t, "matrix"), n));
    if (arity == 1) {
      // a one-variable term list is an ordinary matrix polynomial
      inst.univariate = p.restrict_to(0, {0.0});
    } else {
      inst.multivariate = std::move(p);
    }
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  return inst;
}

Json instance_to_json(const Instance& inst) {
  Json j = inst.univariate ? to_json(*inst.univariate) : to_json(*inst.multivariate);
  if (!inst.metadata.is_null()) j["metadata"] = inst.metadata;
  return j;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw MissingFile("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

Instance load_instance(const std::string& path) {
  const std::string text = read_file(path);
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ParseError(path + ": " + e.what());
  }
  return instance_from_json(j);
}

void save_instance(const Instance& inst, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << instance_to_json(inst).dump(2) << "\n";
}

Json region_to_json(const Region& d) {
  Json j;
  switch (d.kind) {
    case RegionKind::disc:
      j["kind"] = "disc";
      j["center"] = complex_to_json(d.center);
      j["radius"] = d.radius;
      j["open"] = d.open;
      break;
    case RegionKind::halfplane:
      j["kind"] = "halfplane";
      j["phi"] = d.phi;
      if (d.offset != 0.0) j["offset"] = d.offset;
      j["open"] = d.open;
      break;
    case RegionKind::sector:
      j["kind"] = "sector";
      j["lo"] = d.lo;
      j["hi"] = d.hi;
      j["open"] = d.open;
      break;
    case RegionKind::ext_disc:
      j["kind"] = "ext-disc";
      j["center"] = complex_to_json(d.center);
      j["radius"] = d.radius;
      j["open"] = d.open;
      break;
    case RegionKind::point:
      j["kind"] = "point";
      j["center"] = complex_to_json(d.center);
      break;
    case RegionKind::complement:
      j["kind"] = "complement";
      j["of"] = region_to_json(d.parts.at(0));
      break;
    case RegionKind::intersection: {
      j["kind"] = "intersection";
      Json parts = Json::array();
      for (const auto& p : d.parts) parts.push_back(region_to_json(p));
      j["parts"] = std::move(parts);
      break;
    }
    case RegionKind::preimage: {
      j["kind"] = "preimage";
      Json c = Json::array();
      for (const cplx& v : d.poly.coeffs()) c.push_back(complex_to_json(v));
      j["poly"] = std::move(c);
      j["of"] = region_to_json(d.parts.at(0));
      break;
    }
    case RegionKind::power:
      j["kind"] = "power";
      j["of"] = region_to_json(d.parts.at(0));
      j["kappa"] = d.kappa;
      break;
  }
  return j;
}

Region region_from_json(const Json& j) {
  try {
    if (j.is_string()) return parse_region(j.get<std::string>());
    if (!j.is_object()) throw ParseError("region must be an object or a text spec");
    const Json& kind_j = field(j, "kind");
    if (!kind_j.is_string()) throw ParseError("region kind must be a string");
    const std::string kind = kind_j.get<std::string>();
    auto center = [&] { return j.contains("center") ? complex_from_json(j.at("center")) : cplx(0.0); };
    if (kind == "disc") return Region::disc(center(), number_field(j, "radius", 1.0), open_field(j, false));
    if (kind == "halfplane") {
      return Region::halfplane(number_field(j, "phi", 0.0), open_field(j, true), number_field(j, "offset", 0.0));
    }
    if (kind == "sector") {
      return Region::sector(number_field(j, "lo", 0.0), number_field(j, "hi", 0.0), open_field(j, true));
    }
    if (kind == "ext-disc") return Region::ext_disc(number_field(j, "radius", 1.0), open_field(j, true), center());
    if (kind == "point") return Region::point(center());
    if (kind == "complement") return Region::complement_of(region_from_json(field(j, "of")));
    if (kind == "intersection") {
      std::vector<Region> parts;
      for (const auto& p : field(j, "parts")) parts.push_back(region_from_json(p));
      return Region::intersection_of(std::move(parts));
    }
    if (kind == "preimage") {
      std::vector<cplx> c;
      for (const auto& v : field(j, "poly")) c.push_back(complex_from_json(v));
      return Region::preimage_of(Polynomial(std::move(c)), region_from_json(field(j, "of")));
    }
    if (kind == "power") return Region::power_of(region_from_json(field(j, "of")), int_field(j, "kappa"));
    throw ParseError("unknown region kind " + kind);
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

Json family_to_json(const FamilyInstance& inst) {
  Json j = to_json(inst.polynomial());
  Json meta;
  meta["family"] = to_string(inst.tag);
  Json params;
  params["n"] = inst.params.n;
  params["a"] = inst.params.a;
  params["b"] = inst.params.b;
  params["c"] = inst.params.c;
  params["r"] = inst.params.r;
  params["margin"] = inst.params.margin;
  meta["params"] = std::move(params);
  meta["seed"] = inst.seed;
  meta["expected_region"] = to_string(inst.expected_region);
  meta["claim"] = to_string(inst.claim);
  Json parts;
  for (const auto& [name, m] : inst.parts) parts[name] = matrix_to_json(m);
  meta["parts"] = std::move(parts);
  j["metadata"] = std::move(meta);
  return j;
}

std::string fnv1a_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace polystab
