#include "polystab/region.hpp"

#include <cstdio>
#include <stdexcept>

namespace polystab {

Region Region::disc(cplx center, double radius, bool open) {
  if (!(radius > 0.0)) throw std::invalid_argument("disc radius must be positive");
  Region r;
  r.kind = RegionKind::disc;
  r.center = center;
  r.radius = radius;
  r.open = open;
  return r;
}

Region Region::halfplane(double phi, bool open, double offset) {
  Region r;
  r.kind = RegionKind::halfplane;
  r.phi = phi;
  r.offset = offset;
  r.open = open;
  return r;
}

Region Region::sector(double lo, double hi, bool open) {
  if (!(lo < hi) || hi - lo >= 2.0 * kPi) {
    throw std::invalid_argument("sector needs lo < hi and hi - lo < 2*pi");
  }
  Region r;
  r.kind = RegionKind::sector;
  r.lo = lo;
  r.hi = hi;
  r.open = open;
  return r;
}

Region Region::ext_disc(double radius, bool open, cplx center) {
  if (!(radius > 0.0)) throw std::invalid_argument("ext-disc radius must be positive");
  Region r;
  r.kind = RegionKind::ext_disc;
  r.center = center;
  r.radius = radius;
  r.open = open;
  return r;
}

Region Region::point(cplx where) {
  Region r;
  r.kind = RegionKind::point;
  r.center = where;
  return r;
}

Region Region::complement_of(Region inner) {
  if (inner.kind == RegionKind::power) throw std::invalid_argument("complement of a power region");
  Region r;
  r.kind = RegionKind::complement;
  r.open = !inner.open;
  r.parts.push_back(std::move(inner));
  return r;
}

Region Region::intersection_of(std::vector<Region> parts) {
  if (parts.empty()) throw std::invalid_argument("intersection of no regions");
  for (const auto& p : parts) {
    if (p.kind == RegionKind::power) throw std::invalid_argument("intersection with a power region");
  }
  Region r;
  r.kind = RegionKind::intersection;
  r.parts = std::move(parts);
  return r;
}

Region Region::preimage_of(Polynomial p, Region inner) {
  if (p.is_zero()) throw std::invalid_argument("preimage under the zero polynomial");
  if (inner.kind == RegionKind::power) throw std::invalid_argument("preimage of a power region");
  Region r;
  r.kind = RegionKind::preimage;
  r.poly = std::move(p);
  r.open = inner.open;
  r.parts.push_back(std::move(inner));
  return r;
}

Region Region::power_of(Region inner, int kappa) {
  if (kappa < 1) throw std::invalid_argument("power region needs kappa >= 1");
  if (inner.kind == RegionKind::power) throw std::invalid_argument("nested power region");
  Region r;
  r.kind = RegionKind::power;
  r.kappa = kappa;
  r.open = inner.open;
  r.parts.push_back(std::move(inner));
  return r;
}

bool Region::operator==(const Region& o) const {
  return kind == o.kind && open == o.open && center == o.center && radius == o.radius &&
         phi == o.phi && offset == o.offset && lo == o.lo && hi == o.hi && kappa == o.kappa &&
         poly == o.poly && parts == o.parts;
}

double principal_arg(cplx z) {
  if (z == 0.0) return 0.0;
  double a = std::arg(z);
  if (a == -kPi) a = kPi;
  return a;
}

namespace {

double halfplane_value(const Region& d, cplx z) {
  return (z * std::polar(1.0, d.phi - kPi / 2.0)).real() - d.offset;
}

double ray_distance(cplx z, double theta) {
  const cplx u = z * std::polar(1.0, -theta);
  return u.real() >= 0.0 ? std::abs(u.imag()) : std::abs(z);
}

bool sector_angle_inside(const Region& d, cplx z) {
  double t = std::fmod(principal_arg(z) - d.lo, 2.0 * kPi);
  if (t < 0.0) t += 2.0 * kPi;
  return t > 0.0 && t < d.hi - d.lo;
}

Membership classify(double signed_dist, double tol) {
  if (std::abs(signed_dist) <= tol) return Membership::boundary;
  return signed_dist > 0.0 ? Membership::inside : Membership::outside;
}

Membership flip(Membership m) {
  switch (m) {
    case Membership::inside:
      return Membership::outside;
    case Membership::outside:
      return Membership::inside;
    default:
      return Membership::boundary;
  }
}

}  // namespace

Membership region_contains(const Region& d, cplx z, double tol) {
  if (tol < 0.0) throw std::invalid_argument("region_contains: negative tolerance");
  switch (d.kind) {
    case RegionKind::disc:
      return classify(d.radius - std::abs(z - d.center), tol);
    case RegionKind::ext_disc:
      return classify(std::abs(z - d.center) - d.radius, tol);
    case RegionKind::halfplane:
      return classify(halfplane_value(d, z), tol);
    case RegionKind::sector: {
      const double dist =
          std::min({std::abs(z), ray_distance(z, d.lo), ray_distance(z, d.hi)});
      if (dist <= tol) return Membership::boundary;
      return sector_angle_inside(d, z) ? Membership::inside : Membership::outside;
    }
    case RegionKind::point:
      return std::abs(z - d.center) <= tol ? Membership::boundary : Membership::outside;
    case RegionKind::complement:
      return flip(region_contains(d.parts[0], z, tol));
    case RegionKind::intersection: {
      Membership worst = Membership::inside;
      for (const auto& p : d.parts) {
        const Membership m = region_contains(p, z, tol);
        if (m == Membership::outside) return Membership::outside;
        if (m == Membership::boundary) worst = Membership::boundary;
      }
      return worst;
    }
    case RegionKind::preimage:
      return region_contains(d.parts[0], d.poly(z), tol);
    case RegionKind::power:
      throw std::invalid_argument("region_contains: power region needs a tuple (use contains_tuple)");
  }
  throw std::logic_error("region_contains: unknown kind");
}

Membership contains_tuple(const Region& d, const std::vector<cplx>& z, double tol) {
  const Region* base = &d;
  if (d.kind == RegionKind::power) {
    if (static_cast<int>(z.size()) != d.kappa) {
      throw std::invalid_argument("contains_tuple: tuple arity mismatch");
    }
    base = &d.parts[0];
  }
  Membership worst = Membership::inside;
  for (const cplx& v : z) {
    const Membership m = region_contains(*base, v, tol);
    if (m == Membership::outside) return Membership::outside;
    if (m == Membership::boundary) worst = Membership::boundary;
  }
  return worst;
}

BoundaryRule boundary_rule(const Region& d, cplx z, double tol) {
  switch (d.kind) {
    case RegionKind::disc:
    case RegionKind::ext_disc:
    case RegionKind::halfplane:
    case RegionKind::sector:
      return d.open ? BoundaryRule::excluded : BoundaryRule::included;
    case RegionKind::point:
      return BoundaryRule::included;
    case RegionKind::complement: {
      const BoundaryRule inner = boundary_rule(d.parts[0], z, tol);
      if (inner == BoundaryRule::included) return BoundaryRule::excluded;
      if (inner == BoundaryRule::excluded) return BoundaryRule::included;
      return BoundaryRule::ambiguous;
    }
    case RegionKind::intersection: {
      bool any_included = false;
      bool any_ambiguous = false;
      for (const auto& p : d.parts) {
        if (region_contains(p, z, tol) != Membership::boundary) continue;
        const BoundaryRule r = boundary_rule(p, z, tol);
        if (r == BoundaryRule::excluded) return BoundaryRule::excluded;
        if (r == BoundaryRule::ambiguous) any_ambiguous = true;
        if (r == BoundaryRule::included) any_included = true;
      }
      if (any_ambiguous) return BoundaryRule::ambiguous;
      (void)any_included;
      return BoundaryRule::included;
    }
    case RegionKind::preimage:
      return boundary_rule(d.parts[0], d.poly(z), tol);
    case RegionKind::power:
      throw std::invalid_argument("boundary_rule: power region needs a tuple");
  }
  throw std::logic_error("boundary_rule: unknown kind");
}

bool excludes(const Region& d, cplx z, double tol) {
  const Membership m = region_contains(d, z, tol);
  if (m == Membership::outside) return true;
  if (m == Membership::inside) return false;
  return boundary_rule(d, z, tol) == BoundaryRule::excluded;
}

namespace {

double region_scale(const Region& d) {
  switch (d.kind) {
    case RegionKind::disc:
    case RegionKind::ext_disc:
      return std::abs(d.center) + d.radius;
    case RegionKind::halfplane:
      return std::abs(d.offset);
    case RegionKind::sector:
      return 0.0;
    case RegionKind::point:
      return std::abs(d.center);
    default: {
      double s = 0.0;
      for (const auto& p : d.parts) s = std::max(s, region_scale(p));
      return s;
    }
  }
}

}  // namespace

double truncation_radius(const Region& d) { return 10.0 + region_scale(d); }

cplx sample_point(const Region& d, Rng& rng) {
  if (d.kind == RegionKind::power) throw std::invalid_argument("sample_point: planar region expected");
  const bool direct = d.kind == RegionKind::disc;
  const double big = truncation_radius(d);
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    const double u = rng.uniform();
    const double t = 2.0 * kPi * rng.uniform();
    const cplx z = direct ? d.center + std::polar(d.radius * std::sqrt(u), t)
                          : cplx(std::polar(big * std::sqrt(u), t));
    if (region_contains(d, z) == Membership::inside) return z;
  }
  throw std::domain_error("region_sample: region appears empty within the truncation radius");
}

std::vector<cplx> region_sample(const Region& d, int count, std::uint64_t seed) {
  if (count < 1) throw std::invalid_argument("region_sample: count must be >= 1");
  std::vector<cplx> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) {
    Rng rng(seed, static_cast<std::uint64_t>(i));
    out.push_back(sample_point(d, rng));
  }
  return out;
}

double signed_depth(const Region& d, cplx z) {
  switch (d.kind) {
    case RegionKind::disc:
      return d.radius - std::abs(z - d.center);
    case RegionKind::halfplane:
      return halfplane_value(d, z);
    default:
      throw std::invalid_argument("signed_depth: disc or half-plane required");
  }
}

bool complement_is_convex(const Region& d) {
  switch (d.kind) {
    case RegionKind::disc:
    case RegionKind::point:
      return false;
    case RegionKind::ext_disc:
    case RegionKind::halfplane:
      return true;
    case RegionKind::sector:
      return d.hi - d.lo >= kPi;
    case RegionKind::complement: {
      const Region& in = d.parts[0];
      switch (in.kind) {
        case RegionKind::disc:
        case RegionKind::halfplane:
        case RegionKind::point:
          return true;
        case RegionKind::ext_disc:
          return false;
        case RegionKind::sector:
          return in.hi - in.lo <= kPi;
        default:
          break;
      }
      break;
    }
    default:
      break;
  }
  throw std::domain_error("complement convexity is not catalogued for region " + to_string(d));
}

Region shrink(const Region& d, double margin) {
  if (d.kind == RegionKind::disc) {
    if (!(d.radius > margin)) throw std::invalid_argument("shrink: margin exceeds radius");
    return Region::disc(d.center, d.radius - margin, d.open);
  }
  if (d.kind == RegionKind::halfplane) return Region::halfplane(d.phi, d.open, d.offset + margin);
  throw std::invalid_argument("shrink: disc or half-plane required");
}

// ---------------------------------------------------------------- text form

namespace {

std::string fmt_real(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_cplx(cplx z) {
  std::string s = fmt_real(z.real());
  const double im = z.imag();
  if (std::signbit(im)) {
    s += "-" + fmt_real(-im);
  } else {
    s += "+" + fmt_real(im);
  }
  return s + "i";
}

const char* openness(bool open) { return open ? "open" : "closed"; }

std::string trim_ws(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return "";
  const auto e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

double parse_number(const std::string& raw) {
  const std::string s = trim_ws(raw);
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("region spec: bad number '" + s + "'");
  }
  if (used != s.size()) throw std::invalid_argument("region spec: bad number '" + s + "'");
  return v;
}

// Accepts plain numbers and forms like pi/3, -pi/4, 2*pi/3, 2pi, 1/2.
double parse_real(const std::string& raw) {
  std::string s;
  for (char ch : raw) {
    if (ch != ' ') s += ch;
  }
  const auto p = s.find("pi");
  if (p == std::string::npos) {
    const auto slash = s.find('/');
    if (slash != std::string::npos) {
      return parse_number(s.substr(0, slash)) / parse_number(s.substr(slash + 1));
    }
    return parse_number(s);
  }
  std::string pre = s.substr(0, p);
  if (!pre.empty() && pre.back() == '*') pre.pop_back();
  double factor = 1.0;
  if (pre == "-") {
    factor = -1.0;
  } else if (!pre.empty() && pre != "+") {
    factor = parse_number(pre);
  }
  const std::string post = s.substr(p + 2);
  double div = 1.0;
  if (!post.empty()) {
    if (post[0] != '/') throw std::invalid_argument("region spec: bad angle '" + raw + "'");
    div = parse_number(post.substr(1));
  }
  return factor * kPi / div;
}

cplx parse_complex(const std::string& raw) {
  std::string s;
  for (char ch : raw) {
    if (ch != ' ') s += ch;
  }
  if (s.empty()) throw std::invalid_argument("region spec: empty complex number");
  if (s.back() != 'i') return parse_real(s);
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_part = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t);
  };
  if (split == std::string::npos) return {0.0, imag_part(s)};
  return {parse_real(s.substr(0, split)), imag_part(s.substr(split))};
}

// Splits on top-level commas (outside parentheses and brackets).
std::vector<std::string> split_top(const std::string& s) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char ch : s) {
    if (ch == '(' || ch == '[') ++depth;
    if (ch == ')' || ch == ']') --depth;
    if (ch == ',' && depth == 0) {
      out.push_back(trim_ws(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (depth != 0) throw std::invalid_argument("region spec: unbalanced parentheses");
  out.push_back(trim_ws(cur));
  return out;
}

std::string unparen(const std::string& s) {
  const std::string t = trim_ws(s);
  if (t.size() < 2 || t.front() != '(' || t.back() != ')') {
    throw std::invalid_argument("region spec: expected '(...)' but got '" + t + "'");
  }
  return t.substr(1, t.size() - 2);
}

struct Fields {
  bool open = false;
  bool open_given = false;
  std::vector<std::pair<std::string, std::string>> kv;

  const std::string* get(const std::string& key) const {
    for (const auto& [k, v] : kv) {
      if (k == key) return &v;
    }
    return nullptr;
  }
  const std::string& need(const std::string& key, const std::string& kind) const {
    const std::string* v = get(key);
    if (!v) throw std::invalid_argument("region spec: " + kind + " needs '" + key + "='");
    return *v;
  }
};

Fields parse_fields(const std::string& body) {
  Fields f;
  for (const std::string& tok : split_top(body)) {
    if (tok.empty()) throw std::invalid_argument("region spec: empty field");
    if (tok == "open" || tok == "closed") {
      f.open = tok == "open";
      f.open_given = true;
      continue;
    }
    const auto eq = tok.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("region spec: bad field '" + tok + "'");
    f.kv.emplace_back(trim_ws(tok.substr(0, eq)), trim_ws(tok.substr(eq + 1)));
  }
  return f;
}

}  // namespace

std::string to_string(const Region& d) {
  switch (d.kind) {
    case RegionKind::disc:
      return "disc:c=" + fmt_cplx(d.center) + ",r=" + fmt_real(d.radius) + "," + openness(d.open);
    case RegionKind::halfplane: {
      std::string s = "halfplane:phi=" + fmt_real(d.phi);
      if (d.offset != 0.0) s += ",offset=" + fmt_real(d.offset);
      return s + "," + openness(d.open);
    }
    case RegionKind::sector:
      return "sector:lo=" + fmt_real(d.lo) + ",hi=" + fmt_real(d.hi) + "," + openness(d.open);
    case RegionKind::ext_disc: {
      std::string s = "ext-disc:r=" + fmt_real(d.radius);
      if (d.center != 0.0) s += ",c=" + fmt_cplx(d.center);
      return s + "," + openness(d.open);
    }
    case RegionKind::point:
      return "point:c=" + fmt_cplx(d.center);
    case RegionKind::complement:
      return "complement:(" + to_string(d.parts[0]) + ")";
    case RegionKind::intersection: {
      std::string s = "intersection:";
      for (std::size_t k = 0; k < d.parts.size(); ++k) {
        if (k) s += ",";
        s += "(" + to_string(d.parts[k]) + ")";
      }
      return s;
    }
    case RegionKind::preimage: {
      std::string s = "preimage:p=[";
      const auto& c = d.poly.coeffs();
      for (std::size_t k = 0; k < c.size(); ++k) {
        if (k) s += ";";
        s += fmt_cplx(c[k]);
      }
      return s + "],(" + to_string(d.parts[0]) + ")";
    }
    case RegionKind::power:
      return "power:(" + to_string(d.parts[0]) + ")^" + std::to_string(d.kappa);
  }
  throw std::logic_error("to_string: unknown region kind");
}

Region parse_region(const std::string& spec) {
  const std::string s = trim_ws(spec);
  const auto colon = s.find(':');
  if (colon == std::string::npos) throw std::invalid_argument("region spec: missing ':' in '" + s + "'");
  const std::string kind = s.substr(0, colon);
  const std::string body = s.substr(colon + 1);

  if (kind == "complement") return Region::complement_of(parse_region(unparen(body)));
  if (kind == "intersection") {
    std::vector<Region> parts;
    for (const auto& tok : split_top(body)) parts.push_back(parse_region(unparen(tok)));
    return Region::intersection_of(std::move(parts));
  }
  if (kind == "power") {
    const auto caret = body.rfind('^');
    if (caret == std::string::npos) throw std::invalid_argument("region spec: power needs '^k'");
    const int k = static_cast<int>(parse_number(body.substr(caret + 1)));
    return Region::power_of(parse_region(unparen(body.substr(0, caret))), k);
  }
  if (kind == "preimage") {
    const auto toks = split_top(body);
    if (toks.size() != 2 || toks[0].rfind("p=[", 0) != 0 || toks[0].back() != ']') {
      throw std::invalid_argument("region spec: preimage:p=[c0;c1;...],(<spec>)");
    }
    std::vector<cplx> coeffs;
    std::string list = toks[0].substr(3, toks[0].size() - 4);
    std::size_t start = 0;
    while (start <= list.size()) {
      const auto semi = list.find(';', start);
      const std::string item = list.substr(start, semi == std::string::npos ? std::string::npos : semi - start);
      coeffs.push_back(parse_complex(item));
      if (semi == std::string::npos) break;
      start = semi + 1;
    }
    return Region::preimage_of(Polynomial(coeffs), parse_region(unparen(toks[1])));
  }

  const Fields f = parse_fields(body);
  if (kind == "disc") {
    const std::string* c = f.get("c");
    return Region::disc(c ? parse_complex(*c) : cplx(0.0), parse_real(f.need("r", kind)), f.open);
  }
  if (kind == "halfplane") {
    const std::string* off = f.get("offset");
    return Region::halfplane(parse_real(f.need("phi", kind)), f.open_given ? f.open : true,
                             off ? parse_real(*off) : 0.0);
  }
  if (kind == "sector") {
    return Region::sector(parse_real(f.need("lo", kind)), parse_real(f.need("hi", kind)),
                          f.open_given ? f.open : true);
  }
  if (kind == "ext-disc") {
    const std::string* c = f.get("c");
    return Region::ext_disc(parse_real(f.need("r", kind)), f.open_given ? f.open : true,
                            c ? parse_complex(*c) : cplx(0.0));
  }
  if (kind == "point") return Region::point(parse_complex(f.need("c", kind)));
  throw std::invalid_argument("region spec: unknown kind '" + kind + "'");
}

}  // namespace polystab
