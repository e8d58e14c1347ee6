#include "wco/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace wco {

std::string to_string(Algebra a) {
  switch (a) {
    case Algebra::Disc: return "disc";
    case Algebra::Polydisc: return "polydisc";
    case Algebra::Endomorphism: return "endomorphism";
  }
  return "disc";
}

SpecOptions default_options() {
  SpecOptions o;
  const char* env = std::getenv("WCO_TOL_PROFILE");
  const std::string profile = env ? env : "default";
  if (profile == "strict") {
    o.tol = 1e-12;
    o.root_tol = 1e-9;
    o.verify_tol = 1e-4;
    o.oracle_n = 120;
  } else if (profile == "loose") {
    o.tol = 1e-7;
    o.root_tol = 1e-6;
    o.verify_tol = 1e-2;
    o.oracle_n = 30;
  } else if (profile != "default") {
    throw SchemaError("WCO_TOL_PROFILE must be strict, default or loose (got '" + profile + "')");
  }
  return o;
}

namespace {

[[noreturn]] void schema_fail(const std::string& path, const std::string& what) {
  throw SchemaError("at " + (path.empty() ? std::string("/") : path) + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) schema_fail(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema_fail(path + "/" + key, "missing required field");
  return *it;
}

void only_keys(const Json& j, std::initializer_list<const char*> keys, const std::string& path) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : keys)
      if (it.key() == k) ok = true;
    if (!ok) schema_fail(path + "/" + it.key(), "unknown field");
  }
}

double number(const Json& j, const std::string& path) {
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    if (s == "nan") return std::numeric_limits<double>::quiet_NaN();
  }
  schema_fail(path, "expected a number");
}

int integer(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) schema_fail(path, "expected an integer");
  return j.get<int>();
}

std::string string_of(const Json& j, const std::string& path) {
  if (!j.is_string()) schema_fail(path, "expected a string");
  return j.get<std::string>();
}

Json num(double x) {
  if (std::isfinite(x)) return x;
  if (std::isnan(x)) return "nan";
  return x > 0 ? "inf" : "-inf";
}

cplx complex_of(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
    schema_fail(path, "expected a complex number [re, im]");
  return {j[0].get<double>(), j[1].get<double>()};
}

Json complex_json(cplx z) { return Json::array({z.real(), z.imag()}); }

std::vector<cplx> complex_list(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_fail(path, "expected an array of [re, im] pairs");
  std::vector<cplx> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(complex_of(j[i], path + "/" + std::to_string(i)));
  return out;
}

Json complex_list_json(const std::vector<cplx>& v) {
  Json a = Json::array();
  for (const cplx& z : v) a.push_back(complex_json(z));
  return a;
}

std::vector<std::string> string_list(const Json& j, const std::string& path) {
  if (!j.is_array()) schema_fail(path, "expected an array of strings");
  std::vector<std::string> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(string_of(j[i], path + "/" + std::to_string(i)));
  return out;
}

Json map_json(const MoebiusMap& m) {
  return Json{{"a", complex_json(m.a())},
              {"b", complex_json(m.b())},
              {"c", complex_json(m.c())},
              {"d", complex_json(m.d())}};
}

SpecOptions parse_options(const Json& j, const std::string& path) {
  SpecOptions o = default_options();
  if (!j.is_object()) schema_fail(path, "expected an object");
  only_keys(j,
            {"tol", "m_max", "root_tol", "rationality", "declared_m", "oracle_n", "oracle_samples",
             "verify_tol", "max_cells", "q_max", "p_max", "n_max", "cited_rho"},
            path);
  auto opt_num = [&](const char* k, double& dst) {
    if (j.contains(k)) dst = number(j[k], path + "/" + k);
  };
  auto opt_int = [&](const char* k, int& dst, int lo) {
    if (!j.contains(k)) return;
    dst = integer(j[k], path + "/" + k);
    if (dst < lo) schema_fail(path + "/" + k, "must be >= " + std::to_string(lo));
  };
  opt_num("tol", o.tol);
  opt_int("m_max", o.m_max, 1);
  opt_num("root_tol", o.root_tol);
  if (j.contains("rationality")) {
    o.rationality = string_of(j["rationality"], path + "/rationality");
    if (o.rationality != "auto" && o.rationality != "declare-rational" &&
        o.rationality != "declare-irrational")
      schema_fail(path + "/rationality", "must be auto, declare-rational or declare-irrational");
  }
  opt_int("declared_m", o.declared_m, 0);
  if (o.rationality == "declare-rational" && o.declared_m < 1)
    schema_fail(path + "/declared_m", "declare-rational needs declared_m >= 1");
  opt_int("oracle_n", o.oracle_n, 1);
  opt_int("oracle_samples", o.oracle_samples, 8);
  opt_num("verify_tol", o.verify_tol);
  if (j.contains("max_cells")) {
    if (!j["max_cells"].is_number_unsigned()) schema_fail(path + "/max_cells", "expected a count");
    o.max_cells = j["max_cells"].get<std::size_t>();
  }
  opt_int("q_max", o.q_max, 1);
  opt_int("p_max", o.p_max, 1);
  if (o.p_max > 12) schema_fail(path + "/p_max", "must be <= 12");
  opt_int("n_max", o.n_max, 1);
  if (j.contains("cited_rho")) o.cited_rho = number(j["cited_rho"], path + "/cited_rho");
  return o;
}

Json options_json(const SpecOptions& o) {
  Json j{{"tol", o.tol},
         {"m_max", o.m_max},
         {"root_tol", o.root_tol},
         {"rationality", o.rationality},
         {"declared_m", o.declared_m},
         {"oracle_n", o.oracle_n},
         {"oracle_samples", o.oracle_samples},
         {"verify_tol", o.verify_tol},
         {"max_cells", o.max_cells},
         {"q_max", o.q_max},
         {"p_max", o.p_max},
         {"n_max", o.n_max}};
  if (o.cited_rho) j["cited_rho"] = *o.cited_rho;
  return j;
}

}  // namespace

bool OperatorSpec::operator==(const OperatorSpec& o) const {
  if (weight_terms.size() != o.weight_terms.size()) return false;
  for (std::size_t i = 0; i < weight_terms.size(); ++i)
    if (weight_terms[i].exponents != o.weight_terms[i].exponents ||
        weight_terms[i].coeff != o.weight_terms[i].coeff)
      return false;
  return algebra == o.algebra && dim == o.dim && moebius == o.moebius &&
         canonical_theta == o.canonical_theta && canonical_a == o.canonical_a &&
         gammas_over_pi == o.gammas_over_pi && independence == o.independence &&
         blaschke_zeros == o.blaschke_zeros && blaschke_phase == o.blaschke_phase &&
         weight_coeffs == o.weight_coeffs && options == o.options;
}

OperatorSpec parse_spec(const Json& j) {
  if (!j.is_object()) schema_fail("", "spec must be an object");
  only_keys(j, {"algebra", "map", "weight", "options"}, "");
  OperatorSpec s;

  const Json& alg = field(j, "algebra", "");
  const std::string type = string_of(field(alg, "type", "/algebra"), "/algebra/type");
  if (type == "disc") {
    only_keys(alg, {"type"}, "/algebra");
    s.algebra = Algebra::Disc;
  } else if (type == "polydisc") {
    only_keys(alg, {"type", "n"}, "/algebra");
    s.algebra = Algebra::Polydisc;
    s.dim = integer(field(alg, "n", "/algebra"), "/algebra/n");
    if (s.dim < 1 || s.dim > 4) schema_fail("/algebra/n", "must be in 1..4");
  } else if (type == "endomorphism") {
    only_keys(alg, {"type"}, "/algebra");
    s.algebra = Algebra::Endomorphism;
  } else {
    schema_fail("/algebra/type", "must be disc, polydisc or endomorphism");
  }

  const Json& map = field(j, "map", "");
  if (!map.is_object()) schema_fail("/map", "expected an object");
  switch (s.algebra) {
    case Algebra::Disc: {
      only_keys(map, {"moebius", "canonical"}, "/map");
      if (map.contains("moebius") == map.contains("canonical"))
        schema_fail("/map", "give exactly one of moebius or canonical");
      if (map.contains("moebius")) {
        const Json& m = map["moebius"];
        only_keys(m, {"a", "b", "c", "d"}, "/map/moebius");
        std::vector<cplx> abcd;
        for (const char* k : {"a", "b", "c", "d"})
          abcd.push_back(complex_of(field(m, k, "/map/moebius"), std::string("/map/moebius/") + k));
        s.moebius = abcd;
      } else {
        const Json& c = map["canonical"];
        only_keys(c, {"theta", "a"}, "/map/canonical");
        s.canonical_theta = number(field(c, "theta", "/map/canonical"), "/map/canonical/theta");
        s.canonical_a = complex_of(field(c, "a", "/map/canonical"), "/map/canonical/a");
        if (std::abs(*s.canonical_a) >= 1.0) schema_fail("/map/canonical/a", "|a| must be < 1");
      }
      break;
    }
    case Algebra::Polydisc: {
      only_keys(map, {"gammas_over_pi", "independence"}, "/map");
      const Json& g = field(map, "gammas_over_pi", "/map");
      if (!g.is_array() || static_cast<int>(g.size()) != s.dim)
        schema_fail("/map/gammas_over_pi", "expected " + std::to_string(s.dim) + " numbers");
      for (std::size_t i = 0; i < g.size(); ++i)
        s.gammas_over_pi.push_back(number(g[i], "/map/gammas_over_pi/" + std::to_string(i)));
      if (map.contains("independence")) {
        s.independence = string_of(map["independence"], "/map/independence");
        if (s.independence != "declared" && s.independence != "check")
          schema_fail("/map/independence", "must be declared or check");
      }
      break;
    }
    case Algebra::Endomorphism: {
      only_keys(map, {"blaschke"}, "/map");
      const Json& b = field(map, "blaschke", "/map");
      only_keys(b, {"zeros", "phase"}, "/map/blaschke");
      s.blaschke_zeros = complex_list(field(b, "zeros", "/map/blaschke"), "/map/blaschke/zeros");
      if (b.contains("phase")) s.blaschke_phase = complex_of(b["phase"], "/map/blaschke/phase");
      break;
    }
  }

  const Json& w = field(j, "weight", "");
  if (s.algebra == Algebra::Polydisc) {
    only_keys(w, {"terms"}, "/weight");
    const Json& terms = field(w, "terms", "/weight");
    if (!terms.is_array() || terms.empty()) schema_fail("/weight/terms", "expected a nonempty array");
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string p = "/weight/terms/" + std::to_string(i);
      only_keys(terms[i], {"exp", "c"}, p);
      const Json& e = field(terms[i], "exp", p);
      if (!e.is_array() || static_cast<int>(e.size()) != s.dim)
        schema_fail(p + "/exp", "expected " + std::to_string(s.dim) + " exponents");
      Term t{{}, complex_of(field(terms[i], "c", p), p + "/c")};
      for (std::size_t k = 0; k < e.size(); ++k) {
        const int x = integer(e[k], p + "/exp/" + std::to_string(k));
        if (x < 0) schema_fail(p + "/exp/" + std::to_string(k), "exponents must be >= 0");
        t.exponents.push_back(x);
      }
      s.weight_terms.push_back(std::move(t));
    }
  } else {
    only_keys(w, {"coeffs"}, "/weight");
    s.weight_coeffs = complex_list(field(w, "coeffs", "/weight"), "/weight/coeffs");
    if (s.weight_coeffs.empty()) schema_fail("/weight/coeffs", "expected at least one coefficient");
  }

  s.options = j.contains("options") ? parse_options(j["options"], "/options") : default_options();
  return s;
}

OperatorSpec parse_spec_text(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw SchemaError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
  return parse_spec(j);
}

Json to_json(const OperatorSpec& s) {
  Json j;
  j["algebra"] = Json{{"type", to_string(s.algebra)}};
  if (s.algebra == Algebra::Polydisc) j["algebra"]["n"] = s.dim;
  switch (s.algebra) {
    case Algebra::Disc:
      if (s.moebius) {
        const auto& m = *s.moebius;
        j["map"]["moebius"] = Json{{"a", complex_json(m[0])},
                                   {"b", complex_json(m[1])},
                                   {"c", complex_json(m[2])},
                                   {"d", complex_json(m[3])}};
      } else {
        j["map"]["canonical"] =
            Json{{"theta", s.canonical_theta.value_or(0.0)}, {"a", complex_json(s.canonical_a.value_or(0.0))}};
      }
      break;
    case Algebra::Polydisc:
      j["map"] = Json{{"gammas_over_pi", s.gammas_over_pi}, {"independence", s.independence}};
      break;
    case Algebra::Endomorphism:
      j["map"]["blaschke"] =
          Json{{"zeros", complex_list_json(s.blaschke_zeros)}, {"phase", complex_json(s.blaschke_phase)}};
      break;
  }
  if (s.algebra == Algebra::Polydisc) {
    Json terms = Json::array();
    for (const Term& t : s.weight_terms) terms.push_back(Json{{"exp", t.exponents}, {"c", complex_json(t.coeff)}});
    j["weight"] = Json{{"terms", terms}};
  } else {
    j["weight"] = Json{{"coeffs", complex_list_json(s.weight_coeffs)}};
  }
  j["options"] = options_json(s.options);
  return j;
}

MoebiusMap build_map(const OperatorSpec& s) {
  if (s.algebra != Algebra::Disc) throw SchemaError("at /map: not a disc-algebra spec");
  if (s.moebius) {
    const auto& m = *s.moebius;
    return MoebiusMap::from_coefficients(m[0], m[1], m[2], m[3]);
  }
  if (std::abs(*s.canonical_a) >= 1.0) throw SchemaError("at /map/canonical/a: |a| must be < 1");
  return MoebiusMap::canonical(*s.canonical_theta, *s.canonical_a);
}

WeightPoly build_weight(const OperatorSpec& s) { return WeightPoly(s.weight_coeffs); }

MultiPoly build_multipoly(const OperatorSpec& s) { return MultiPoly(s.dim, s.weight_terms); }

TorusRotation build_rotation(const OperatorSpec& s) {
  return TorusRotation::from_gammas_over_pi(s.gammas_over_pi, s.independence == "declared"
                                                                  ? TorusRotation::Independence::Declared
                                                                  : TorusRotation::Independence::Unknown);
}

BlaschkeProduct build_blaschke(const OperatorSpec& s) {
  return BlaschkeProduct(s.blaschke_zeros, s.blaschke_phase);
}

// ---- spectral sets and reports -------------------------------------------

Json to_json(const SpectralSet& s) {
  return std::visit(
      [](const auto& n) -> Json {
        using T = std::decay_t<decltype(n)>;
        if constexpr (std::is_same_v<T, region::Empty>) {
          return Json{{"type", "empty"}};
        } else if constexpr (std::is_same_v<T, region::OriginPoint>) {
          return Json{{"type", "origin"}};
        } else if constexpr (std::is_same_v<T, region::Circle>) {
          return Json{{"type", "circle"}, {"r", n.r}};
        } else if constexpr (std::is_same_v<T, region::ClosedDisk>) {
          return Json{{"type", "disk"}, {"r", n.r}};
        } else if constexpr (std::is_same_v<T, region::ClosedAnnulus>) {
          return Json{{"type", "annulus"}, {"r1", n.r1}, {"r2", n.r2}};
        } else if constexpr (std::is_same_v<T, region::FinitePoints>) {
          return Json{{"type", "points"}, {"points", complex_list_json(n.points)}};
        } else if constexpr (std::is_same_v<T, region::RootPreimage>) {
          const bool range = n.base.kind == PlaneRegion::Kind::RangeOnDisk;
          return Json{{"type", "root_preimage"},
                      {"m", n.m},
                      {"base",
                       {{"kind", range ? "range_on_disk" : "curve_image"},
                        {"weight", complex_list_json(n.base.f.weight.coeffs())},
                        {"map", map_json(n.base.f.map)},
                        {"order", n.base.f.m}}}};
        } else {
          Json parts = Json::array();
          for (const auto& p : n.parts) parts.push_back(to_json(p));
          return Json{{"type", "union"}, {"parts", parts}};
        }
      },
      s.node());
}

SpectralSet parse_set(const Json& j) {
  const std::string type = string_of(field(j, "type", "/set"), "/set/type");
  if (type == "empty") return SpectralSet::empty();
  if (type == "origin") return SpectralSet::origin();
  if (type == "circle") return SpectralSet(region::Circle{number(field(j, "r", "/set"), "/set/r")});
  if (type == "disk") return SpectralSet(region::ClosedDisk{number(field(j, "r", "/set"), "/set/r")});
  if (type == "annulus")
    return SpectralSet(region::ClosedAnnulus{number(field(j, "r1", "/set"), "/set/r1"),
                                             number(field(j, "r2", "/set"), "/set/r2")});
  if (type == "points") return SpectralSet::points(complex_list(field(j, "points", "/set"), "/set/points"));
  if (type == "root_preimage") {
    const Json& b = field(j, "base", "/set");
    const std::string kind = string_of(field(b, "kind", "/set/base"), "/set/base/kind");
    if (kind != "range_on_disk" && kind != "curve_image")
      schema_fail("/set/base/kind", "must be range_on_disk or curve_image");
    const Json& m = field(b, "map", "/set/base");
    const MoebiusMap map = MoebiusMap::from_normalized(
        complex_of(field(m, "a", "/set/base/map"), "/set/base/map/a"),
        complex_of(field(m, "b", "/set/base/map"), "/set/base/map/b"),
        complex_of(field(m, "c", "/set/base/map"), "/set/base/map/c"),
        complex_of(field(m, "d", "/set/base/map"), "/set/base/map/d"));
    DiskFunction f{WeightPoly(complex_list(field(b, "weight", "/set/base"), "/set/base/weight")), map,
                   integer(field(b, "order", "/set/base"), "/set/base/order")};
    return SpectralSet::root_preimage(
        integer(field(j, "m", "/set"), "/set/m"),
        {kind == "range_on_disk" ? PlaneRegion::Kind::RangeOnDisk : PlaneRegion::Kind::CurveImage,
         std::move(f)});
  }
  if (type == "union") {
    const Json& parts = field(j, "parts", "/set");
    if (!parts.is_array()) schema_fail("/set/parts", "expected an array");
    std::vector<SpectralSet> v;
    for (const auto& p : parts) v.push_back(parse_set(p));
    return SpectralSet(region::Union{std::move(v)});
  }
  schema_fail("/set/type", "unknown set type '" + type + "'");
}

Json to_json(const SpectrumEntry& e) {
  Json j{{"status", to_string(e.status)}, {"set", to_json(e.set)}};
  if (e.outer) j["outer"] = to_json(*e.outer);
  j["notes"] = e.notes;
  return j;
}

SpectrumEntry parse_entry(const Json& j) {
  SpectrumEntry e;
  const std::string st = string_of(field(j, "status", "/entry"), "/entry/status");
  if (st == "exact") e.status = Knowledge::Exact;
  else if (st == "contains_at_least") e.status = Knowledge::ContainsAtLeast;
  else if (st == "unknown") e.status = Knowledge::Unknown;
  else schema_fail("/entry/status", "unknown status '" + st + "'");
  e.set = parse_set(field(j, "set", "/entry"));
  if (j.contains("outer")) e.outer = parse_set(j["outer"]);
  if (j.contains("notes")) e.notes = string_list(j["notes"], "/entry/notes");
  return e;
}

namespace {

Json enclosure_json(const RadiusEnclosure& e) {
  return Json{{"lower", num(e.lower)},
              {"upper", num(e.upper)},
              {"lower_witness", e.lower_witness},
              {"upper_witness", e.upper_witness}};
}

RadiusEnclosure parse_enclosure(const Json& j) {
  return {number(field(j, "lower", "/oracle"), "/oracle/lower"),
          number(field(j, "upper", "/oracle"), "/oracle/upper"),
          string_of(field(j, "lower_witness", "/oracle"), "/oracle/lower_witness"),
          string_of(field(j, "upper_witness", "/oracle"), "/oracle/upper_witness")};
}

}  // namespace

Json to_json(const SpectrumReport& r) {
  Json j{{"case_tag", r.case_tag},
         {"map_class", r.map_class},
         {"rho", num(r.rho)},
         {"rho_min", num(r.rho_min)}};
  Json spectra;
  for (const auto& [name, e] : r.entries()) spectra[name] = to_json(*e);
  j["spectra"] = spectra;
  Json q = Json::object();
  for (const auto& [k, v] : r.quantities) q[k] = num(v);
  j["quantities"] = q;
  j["notes"] = r.notes;
  if (r.oracle_rho || r.oracle_rho_min) {
    Json o = Json::object();
    if (r.oracle_rho) o["rho"] = enclosure_json(*r.oracle_rho);
    if (r.oracle_rho_min) o["rho_min"] = enclosure_json(*r.oracle_rho_min);
    j["oracle"] = o;
  }
  if (!r.alternates.empty()) {
    Json a = Json::array();
    for (const auto& alt : r.alternates) a.push_back(to_json(alt));
    j["alternates"] = a;
  }
  return j;
}

SpectrumReport parse_report(const Json& j) {
  SpectrumReport r;
  r.case_tag = string_of(field(j, "case_tag", "/report"), "/report/case_tag");
  r.map_class = string_of(field(j, "map_class", "/report"), "/report/map_class");
  r.rho = number(field(j, "rho", "/report"), "/report/rho");
  r.rho_min = number(field(j, "rho_min", "/report"), "/report/rho_min");
  const Json& spectra = field(j, "spectra", "/report");
  for (auto& [name, e] : r.entries()) *e = parse_entry(field(spectra, name, "/report/spectra"));
  if (j.contains("quantities"))
    for (auto it = j["quantities"].begin(); it != j["quantities"].end(); ++it)
      r.quantities.push_back({it.key(), number(it.value(), "/report/quantities/" + it.key())});
  if (j.contains("notes")) r.notes = string_list(j["notes"], "/report/notes");
  if (j.contains("oracle")) {
    const Json& o = j["oracle"];
    if (o.contains("rho")) r.oracle_rho = parse_enclosure(o["rho"]);
    if (o.contains("rho_min")) r.oracle_rho_min = parse_enclosure(o["rho_min"]);
  }
  if (j.contains("alternates"))
    for (const auto& a : j["alternates"]) r.alternates.push_back(parse_report(a));
  return r;
}

Json to_json(const CheckResult& c) {
  return Json{{"name", c.name},
              {"closed_form", num(c.closed_form)},
              {"oracle_interval", Json::array({num(c.oracle_lo), num(c.oracle_hi)})},
              {"verdict", to_string(c.verdict)},
              {"note", c.note}};
}

CheckResult parse_check(const Json& j) {
  CheckResult c;
  c.name = string_of(field(j, "name", "/check"), "/check/name");
  c.closed_form = number(field(j, "closed_form", "/check"), "/check/closed_form");
  const Json& iv = field(j, "oracle_interval", "/check");
  if (!iv.is_array() || iv.size() != 2) schema_fail("/check/oracle_interval", "expected [lo, hi]");
  c.oracle_lo = number(iv[0], "/check/oracle_interval/0");
  c.oracle_hi = number(iv[1], "/check/oracle_interval/1");
  const std::string v = string_of(field(j, "verdict", "/check"), "/check/verdict");
  if (v != "OK" && v != "FLAG") schema_fail("/check/verdict", "must be OK or FLAG");
  c.verdict = v == "OK" ? Verdict::OK : Verdict::FLAG;
  if (j.contains("note")) c.note = string_of(j["note"], "/check/note");
  return c;
}

Json to_json(const ReportDocument& d) {
  Json checks = Json::array();
  for (const auto& c : d.checks) checks.push_back(to_json(c));
  return Json{{"engine_version", d.engine_version},
              {"fingerprint", d.fingerprint},
              {"spec", to_json(d.spec)},
              {"report", to_json(d.report)},
              {"checks", checks}};
}

ReportDocument parse_document(const Json& j) {
  ReportDocument d;
  d.engine_version = string_of(field(j, "engine_version", ""), "/engine_version");
  d.fingerprint = string_of(field(j, "fingerprint", ""), "/fingerprint");
  d.spec = parse_spec(field(j, "spec", ""));
  d.report = parse_report(field(j, "report", ""));
  if (j.contains("checks"))
    for (const auto& c : j["checks"]) d.checks.push_back(parse_check(c));
  return d;
}

std::string fingerprint(const OperatorSpec& spec) {
  const std::string text = to_json(spec).dump() + "|" + kEngineVersion;
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char ch : text) {
    h ^= ch;
    h *= 0x100000001b3ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

namespace {

AnalyzeOptions analyze_options(const SpecOptions& o) {
  AnalyzeOptions a;
  a.classify.tol = o.tol;
  a.classify.m_max = o.m_max;
  a.root_tol = o.root_tol;
  if (o.rationality == "declare-rational") {
    a.rationality = {RationalityOverride::Kind::DeclareRational, o.declared_m};
  } else if (o.rationality == "declare-irrational") {
    a.rationality = {RationalityOverride::Kind::DeclareIrrational, 0};
  }
  return a;
}

}  // namespace

ReportDocument run_spec(const OperatorSpec& spec, bool verify) {
  ReportDocument d;
  d.spec = spec;
  d.fingerprint = fingerprint(spec);
  const SpecOptions& o = spec.options;
  CertifyOptions cert;
  cert.max_cells = o.max_cells;
  switch (spec.algebra) {
    case Algebra::Disc: {
      const MoebiusMap map = build_map(spec);
      const WeightPoly w = build_weight(spec);
      d.report = analyze_disc(map, w, analyze_options(o));
      if (verify) {
        VerifyOptions v;
        v.n = o.oracle_n;
        v.samples = o.oracle_samples;
        v.tol = o.verify_tol;
        v.certify = cert;
        // Resolving the certificate beyond the check tolerance buys nothing.
        v.certify.eps = std::max(v.certify.eps, o.verify_tol / 4.0);
        d.checks = verify_report(d.report, w, map, v);
      }
      break;
    }
    case Algebra::Polydisc: {
      const TorusRotation rot = build_rotation(spec);
      const MultiPoly w = build_multipoly(spec);
      PolydiscOptions p;
      p.q_max = o.q_max;
      d.report = analyze_polydisc(rot, w, p);
      if (verify) d.checks = verify_polydisc(d.report, rot, w, 4096, std::max(o.verify_tol, 1e-2));
      break;
    }
    case Algebra::Endomorphism: {
      const BlaschkeProduct b = build_blaschke(spec);
      const WeightPoly w = build_weight(spec);
      BlaschkeOptions bo;
      bo.n_max = o.n_max;
      bo.p_max = o.p_max;
      bo.samples = o.oracle_samples;
      bo.certify = cert;
      bo.cited_rho = o.cited_rho;
      d.report = analyze_endomorphism(w, b, bo);
      if (verify) d.checks = verify_endomorphism(d.report, bo);
      break;
    }
  }
  return d;
}

std::string classify_summary(const OperatorSpec& spec) {
  switch (spec.algebra) {
    case Algebra::Disc:
      return describe(classify(build_map(spec), analyze_options(spec.options).classify,
                               analyze_options(spec.options).rationality));
    case Algebra::Polydisc: {
      const TorusRotation rot = build_rotation(spec);
      const IndependenceResult ind = check_independence(rot, spec.options.q_max);
      return "TorusRotation n=" + std::to_string(rot.dim()) + " (" + ind.describe() + ")";
    }
    case Algebra::Endomorphism: {
      const BlaschkeProduct b = build_blaschke(spec);
      return "BlaschkeEndomorphism degree=" + std::to_string(b.degree()) +
             (b.is_monomial() ? " (monomial)" : "");
    }
  }
  return "";
}

}  // namespace wco
