#include <doctest.h>

#include <fstream>
#include <sstream>

#include "wco/io.hpp"
#include "wco/plot.hpp"

using namespace wco;

namespace {

std::string slurp(const std::string& name) {
  std::ifstream in(std::string(WCO_FIXTURES) + "/" + name);
  REQUIRE(in.good());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string schema_message(const std::string& text) {
  try {
    parse_spec_text(text);
  } catch (const SchemaError& e) {
    return e.what();
  }
  return "";
}

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto p = hay.find(needle); p != std::string::npos; p = hay.find(needle, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("spec round trip") {
  for (const char* f : {"hyperbolic.json", "parabolic.json", "elliptic_irrational.json", "polydisc.json",
                        "blaschke_t2.json", "minus_z.json"}) {
    CAPTURE(f);
    const auto spec = parse_spec_text(slurp(f));
    CHECK(parse_spec(to_json(spec)) == spec);
    CHECK(to_json(parse_spec(to_json(spec))).dump() == to_json(spec).dump());
  }
}

TEST_CASE("report documents round trip byte for byte") {
  for (const char* f : {"hyperbolic.json", "minus_z.json", "polydisc.json", "blaschke_t1.json"}) {
    CAPTURE(f);
    const auto doc = run_spec(parse_spec_text(slurp(f)), false);
    const std::string once = to_json(doc).dump(2);
    const std::string twice = to_json(parse_document(Json::parse(once))).dump(2);
    CHECK(once == twice);
  }
}

TEST_CASE("schema errors name the offending path") {
  CHECK(schema_message(R"({"algebra":{"type":"disc"},"map":{"moebius":{"a":[1,0],"b":[0.5,0],"c":[0.5,0],"d":[1,0]}},"weight":{"coeffs":[[1,0]]},"extra":1})")
            .find("at /") != std::string::npos);
  CHECK(schema_message(R"({"algebra":{"type":"torus"}})").find("/algebra") != std::string::npos);
  CHECK(schema_message(R"({"algebra":{"type":"disc"},"map":{"moebius":{"a":[1,0],"b":[0.5,0],"c":[0.5,0],"d":[1,0]}},"weight":{"coeffs":[[1,"x"]]}})")
            .find("/weight/coeffs") != std::string::npos);
  CHECK(schema_message("{\"algebra\": ").find("malformed JSON at byte") != std::string::npos);
  CHECK(schema_message(R"({"algebra":{"type":"disc"},"map":{"canonical":{"theta":1,"a":[2,0]}},"weight":{"coeffs":[[1,0]]}})")
            .find("/map/canonical/a") != std::string::npos);
}

TEST_CASE("fingerprints are stable and sensitive") {
  const auto a = parse_spec_text(slurp("hyperbolic.json"));
  auto b = a;
  CHECK(fingerprint(a) == fingerprint(b));
  CHECK(fingerprint(a).size() == 16);
  b.options.tol *= 2;
  CHECK(fingerprint(a) != fingerprint(b));
}

TEST_CASE("non-finite numbers survive serialization") {
  SpectrumReport r;
  r.case_tag = "x";
  r.rho = std::numeric_limits<double>::infinity();
  r.rho_min = std::numeric_limits<double>::quiet_NaN();
  const Json j = to_json(r);
  CHECK(j["rho"] == "inf");
  CHECK(j["rho_min"] == "nan");
  const auto back = parse_report(j);
  CHECK(std::isinf(back.rho));
  CHECK(std::isnan(back.rho_min));
}

TEST_CASE("plots are deterministic and draw the hyperbolic annulus") {
  const auto doc = run_spec(parse_spec_text(slurp("hyperbolic.json")), false);
  const auto p1 = plot_report(doc.report);
  const auto p2 = plot_report(parse_document(to_json(doc)).report);
  CHECK(p1.svg == p2.svg);
  CHECK(p1.warnings.empty());
  CHECK(p1.svg.rfind("<?xml", 0) == 0);
  CHECK(p1.svg.find("evenodd") != std::string::npos);
  CHECK(p1.svg.find("#c0392b") != std::string::npos);
  CHECK(p1.svg.find(doc.report.case_tag) != std::string::npos);
}

TEST_CASE("a circle spectrum is drawn as one stroked circle") {
  const auto doc = run_spec(parse_spec_text(slurp("polydisc.json")), false);
  const auto p = plot_report(doc.report);
  CHECK(p.warnings.empty());
  CHECK(p.svg.find("evenodd") == std::string::npos);
  CHECK(p.svg.find("stroke=\"#4a78b5\"") != std::string::npos);
}

TEST_CASE("an enclosure is drawn with outer and inner fills") {
  const auto doc = run_spec(parse_spec_text(slurp("blaschke_t2.json")), false);
  const auto p = plot_report(doc.report);
  CHECK(p.svg.find("#d6e2f0") != std::string::npos);
  CHECK(p.svg.find("#4a78b5") != std::string::npos);
}

TEST_CASE("a non-radial spectrum is sampled on a grid") {
  const auto doc = run_spec(parse_spec_text(slurp("minus_z.json")), false);
  PlotOptions o;
  o.resolution = 9;
  const auto p = plot_report(doc.report, o);
  CHECK(count(p.svg, "<rect") > 1);
}

TEST_CASE("a window that misses everything warns") {
  const auto doc = run_spec(parse_spec_text(slurp("hyperbolic.json")), false);
  PlotOptions o;
  o.half_width = 0.25;
  const auto p = plot_report(doc.report, o);
  REQUIRE(p.warnings.size() == 1);
  CHECK(p.warnings[0] == "window excludes every plotted spectrum");
}
