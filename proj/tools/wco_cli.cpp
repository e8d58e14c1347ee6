// Command-line front end: classify-map, analyze, verify, plot, batch.
// Exit codes: 0 success (FLAG verdicts included), 1 internal error,
// 2 unsupported configuration, 3 schema or input error.

#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "wco/io.hpp"
#include "wco/plot.hpp"

namespace {

using wco::Json;

std::string read_input(const std::string& path) {
  if (path == "-") {
    return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
  }
  std::ifstream in(path, std::ios::binary);
  if (!in) throw wco::SchemaError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw wco::Error("cannot write " + path);
  out << text;
}

int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const wco::SchemaError*>(&e) || dynamic_cast<const wco::DegenerateInput*>(&e)) return 3;
  if (dynamic_cast<const wco::UnsupportedConfiguration*>(&e) ||
      dynamic_cast<const wco::AmbiguousRationality*>(&e) || dynamic_cast<const wco::IdentityMapError*>(&e))
    return 2;
  return 1;
}

std::string error_prefix(int code) {
  switch (code) {
    case 2: return "not covered: ";
    case 3: return "invalid input: ";
    default: return "internal error: ";
  }
}

struct Budget {
  int oracle_n = 0;
  int samples = 0;
  double tol = 0.0;
  std::size_t max_cells = 0;
};

void apply_budget(wco::OperatorSpec& spec, const Budget& b) {
  if (b.oracle_n > 0) spec.options.oracle_n = b.oracle_n;
  if (b.samples > 0) spec.options.oracle_samples = b.samples;
  if (b.tol > 0.0) spec.options.verify_tol = b.tol;
  if (b.max_cells > 0) spec.options.max_cells = b.max_cells;
}

wco::SpectrumReport report_from(const Json& j) {
  if (j.contains("report")) return wco::parse_report(j["report"]);
  if (j.contains("algebra")) return wco::run_spec(wco::parse_spec(j), false).report;
  return wco::parse_report(j);
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw wco::SchemaError("malformed JSON at byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Spectra of weighted composition operators on uniform algebras"};
  app.require_subcommand(1);

  std::string input = "-", output;
  Budget budget;
  double window = 0.0;
  int resolution = 65;
  bool batch_verify = false;

  auto* classify = app.add_subcommand("classify-map", "Classify the map of an operator spec");
  classify->add_option("spec", input, "Spec JSON file, or - for stdin");

  auto* analyze = app.add_subcommand("analyze", "Closed-form spectra of an operator spec");
  analyze->add_option("spec", input, "Spec JSON file, or - for stdin");
  analyze->add_option("-o,--output", output, "Report file (default stdout)");

  auto* verify = app.add_subcommand("verify", "Analyze and check radii against cocycle oracles");
  verify->add_option("spec", input, "Spec JSON file, or - for stdin");
  verify->add_option("-o,--output", output, "Report file (default stdout)");
  verify->add_option("--oracle-n", budget.oracle_n, "Cocycle length");
  verify->add_option("--samples", budget.samples, "Boundary samples");
  verify->add_option("--tol", budget.tol, "Relative check tolerance");
  verify->add_option("--max-cells", budget.max_cells, "Branch-and-bound cell budget");

  auto* plot = app.add_subcommand("plot", "Render a report (or spec) as SVG");
  plot->add_option("report", input, "Report or spec JSON file, or - for stdin");
  plot->add_option("-o,--output", output, "SVG file (default stdout)");
  plot->add_option("--window", window, "Half-width of the square window (default: fit)");
  plot->add_option("--resolution", resolution, "Sample grid nodes per side")->check(CLI::Range(2, 1024));

  auto* batch = app.add_subcommand("batch", "Newline-delimited specs to newline-delimited reports");
  batch->add_option("specs", input, "NDJSON file, or - for stdin");
  batch->add_option("-o,--output", output, "Output file (default stdout)");
  batch->add_flag("--verify", batch_verify, "Run oracle checks for every spec");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 3;
  }

  try {
    if (*classify) {
      std::cout << wco::classify_summary(wco::parse_spec_text(read_input(input))) << "\n";
    } else if (*analyze || *verify) {
      wco::OperatorSpec spec = wco::parse_spec_text(read_input(input));
      apply_budget(spec, budget);
      const wco::ReportDocument doc = wco::run_spec(spec, static_cast<bool>(*verify));
      write_output(output, wco::to_json(doc).dump(2) + "\n");
    } else if (*plot) {
      const wco::SpectrumReport rep = report_from(parse_json(read_input(input)));
      wco::PlotOptions po;
      if (window > 0.0) po.half_width = window;
      po.resolution = resolution;
      const wco::PlotResult res = wco::plot_report(rep, po);
      for (const auto& w : res.warnings) std::cerr << "warning: " << w << "\n";
      write_output(output, res.svg);
    } else if (*batch) {
      std::istringstream lines(read_input(input));
      std::ostringstream out;
      std::string line;
      int worst = 0, lineno = 0;
      while (std::getline(lines, line)) {
        ++lineno;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
          out << wco::to_json(wco::run_spec(wco::parse_spec_text(line), batch_verify)).dump() << "\n";
        } catch (const std::exception& e) {
          const int code = exit_code_for(e);
          worst = std::max(worst, code);
          out << Json{{"line", lineno}, {"exit_code", code}, {"error", e.what()}}.dump() << "\n";
          std::cerr << "line " << lineno << ": " << error_prefix(code) << e.what() << "\n";
        }
      }
      write_output(output, out.str());
      return worst;
    }
  } catch (const std::exception& e) {
    const int code = exit_code_for(e);
    std::cerr << error_prefix(code) << e.what() << "\n";
    return code;
  }
  return 0;
}
