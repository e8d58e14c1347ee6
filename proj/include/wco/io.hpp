#pragma once

// JSON operator specs and report documents, plus the analysis driver used by
// the CLI. Complex numbers are [re, im] pairs. Key order is fixed so that
// identical inputs give byte-identical output.

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "wco/blaschke.hpp"
#include "wco/multipoly.hpp"
#include "wco/polydisc.hpp"
#include "wco/spectra.hpp"

namespace wco {

using Json = nlohmann::ordered_json;

inline constexpr const char* kEngineVersion = "wco 0.1.0";

enum class Algebra { Disc, Polydisc, Endomorphism };
std::string to_string(Algebra a);

struct SpecOptions {
  double tol = 1e-9;
  int m_max = 64;
  double root_tol = 1e-7;
  std::string rationality = "auto";  // auto | declare-rational | declare-irrational
  int declared_m = 0;
  int oracle_n = 60;
  int oracle_samples = 1024;
  double verify_tol = 1e-3;
  std::size_t max_cells = 1u << 22;
  int q_max = 8;
  int p_max = 8;
  int n_max = 64;
  std::optional<double> cited_rho;

  bool operator==(const SpecOptions&) const = default;
};

/// Defaults adjusted by the WCO_TOL_PROFILE environment variable
/// (strict | default | loose).
SpecOptions default_options();

struct OperatorSpec {
  Algebra algebra = Algebra::Disc;
  int dim = 1;

  // Disc: exactly one of moebius / canonical.
  std::optional<std::vector<cplx>> moebius;  // a, b, c, d
  std::optional<double> canonical_theta;
  std::optional<cplx> canonical_a;

  // Polydisc.
  std::vector<double> gammas_over_pi;
  std::string independence = "check";  // declared | check

  // Endomorphism.
  std::vector<cplx> blaschke_zeros;
  cplx blaschke_phase = 1.0;

  // Weight: coefficients (disc, endomorphism) or sparse terms (polydisc).
  std::vector<cplx> weight_coeffs;
  std::vector<Term> weight_terms;

  SpecOptions options;

  bool operator==(const OperatorSpec& o) const;
};

OperatorSpec parse_spec(const Json& j);
/// Parse errors become SchemaError with the byte position.
OperatorSpec parse_spec_text(const std::string& text);
Json to_json(const OperatorSpec& spec);

MoebiusMap build_map(const OperatorSpec& spec);
WeightPoly build_weight(const OperatorSpec& spec);
MultiPoly build_multipoly(const OperatorSpec& spec);
TorusRotation build_rotation(const OperatorSpec& spec);
BlaschkeProduct build_blaschke(const OperatorSpec& spec);

Json to_json(const SpectralSet& s);
SpectralSet parse_set(const Json& j);
Json to_json(const SpectrumEntry& e);
SpectrumEntry parse_entry(const Json& j);
Json to_json(const SpectrumReport& r);
SpectrumReport parse_report(const Json& j);
Json to_json(const CheckResult& c);
CheckResult parse_check(const Json& j);

struct ReportDocument {
  OperatorSpec spec;
  SpectrumReport report;
  std::vector<CheckResult> checks;
  std::string engine_version = kEngineVersion;
  std::string fingerprint;
};

Json to_json(const ReportDocument& d);
ReportDocument parse_document(const Json& j);

/// FNV-1a 64 over the canonical spec serialization and the engine version.
std::string fingerprint(const OperatorSpec& spec);

/// Classify and analyze; when `verify` is set, also run the oracle checks.
ReportDocument run_spec(const OperatorSpec& spec, bool verify);

/// One-line summary of the map (classification with fixed points).
std::string classify_summary(const OperatorSpec& spec);

}  // namespace wco
