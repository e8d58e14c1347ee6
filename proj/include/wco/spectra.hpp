#pragma once

// Case analysis for T = w * T_phi on the disc algebra: the seven spectra,
// the spectral radius and the minimal modulus, plus oracle cross-checks.

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "wco/cocycle.hpp"
#include "wco/moebius.hpp"
#include "wco/spectral_set.hpp"
#include "wco/weight.hpp"

namespace wco {

inline constexpr const char* kNotCovered = "not_covered";

struct SpectrumReport {
  std::string case_tag;
  std::string map_class;
  SpectrumEntry sigma;
  SpectrumEntry sigma_ap;
  SpectrumEntry sigma_usf;
  SpectrumEntry sigma_sf;
  SpectrumEntry sigma_lsf;
  SpectrumEntry sigma_f;
  SpectrumEntry sigma_w;
  double rho = 0.0;
  double rho_min = 0.0;
  std::vector<std::string> notes;
  /// Named auxiliary numbers (fixed-point values, |w_1(z_0)|, ...).
  std::vector<std::pair<std::string, double>> quantities;
  /// Other readings when a case split sits inside the tolerance band.
  std::vector<SpectrumReport> alternates;
  std::optional<RadiusEnclosure> oracle_rho;
  std::optional<RadiusEnclosure> oracle_rho_min;

  /// The seven spectra in a fixed order, for iteration.
  std::array<std::pair<const char*, const SpectrumEntry*>, 7> entries() const;
  std::array<std::pair<const char*, SpectrumEntry*>, 7> entries();
  void set_all(const SpectrumEntry& e);
  std::optional<double> quantity(const std::string& name) const;
};

struct AnalyzeOptions {
  ClassifyOptions classify;
  RationalityOverride rationality;
  double root_tol = 1e-7;        // invertibility / circle-zero band
  double equal_rel_tol = 1e-9;   // |w(zeta1)| vs |w(zeta2)|
  double dual_band = 1e-6;       // above equal_rel_tol and below this: dual report
  double quad_tol = 1e-10;
  int extrema_samples = 4096;
};

SpectrumReport analyze_disc(const MoebiusMap& map, const WeightPoly& w,
                            const AnalyzeOptions& opts = {});

/// (min, max) of |f| on the unit circle: dense grid plus local refinement.
std::pair<double, double> circle_modulus_range(const DiskFunction& f, int samples);

enum class Verdict { OK, FLAG };
std::string to_string(Verdict v);

struct CheckResult {
  std::string name;
  double closed_form = 0.0;
  double oracle_lo = 0.0;
  double oracle_hi = 0.0;
  Verdict verdict = Verdict::OK;
  std::string note;
};

struct VerifyOptions {
  int n = 60;              // cocycle length
  int samples = 1024;      // boundary sample grid
  double tol = 1e-3;       // slack, relative to max(1, value)
  CertifyOptions certify;
};

/// Encloses rho and rho_min with the cocycle oracle and checks every radius
/// of the report against it. Never throws on disagreement: FLAG is data.
std::vector<CheckResult> verify_report(SpectrumReport& report, const WeightPoly& w,
                                       const MoebiusMap& map, const VerifyOptions& opts = {});

CheckResult make_check(std::string name, double value, double lo, double hi, double tol,
                       std::string note = {});

}  // namespace wco
