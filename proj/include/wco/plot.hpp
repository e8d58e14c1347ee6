#pragma once

// Deterministic SVG 1.1 rendering of a spectrum report on a square window
// centred at the origin.

#include <optional>
#include <string>
#include <vector>

#include "wco/spectra.hpp"

namespace wco {

struct PlotOptions {
  /// Half-width of the window; chosen from the report when absent.
  std::optional<double> half_width;
  /// Grid nodes per side for membership-sampled regions.
  int resolution = 65;
  int canvas = 512;
  double tol = 1e-9;
};

struct PlotResult {
  std::string svg;
  std::vector<std::string> warnings;
};

/// sigma is filled (inner part darker when only a lower set is known),
/// sigma_sf is stroked, and non-radial or unknown regions are drawn as
/// sampled point grids with a legend.
PlotResult plot_report(const SpectrumReport& report, const PlotOptions& opts = {});

}  // namespace wco
