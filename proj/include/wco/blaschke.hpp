#pragma once

// Weighted endomorphisms f -> w * (f o B) of the disc algebra for finite
// Blaschke products B with at least two factors: periodic boundary orbits,
// rigorous enclosures of rho and rho_min, and the structural facts about
// the spectra that hold in general.

#include <optional>
#include <string>
#include <vector>

#include "wco/blaschke_product.hpp"
#include "wco/cocycle.hpp"
#include "wco/spectra.hpp"
#include "wco/weight.hpp"

namespace wco {

/// Angles in [0, 2 pi) of B^k(e^{i theta0}), k = 0..n, renormalized to the
/// circle after every step.
std::vector<double> boundary_iterate(const BlaschkeProduct& b, double theta0, int n);

struct PeriodicSearch {
  std::vector<std::vector<cplx>> orbits;  // exact minimal period p, one entry per orbit
  bool complete = true;                   // false when the budget cut the search short
  std::vector<std::string> notes;
};

/// Orbits of exact minimal period p (1 <= p <= 12). Closed form for
/// phase * z^d; otherwise a lifted-angle grid with Newton refinement. Every
/// orbit satisfies |B(z_k) - z_{k+1 mod p}| < 1e-12.
PeriodicSearch periodic_points(const BlaschkeProduct& b, int p, std::size_t budget = 1u << 20);

struct BlaschkeOptions {
  int n_max = 64;   // longest cocycle for the certified upper bound
  int p_max = 8;    // longest period searched for lower bounds
  int samples = 1024;
  std::size_t orbit_budget = 1u << 20;
  CertifyOptions certify;
  /// A radius quoted from elsewhere, checked against the enclosure.
  std::optional<double> cited_rho;
};

struct EndomorphismBounds {
  RadiusEnclosure rho;
  RadiusEnclosure rho_min;
  std::size_t orbits_used = 0;
  bool search_complete = true;
};

EndomorphismBounds endomorphism_bounds(const WeightPoly& w, const BlaschkeProduct& b,
                                       const BlaschkeOptions& opts = {});
RadiusEnclosure rho_enclosure(const WeightPoly& w, const BlaschkeProduct& b,
                              const BlaschkeOptions& opts = {});

SpectrumReport analyze_endomorphism(const WeightPoly& w, const BlaschkeProduct& b,
                                    const BlaschkeOptions& opts = {});

/// Enclosure soundness and, when present, the cited radius against the
/// enclosure (FLAG when outside).
std::vector<CheckResult> verify_endomorphism(const SpectrumReport& report,
                                             const BlaschkeOptions& opts = {});

}  // namespace wco
