#pragma once

// Weight cocycles w_n = w (w o phi) ... (w o phi^{n-1}) along boundary orbits,
// and certified bounds on the growth rates they define:
//
//   rho(T)     = lim sup_T |w_n|^{1/n}   (= inf over n, subadditive)
//   rho_min(T) = lim min_T |w_n|^{1/n}   (= sup over n, superadditive)
//
// Upper bounds on sup_T ln|w_n| and lower bounds on min_T ln|w_n| are
// certified by branch-and-bound over arcs of the circle: the image of an arc
// under phi^k is again an arc, and |w| on an arc is bounded by a second-order
// Taylor estimate around the arc centre.

#include <limits>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "wco/blaschke_product.hpp"
#include "wco/moebius.hpp"
#include "wco/weight.hpp"

namespace wco {

using CircleMap = std::variant<MoebiusMap, BlaschkeProduct>;

cplx apply(const CircleMap& map, cplx z);
/// In-place batched application on SoA arrays.
void apply_batch(const CircleMap& map, double* re, double* im, std::size_t n);
double max_circle_derivative(const CircleMap& map);
bool is_homeomorphism(const CircleMap& map);

inline constexpr double kUnderflowFloor = 1e-300;
inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct CocycleProbe {
  CircleMap map;
  WeightPoly weight;
  int n = 64;
  int sample_grid = 1024;

  CocycleProbe(CircleMap map, WeightPoly weight, int n, int sample_grid);
};

/// sum_{k<n} ln|w(phi^k(t))| with pairwise summation; -inf as soon as one
/// factor drops below the underflow floor.
double log_cocycle(const CocycleProbe& probe, cplx t);

/// Running pairwise (cascade) summation.
class PairwiseSum {
 public:
  void add(double x);
  double total() const;

 private:
  std::vector<double> partial_;
  std::vector<std::size_t> counts_;
};

struct CertifiedBound {
  double value = 0.0;    // the certified bound (exp scale, i.e. on |w_n|^{1/n})
  double sampled = 0.0;  // best sampled value at cell midpoints (same scale)
  int n = 0;
  std::size_t cells = 0;
  bool converged = false;
};

struct CertifyOptions {
  double eps = 1e-4;                   // target gap on the log scale, per step
  std::size_t max_cells = 1u << 22;    // total cell-evaluation budget
};

/// U with rho(T) <= U; when converged, U <= (sup_T |w_n|)^{1/n} e^{eps}.
CertifiedBound rho_upper_certified(const CocycleProbe& probe, const CertifyOptions& opts = {});

/// L with L <= (min_T |w_n|)^{1/n} <= rho_min(T).
CertifiedBound min_growth_lower_certified(const CocycleProbe& probe,
                                          const CertifyOptions& opts = {});

/// Certified sup / min of |w| on the circle (grid plus derivative margin).
struct CircleBounds {
  double sup;
  double inf;
};
CircleBounds certified_circle_bounds(const WeightPoly& w, int samples = 4096);

/// Geometric mean of |w| over a verified periodic boundary orbit: a lower
/// bound for rho(T) (point-mass invariant measure) and an upper bound for
/// rho_min(T). Throws DegenerateInput when the orbit does not close up.
double rho_lower_periodic(const WeightPoly& w, const CircleMap& map, std::span<const cplx> orbit,
                          double tol = 1e-9);

struct RadiusEnclosure {
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  std::string lower_witness;
  std::string upper_witness;
};

/// Keeps the smallest upper bound seen over several n (never increases) and
/// the largest lower bound.
class EnclosureTracker {
 public:
  void offer_upper(double value, const std::string& witness);
  void offer_lower(double value, const std::string& witness);
  const RadiusEnclosure& enclosure() const { return enc_; }

 private:
  RadiusEnclosure enc_;
};

struct MinModulusEnclosure {
  double lower;
  double upper;
  std::string lower_witness;
  std::string upper_witness;
};

/// Enclosure of rho_min(T) for a disk automorphism. Lower: certified
/// (min_T |w_n|)^{1/n}. Upper: the smallest geometric mean of |w| over the
/// available periodic orbits (boundary fixed points, or sampled orbits for
/// periodic maps) and the certified rho upper bound.
MinModulusEnclosure rho_min_estimate(const WeightPoly& w, const MoebiusMap& map, int n,
                                     int samples, const CertifyOptions& opts = {});

/// Periodic boundary orbits of a Moebius automorphism usable as witnesses:
/// boundary fixed points, or for periodic maps the orbits of grid points.
std::vector<std::vector<cplx>> moebius_boundary_orbits(const MoebiusMap& map, int samples);

}  // namespace wco
