#pragma once

// Closed plane regions with ternary membership, as produced by the case
// analysis: radial primitives (circles, disks, annuli), finite point sets,
// and preimages {lambda : lambda^m in base} of a holomorphic range or curve.

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "wco/moebius.hpp"
#include "wco/weight.hpp"

namespace wco {

enum class Membership { In, Out, Unknown };
std::string to_string(Membership m);

/// The weight cocycle w_m(z) = w(z) w(phi(z)) ... w(phi^{m-1}(z)), evaluated
/// by composition (never by expanding coefficients).
struct DiskFunction {
  WeightPoly weight;
  MoebiusMap map;
  int m = 1;

  cplx operator()(cplx z) const;
  /// Bound on |d/dtheta f(e^{i theta})|.
  double circle_lipschitz() const;
};

struct MembershipBudget {
  int initial_samples = 256;
  std::size_t max_segments = 1u << 20;
};

/// Argument-principle test for c in f(closed disk).
Membership range_membership(const DiskFunction& f, cplx c, double tol,
                            const MembershipBudget& budget = {});
/// Distance test for c in f(unit circle).
Membership curve_membership(const DiskFunction& f, cplx c, double tol,
                            const MembershipBudget& budget = {});
/// Winding number of theta -> f(e^{i theta}) - c on a dense uniform grid
/// (no certification); used for diagnostics.
int sampled_winding(const DiskFunction& f, cplx c, int samples);

struct PlaneRegion {
  enum class Kind { RangeOnDisk, CurveImage } kind;
  DiskFunction f;

  Membership membership(cplx c, double tol) const;
};

class SpectralSet;

namespace region {
struct Empty {
  bool operator==(const Empty&) const = default;
};
struct OriginPoint {
  bool operator==(const OriginPoint&) const = default;
};
struct Circle {
  double r;
  bool operator==(const Circle&) const = default;
};
struct ClosedDisk {
  double r;
  bool operator==(const ClosedDisk&) const = default;
};
struct ClosedAnnulus {
  double r1;
  double r2;
  bool operator==(const ClosedAnnulus&) const = default;
};
struct FinitePoints {
  std::vector<cplx> points;
  bool operator==(const FinitePoints&) const = default;
};
struct RootPreimage {
  int m;
  PlaneRegion base;
};
struct Union {
  std::vector<SpectralSet> parts;
};
}  // namespace region

class SpectralSet {
 public:
  using Node = std::variant<region::Empty, region::OriginPoint, region::Circle, region::ClosedDisk,
                            region::ClosedAnnulus, region::FinitePoints, region::RootPreimage,
                            region::Union>;

  SpectralSet() : node_(region::Empty{}) {}
  SpectralSet(Node node);

  static SpectralSet empty() { return SpectralSet(region::Empty{}); }
  static SpectralSet origin() { return SpectralSet(region::OriginPoint{}); }
  /// r == 0 collapses to the origin.
  static SpectralSet circle(double r);
  static SpectralSet disk(double r);
  static SpectralSet annulus(double r1, double r2);
  static SpectralSet points(std::vector<cplx> pts);
  static SpectralSet root_preimage(int m, PlaneRegion base);
  static SpectralSet unite(std::vector<SpectralSet> parts);

  const Node& node() const { return node_; }
  Membership membership(cplx lambda, double tol = 1e-9) const;
  /// Circle, disk, annulus, origin, or a union of those.
  bool is_radial() const;
  /// For radial sets: the set of moduli as a list of closed intervals.
  std::vector<std::pair<double, double>> modulus_intervals() const;
  std::string describe() const;

 private:
  Node node_;
};

enum class Knowledge { Exact, ContainsAtLeast, Unknown };
std::string to_string(Knowledge k);

/// One spectrum in a report. Exact: `set` is the spectrum. ContainsAtLeast:
/// `set` is contained in it and `outer` (if present) contains it. Unknown:
/// only `outer` is known.
struct SpectrumEntry {
  Knowledge status = Knowledge::Exact;
  SpectralSet set;
  std::optional<SpectralSet> outer;
  std::vector<std::string> notes;

  static SpectrumEntry exact(SpectralSet s, std::vector<std::string> notes = {});
  static SpectrumEntry at_least(SpectralSet inner, std::optional<SpectralSet> outer,
                                std::vector<std::string> notes = {});
  static SpectrumEntry unknown(std::optional<SpectralSet> outer, std::vector<std::string> notes = {});

  Membership membership(cplx lambda, double tol = 1e-9) const;
};

}  // namespace wco
