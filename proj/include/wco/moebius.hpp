#pragma once

// Möbius automorphisms of the closed unit disk: z -> (az + b) / (cz + d).

#include <optional>
#include <variant>
#include <vector>

#include "wco/common.hpp"

namespace wco {

struct ClassifyOptions {
  double tol = 1e-9;   // root-of-unity test |lambda^k - 1| < tol
  int m_max = 64;      // largest rational rotation order searched
  int ambiguity_order_limit = 1 << 16;
  double boundary_tol = 1e-8;  // ||z| - 1| band for boundary fixed points
};

/// Coefficient matrix [[a, b], [c, d]] normalized to |ad - bc| = 1.
class MoebiusMap {
 public:
  /// Validated constructor: rejects a singular matrix or a map that does not
  /// carry the disk onto itself.
  static MoebiusMap from_coefficients(cplx a, cplx b, cplx c, cplx d, double tol = 1e-9);
  /// e^{i theta} (z - a) / (1 - conj(a) z), |a| < 1. Skips the disk check.
  static MoebiusMap canonical(double theta, cplx a);
  static MoebiusMap identity() { return MoebiusMap({1, 0}, {0, 0}, {0, 0}, {1, 0}); }
  static MoebiusMap rotation(cplx multiplier) { return MoebiusMap(multiplier, 0, 0, 1); }
  /// No validation beyond renormalization; used by compose/inverse.
  static MoebiusMap unchecked(cplx a, cplx b, cplx c, cplx d) { return MoebiusMap(a, b, c, d); }
  /// Coefficients that are already normalized (read back from a report), stored verbatim.
  static MoebiusMap from_normalized(cplx a, cplx b, cplx c, cplx d) {
    MoebiusMap m = identity();
    m.a_ = a, m.b_ = b, m.c_ = c, m.d_ = d;
    return m;
  }

  cplx a() const { return a_; }
  cplx b() const { return b_; }
  cplx c() const { return c_; }
  cplx d() const { return d_; }
  cplx determinant() const { return a_ * d_ - b_ * c_; }

  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;
  /// sup over the unit circle of |phi'|.
  double max_circle_derivative() const;

 private:
  MoebiusMap(cplx a, cplx b, cplx c, cplx d);
  cplx a_, b_, c_, d_;
};

cplx evaluate(const MoebiusMap& f, cplx z);
/// f o g.
MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g);
MoebiusMap inverse(const MoebiusMap& f);
MoebiusMap power(const MoebiusMap& f, int n);

enum class Location { Interior, Boundary, Exterior };

struct FixedPoint {
  cplx point;
  Location location;
  cplx multiplier;
  bool double_root = false;
};

/// Roots of c z^2 + (d - a) z - b = 0, tagged by position against the unit
/// circle. A root at infinity (c == 0) is dropped. Throws IdentityMapError.
std::vector<FixedPoint> fixed_points(const MoebiusMap& f, double boundary_tol = 1e-8);

struct Identity {};
struct EllipticRational {
  int m;
  cplx z0;
  cplx multiplier;
};
struct EllipticIrrational {
  cplx z0;
  double r0;
  double theta0;
  cplx multiplier;
};
struct Parabolic {
  cplx zeta;
};
struct Hyperbolic {
  cplx zeta1;  // attracting: |phi'(zeta1)| < 1
  cplx zeta2;  // repelling
  double derivative1;
  double derivative2;
};

using MapClass = std::variant<Identity, EllipticRational, EllipticIrrational, Parabolic, Hyperbolic>;

/// User override for the numerically undecidable rational/irrational split.
struct RationalityOverride {
  enum class Kind { Auto, DeclareRational, DeclareIrrational } kind = Kind::Auto;
  int m = 0;
};

MapClass classify(const MoebiusMap& f, const ClassifyOptions& opts = {},
                  const RationalityOverride& override_ = {});

std::string describe(const MapClass& cls);
std::string class_name(const MapClass& cls);

/// [z, f(z), ..., f^n(z)] by repeated evaluation.
std::vector<cplx> orbit(const MoebiusMap& f, cplx z, int n);

}  // namespace wco
