#pragma once

// Shared scalar types, constants and the error hierarchy used across the
// weighted-composition-operator engine.

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace wco {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Unit-circle point e^{i theta}.
inline cplx unit(double theta) { return {std::cos(theta), std::sin(theta)}; }

/// Base for every error the engine raises.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Input violates a structural invariant (zero determinant, not a disk map, ...).
class DegenerateInput : public Error {
 public:
  using Error::Error;
};

/// fixed_points() called on the identity: every point is fixed.
class IdentityMapError : public Error {
 public:
  IdentityMapError()
      : Error("identity map has no isolated fixed points; use the identity path") {}
};

/// The elliptic multiplier is numerically indistinguishable from a root of
/// unity of an order above m_max. Carries both readings so the caller can
/// override with declare-rational / declare-irrational.
class AmbiguousRationality : public Error {
 public:
  AmbiguousRationality(int candidate_order, double angle)
      : Error("elliptic multiplier is within tolerance of a root of unity of order " +
              std::to_string(candidate_order) +
              " (above m_max); pass declare-rational or declare-irrational"),
        candidate_order(candidate_order),
        rotation_angle(angle) {}
  int candidate_order;
  double rotation_angle;
};

class RootFindingError : public Error {
 public:
  RootFindingError(const std::string& what, std::vector<std::string> trace)
      : Error(what), trace(std::move(trace)) {}
  std::vector<std::string> trace;
};

/// A configuration the case analysis cannot answer (maps to CLI exit code 2).
class UnsupportedConfiguration : public Error {
 public:
  using Error::Error;
};

/// Malformed operator spec or report document (CLI exit code 3).
class SchemaError : public Error {
 public:
  using Error::Error;
};

}  // namespace wco
