#pragma once

// Polynomial weights w(z) = sum c_k z^k on the closed disk.

#include <span>
#include <string>
#include <vector>

#include "wco/common.hpp"

namespace wco {

class WeightPoly {
 public:
  /// Coefficients lowest degree first. Trailing zeros are trimmed; the zero
  /// polynomial is rejected.
  explicit WeightPoly(std::vector<cplx> coeffs);
  static WeightPoly constant(cplx c) { return WeightPoly({c}); }
  /// c * prod (z - r_j).
  static WeightPoly from_roots(std::span<const cplx> roots, cplx leading = 1.0);

  const std::vector<cplx>& coeffs() const { return coeffs_; }
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  cplx leading() const { return coeffs_.back(); }
  double max_abs_coeff() const;
  /// sum |c_k|: bounds |w| on the closed disk.
  double l1_norm() const;

  cplx operator()(cplx z) const;
  WeightPoly derivative() const;
  /// sup of |w'| on the closed disk (sum k |c_k|).
  double derivative_bound() const;
  /// sup of |w''| on the closed disk.
  double second_derivative_bound() const;

  bool operator==(const WeightPoly&) const = default;

 private:
  std::vector<cplx> coeffs_;
};

cplx eval(const WeightPoly& w, cplx z);

struct Root {
  cplx value;
  int multiplicity;
};

struct RootOptions {
  double cluster_tol = 1e-7;
  int polish_iterations = 50;
};

/// All roots with multiplicities (sum == degree). Companion-matrix
/// eigenvalues after balancing, polished by Aberth iteration, then clustered.
std::vector<Root> roots(const WeightPoly& w, const RootOptions& opts = {});

enum class InvertibilityKind { InvertibleInAlgebra, NonvanishingOnCircle, VanishesOnCircle };

struct InvertibilityClass {
  InvertibilityKind kind;
  std::vector<Root> inside;     // |r| < 1 - tol
  std::vector<Root> on_circle;  // ||r| - 1| <= tol
  std::vector<Root> outside;    // |r| > 1 + tol
  std::vector<std::string> warnings;  // borderline roots in (tol, 10 tol)
};

InvertibilityClass classify_invertibility(const WeightPoly& w, double tol = 1e-7);
std::string to_string(InvertibilityKind kind);

struct LocalFactor {
  int order;       // n in w = (z - z0)^n w1
  cplx w1_at_z0;   // nonzero
};

LocalFactor factor_at(const WeightPoly& w, cplx z0, double tol = 1e-9);

/// Deflate w by (z - r): returns the quotient, discarding the remainder.
WeightPoly deflate(const WeightPoly& w, cplx r);

struct CircleExtrema {
  double min_mod;
  double max_mod;
  double argmin;
  double argmax;
};

CircleExtrema circle_extrema(const WeightPoly& w, int samples = 1024);

}  // namespace wco
