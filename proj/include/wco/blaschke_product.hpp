#pragma once

// Finite Blaschke products B(z) = phase * prod (z - a_k) / (1 - conj(a_k) z).

#include <vector>

#include "wco/common.hpp"

namespace wco {

class BlaschkeProduct {
 public:
  /// Requires |a_k| < 1, |phase| = 1 and at least two factors.
  BlaschkeProduct(std::vector<cplx> zeros, cplx phase = 1.0);
  /// phase * z^d, d >= 2.
  static BlaschkeProduct monomial(int d, cplx phase = 1.0);

  const std::vector<cplx>& zeros() const { return zeros_; }
  cplx phase() const { return phase_; }
  int degree() const { return static_cast<int>(zeros_.size()); }
  /// All zeros at the origin: B = phase * z^d.
  bool is_monomial() const;

  cplx operator()(cplx z) const;
  cplx derivative(cplx z) const;
  /// sup over the circle of |B'| = sum (1 + |a|) / (1 - |a|).
  double max_circle_derivative() const;

  bool operator==(const BlaschkeProduct&) const = default;

 private:
  std::vector<cplx> zeros_;
  cplx phase_;
};

}  // namespace wco
