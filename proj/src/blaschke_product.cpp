#include "wco/blaschke_product.hpp"

#include <cmath>

namespace wco {

BlaschkeProduct::BlaschkeProduct(std::vector<cplx> zeros, cplx phase)
    : zeros_(std::move(zeros)), phase_(phase) {
  if (zeros_.size() < 2) {
    throw DegenerateInput("Blaschke product needs at least two factors");
  }
  for (const cplx& a : zeros_) {
    if (!(std::abs(a) < 1.0)) throw DegenerateInput("Blaschke zero must lie in the open disk");
  }
  if (std::abs(std::abs(phase_) - 1.0) > 1e-9) {
    throw DegenerateInput("Blaschke phase must be unimodular");
  }
  phase_ /= std::abs(phase_);
}

BlaschkeProduct BlaschkeProduct::monomial(int d, cplx phase) {
  return BlaschkeProduct(std::vector<cplx>(static_cast<std::size_t>(std::max(d, 0)), 0.0), phase);
}

bool BlaschkeProduct::is_monomial() const {
  for (const cplx& a : zeros_) {
    if (a != cplx(0.0, 0.0)) return false;
  }
  return true;
}

cplx BlaschkeProduct::operator()(cplx z) const {
  cplx acc = phase_;
  for (const cplx& a : zeros_) acc *= (z - a) / (1.0 - std::conj(a) * z);
  return acc;
}

cplx BlaschkeProduct::derivative(cplx z) const {
  // B'/B = sum (1 - |a|^2) / ((z - a)(1 - conj(a) z)).
  cplx value = (*this)(z);
  cplx log_deriv = 0.0;
  bool at_zero = false;
  for (const cplx& a : zeros_) {
    if (z == a) at_zero = true;
  }
  if (!at_zero) {
    for (const cplx& a : zeros_) {
      log_deriv += (1.0 - std::norm(a)) / ((z - a) * (1.0 - std::conj(a) * z));
    }
    return value * log_deriv;
  }
  // Product rule at a zero of B.
  cplx total = 0.0;
  for (std::size_t i = 0; i < zeros_.size(); ++i) {
    cplx term = phase_;
    for (std::size_t j = 0; j < zeros_.size(); ++j) {
      const cplx a = zeros_[j];
      const cplx den = 1.0 - std::conj(a) * z;
      term *= (i == j) ? (1.0 - std::norm(a)) / (den * den) : (z - a) / den;
    }
    total += term;
  }
  return total;
}

double BlaschkeProduct::max_circle_derivative() const {
  double s = 0.0;
  for (const cplx& a : zeros_) s += (1.0 + std::abs(a)) / (1.0 - std::abs(a));
  return s;
}

}  // namespace wco
