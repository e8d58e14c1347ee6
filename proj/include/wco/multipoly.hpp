#pragma once

// Sparse multivariate polynomials on the closed polydisc.

#include <span>
#include <vector>

#include "wco/common.hpp"

namespace wco {

struct Term {
  std::vector<int> exponents;
  cplx coeff;
};

class MultiPoly {
 public:
  /// Like terms are merged; zero terms dropped; the zero polynomial is
  /// rejected. Every exponent vector must have length dim.
  MultiPoly(int dim, std::vector<Term> terms);
  /// Embed a univariate polynomial (lowest degree first) in variable `var`.
  static MultiPoly univariate(int dim, int var, std::span<const cplx> coeffs);

  int dim() const { return dim_; }
  const std::vector<Term>& terms() const { return terms_; }

  cplx operator()(std::span<const cplx> z) const;
  cplx constant_term() const;
  /// sum of |c| over non-constant terms.
  double nonconstant_l1() const;
  /// |c_0| > sum of the other |c|: w has no zero on the closed polydisc.
  bool dominant_constant() const;
  /// sup of |dw/dz_j| over the polydisc of radius `radius`.
  double partial_bound(int var, double radius = 1.0) const;
  int degree_in(int var) const;
  /// Coefficients in z_var (lowest first) with the other variables fixed.
  std::vector<cplx> restrict_to(int var, std::span<const cplx> z) const;

  bool operator==(const MultiPoly&) const = default;

 private:
  int dim_;
  std::vector<Term> terms_;
};

}  // namespace wco
