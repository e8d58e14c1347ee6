#pragma once

// Log-modulus integrals that give spectral radii:
//   Poisson-weighted circle integral  (1/2pi) int ln|w(e^{it})| P_{z0}(t) dt
//   torus integral                     int_{T^n} ln|w| dm_n

#include <cstddef>
#include <string>
#include <vector>

#include "wco/multipoly.hpp"
#include "wco/weight.hpp"

namespace wco {

struct LogIntegralResult {
  double value = 0.0;          // singular_part + smooth_part
  double singular_part = 0.0;  // closed-form contribution of peeled circle zeros
  double smooth_part = 0.0;
  double est_error = 0.0;
  bool estimate = false;       // true when the error is statistical, not a bound
  std::vector<std::string> notes;
};

/// Poisson kernel P_{z0}(t) = (1 - |z0|^2) / |e^{it} - z0|^2.
double poisson_kernel(cplx z0, double theta);

/// Exact evaluation from the root factorization w = c prod (z - r_j):
/// interior root -> ln|1 - conj(r) z0|, root on or outside the circle ->
/// ln|z0 - r|, plus ln|c|.
LogIntegralResult poisson_log_integral_closed_form(const WeightPoly& w, cplx z0,
                                                   double root_tol = 1e-7);

/// Adaptive 32-point Gauss-Legendre panels on the circle after analytic
/// removal of the zeros that sit on the circle.
LogIntegralResult poisson_log_integral_numeric(const WeightPoly& w, cplx z0, double tol = 1e-12,
                                               double root_tol = 1e-7);

/// Closed form as the value; the numerical path as the self-check
/// (est_error = |closed - numeric|, note added on disagreement above tol).
LogIntegralResult poisson_log_integral(const WeightPoly& w, cplx z0, double tol = 1e-10);

struct TorusOptions {
  double tol = 1e-8;
  std::size_t budget = 1u << 22;  // evaluation budget
};

/// Tensor Gauss panels under the dominant-constant certificate, otherwise
/// Jensen's formula in one variable and tensor Gauss panels over the rest.
/// est_error is the difference between the last two panel refinements.
LogIntegralResult torus_log_integral(const MultiPoly& w, const TorusOptions& opts = {});

/// Nodes and weights of the n-point Gauss-Legendre rule on [-1, 1].
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussRule& gauss_legendre_32();
GaussRule gauss_legendre(int n);

}  // namespace wco
