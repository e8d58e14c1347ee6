#pragma once

// Weighted torus rotations f -> w * (f o phi), phi(z) = (alpha_1 z_1, ..., alpha_n z_n),
// on the polydisc algebra.

#include <span>
#include <string>
#include <vector>

#include "wco/multipoly.hpp"
#include "wco/quadrature.hpp"
#include "wco/spectra.hpp"

namespace wco {

struct TorusRotation {
  enum class Independence { Declared, CheckedUpTo, Unknown };

  std::vector<cplx> alphas;
  Independence independence = Independence::Unknown;
  int q_max = 0;  // search bound when independence == CheckedUpTo

  /// Validates |alpha_j| = 1.
  TorusRotation(std::vector<cplx> alphas, Independence independence, int q_max = 0);
  /// alpha_j = exp(i pi g_j).
  static TorusRotation from_gammas_over_pi(std::span<const double> gammas_over_pi,
                                           Independence independence);
  int dim() const { return static_cast<int>(alphas.size()); }
  /// gamma_j = arg alpha_j.
  std::vector<double> gammas() const;
  std::vector<cplx> operator()(std::span<const cplx> z) const;
};

struct IndependenceResult {
  enum class Kind { Declared, Independent, DependentWitness } kind;
  std::vector<int> witness;  // k with sum k_j gamma_j in 2 pi Z
  int q_max = 0;
  std::string describe() const;
};

/// Exhaustive search over |k_j| <= q_max, smallest L1 norm first. A Declared
/// rotation passes through untouched.
IndependenceResult check_independence(const TorusRotation& rotation, int q_max, double tol = 1e-9);

enum class TorusZeros { Nonvanishing, Vanishes, Undecided };

struct TorusScan {
  TorusZeros status;
  double min_sampled;            // smallest |w| seen
  double certified_lower;        // > 0 when Nonvanishing
  std::vector<double> witness;   // angles of a zero when Vanishes
  std::size_t cells;
};

/// Branch and bound over angle boxes with a Lipschitz margin; Gauss-Newton
/// descent from small cells to confirm zeros (|w| < zero_tol).
TorusScan scan_torus(const MultiPoly& w, double zero_tol = 1e-8, std::size_t max_cells = 1u << 20);

struct PolydiscOptions {
  int q_max = 8;
  double independence_tol = 1e-9;
  double zero_tol = 1e-8;
  std::size_t max_cells = 1u << 20;
  TorusOptions torus;
};

SpectrumReport analyze_polydisc(const TorusRotation& rotation, const MultiPoly& w,
                                const PolydiscOptions& opts = {});

/// Dual-path checks: mean value |w(0)| against exp(torus integral) under the
/// nonvanishing certificate, and sampled Birkhoff averages of ln|w| along
/// orbits against the reported radius.
std::vector<CheckResult> verify_polydisc(const SpectrumReport& report, const TorusRotation& rotation,
                                         const MultiPoly& w, int n = 4096, double tol = 1e-2);

}  // namespace wco
