#include "wco/polydisc.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <random>

#include "wco/format.hpp"

namespace wco {

TorusRotation::TorusRotation(std::vector<cplx> a, Independence ind, int q)
    : alphas(std::move(a)), independence(ind), q_max(q) {
  if (alphas.empty()) throw DegenerateInput("torus rotation needs at least one multiplier");
  for (const cplx& x : alphas)
    if (std::abs(std::abs(x) - 1.0) > 1e-9)
      throw DegenerateInput("rotation multiplier " + format_complex(x) + " is not unimodular");
}

TorusRotation TorusRotation::from_gammas_over_pi(std::span<const double> g, Independence ind) {
  std::vector<cplx> a;
  for (double x : g) a.push_back(unit(kPi * x));
  return TorusRotation(std::move(a), ind);
}

std::vector<double> TorusRotation::gammas() const {
  std::vector<double> out;
  for (const cplx& a : alphas) {
    double t = std::arg(a);
    if (t < 0) t += kTwoPi;
    out.push_back(t);
  }
  return out;
}

std::vector<cplx> TorusRotation::operator()(std::span<const cplx> z) const {
  std::vector<cplx> out(z.size());
  for (std::size_t j = 0; j < z.size(); ++j) out[j] = alphas[j] * z[j];
  return out;
}

std::string IndependenceResult::describe() const {
  switch (kind) {
    case Kind::Declared: return "independence declared";
    case Kind::Independent:
      return "no integer relation with |k_j| <= " + std::to_string(q_max);
    case Kind::DependentWitness: {
      std::string s = "integer relation k = (";
      for (std::size_t i = 0; i < witness.size(); ++i) {
        if (i) s += ", ";
        s += std::to_string(witness[i]);
      }
      return s + ") with sum k_j gamma_j in 2 pi Z";
    }
  }
  return "";
}

IndependenceResult check_independence(const TorusRotation& rotation, int q_max, double tol) {
  if (rotation.independence == TorusRotation::Independence::Declared)
    return {IndependenceResult::Kind::Declared, {}, q_max};
  if (q_max < 1) throw DegenerateInput("q_max must be >= 1");
  const std::vector<double> g = rotation.gammas();
  const int n = rotation.dim();

  // Enumerate all k in [-q, q]^n, keep the canonical sign (first nonzero > 0),
  // and order by L1 norm then lexicographically.
  std::vector<std::vector<int>> cands;
  std::vector<int> k(n, -q_max);
  while (true) {
    int first = 0;
    for (int x : k)
      if (x != 0) {
        first = x;
        break;
      }
    if (first > 0) cands.push_back(k);
    int i = n - 1;
    while (i >= 0 && k[i] == q_max) k[i--] = -q_max;
    if (i < 0) break;
    ++k[i];
  }
  auto l1 = [](const std::vector<int>& v) {
    return std::accumulate(v.begin(), v.end(), 0, [](int a, int b) { return a + std::abs(b); });
  };
  std::stable_sort(cands.begin(), cands.end(), [&](const auto& a, const auto& b) {
    const int la = l1(a), lb = l1(b);
    return la != lb ? la < lb : std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  });
  for (const auto& c : cands) {
    double s = 0.0, mag = 0.0;
    for (int j = 0; j < n; ++j) {
      s += c[j] * g[j];
      mag += std::abs(c[j] * g[j]);
    }
    const double r = s - kTwoPi * std::round(s / kTwoPi);
    if (std::abs(r) <= tol * (1.0 + mag)) return {IndependenceResult::Kind::DependentWitness, c, q_max};
  }
  return {IndependenceResult::Kind::Independent, {}, q_max};
}

namespace {

std::vector<cplx> torus_point(std::span<const double> theta) {
  std::vector<cplx> z;
  for (double t : theta) z.push_back(unit(t));
  return z;
}

// w and dw/dtheta_j = i z_j dw/dz_j at a torus point.
cplx value_and_grad(const MultiPoly& w, std::span<const cplx> z, std::vector<cplx>& grad) {
  const int n = w.dim();
  grad.assign(n, 0.0);
  cplx v = 0.0;
  for (const Term& t : w.terms()) {
    cplx mono = t.coeff;
    for (int j = 0; j < n; ++j) mono *= std::pow(z[j], t.exponents[j]);
    v += mono;
    for (int j = 0; j < n; ++j)
      if (t.exponents[j] != 0) grad[j] += cplx(0, 1) * static_cast<double>(t.exponents[j]) * mono;
  }
  return v;
}

// Minimum-norm Gauss-Newton on the angles for w(e^{i theta}) = 0.
double descend(const MultiPoly& w, std::vector<double>& theta) {
  const int n = w.dim();
  std::vector<cplx> grad;
  double best = std::abs(w(torus_point(theta)));
  for (int it = 0; it < 60 && best > 0.0; ++it) {
    const cplx v = value_and_grad(w, torus_point(theta), grad);
    // J is 2 x n with rows Re and Im of grad; solve (J J^T) y = r, delta = -J^T y.
    double a = 0, b = 0, d = 0;
    for (int j = 0; j < n; ++j) {
      a += grad[j].real() * grad[j].real();
      b += grad[j].real() * grad[j].imag();
      d += grad[j].imag() * grad[j].imag();
    }
    double det = a * d - b * b;
    std::vector<double> step(n);
    if (det > 1e-14 * (a + d) * (a + d)) {
      const double y0 = (d * v.real() - b * v.imag()) / det;
      const double y1 = (-b * v.real() + a * v.imag()) / det;
      for (int j = 0; j < n; ++j) step[j] = -(grad[j].real() * y0 + grad[j].imag() * y1);
    } else {
      // One variable (or parallel gradients): project on the gradient direction.
      const double g2 = a + d;
      if (g2 <= 0) break;
      for (int j = 0; j < n; ++j)
        step[j] = -(grad[j].real() * v.real() + grad[j].imag() * v.imag()) / g2;
    }
    std::vector<double> trial = theta;
    double lam = 1.0, tv = 0.0;
    for (int ls = 0; ls < 30; ++ls, lam *= 0.5) {
      for (int j = 0; j < n; ++j) trial[j] = theta[j] + lam * step[j];
      tv = std::abs(w(torus_point(trial)));
      if (tv < best) break;
    }
    if (!(tv < best)) break;
    theta = trial;
    best = tv;
  }
  return best;
}

struct Box {
  std::vector<double> centre;
  std::vector<double> half;
};

}  // namespace

TorusScan scan_torus(const MultiPoly& w, double zero_tol, std::size_t max_cells) {
  const int n = w.dim();
  std::vector<double> lip(n);
  for (int j = 0; j < n; ++j) lip[j] = w.partial_bound(j);

  const int per_dim = n == 1 ? 256 : n == 2 ? 32 : n == 3 ? 12 : 6;
  std::deque<Box> queue;
  {
    std::vector<int> idx(n, 0);
    const double h = kPi / per_dim;
    while (true) {
      Box b{std::vector<double>(n), std::vector<double>(n, h)};
      for (int j = 0; j < n; ++j) b.centre[j] = (2 * idx[j] + 1) * h;
      queue.push_back(std::move(b));
      int j = n - 1;
      while (j >= 0 && idx[j] == per_dim - 1) idx[j--] = 0;
      if (j < 0) break;
      ++idx[j];
    }
  }

  TorusScan out{TorusZeros::Nonvanishing, std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity(), {}, 0};
  const double descend_threshold = 1e-2 * (std::abs(w.constant_term()) + w.nonconstant_l1());
  int descents = 0;
  while (!queue.empty()) {
    Box b = std::move(queue.front());
    queue.pop_front();
    ++out.cells;
    const double v = std::abs(w(torus_point(b.centre)));
    out.min_sampled = std::min(out.min_sampled, v);
    if (v <= zero_tol) {
      out.status = TorusZeros::Vanishes;
      out.witness = b.centre;
      return out;
    }
    double radius = 0.0;
    int widest = 0;
    for (int j = 0; j < n; ++j) {
      radius += lip[j] * b.half[j];
      if (lip[j] * b.half[j] > lip[widest] * b.half[widest]) widest = j;
    }
    if (v - radius > 0.0) {
      out.certified_lower = std::min(out.certified_lower, v - radius);
      continue;
    }
    if (v < descend_threshold && descents < 256) {
      ++descents;
      std::vector<double> t = b.centre;
      const double m = descend(w, t);
      out.min_sampled = std::min(out.min_sampled, m);
      if (m <= zero_tol) {
        out.status = TorusZeros::Vanishes;
        out.witness = t;
        return out;
      }
    }
    if (out.cells + queue.size() + 2 > max_cells) {
      out.status = TorusZeros::Undecided;
      return out;
    }
    Box lo = b, hi = b;
    lo.half[widest] = hi.half[widest] = 0.5 * b.half[widest];
    lo.centre[widest] -= 0.5 * b.half[widest];
    hi.centre[widest] += 0.5 * b.half[widest];
    queue.push_back(std::move(lo));
    queue.push_back(std::move(hi));
  }
  return out;
}

namespace {

// Zeros of w(., z_j, .) inside the unit disk with the other variables at 1.
int interior_zero_count(const MultiPoly& w, int var) {
  std::vector<cplx> z(w.dim(), 1.0);
  std::vector<cplx> coeffs = w.restrict_to(var, z);
  while (coeffs.size() > 1 && coeffs.back() == 0.0) coeffs.pop_back();
  if (coeffs.size() <= 1) return 0;
  int count = 0;
  for (const Root& r : roots(WeightPoly(coeffs)))
    if (std::abs(r.value) < 1.0) count += r.multiplicity;
  return count;
}

}  // namespace

SpectrumReport analyze_polydisc(const TorusRotation& rotation, const MultiPoly& w,
                                const PolydiscOptions& opts) {
  if (w.dim() != rotation.dim())
    throw DegenerateInput("weight has " + std::to_string(w.dim()) + " variables but the rotation has " +
                          std::to_string(rotation.dim()));
  const IndependenceResult ind = check_independence(rotation, opts.q_max, opts.independence_tol);
  if (ind.kind == IndependenceResult::Kind::DependentWitness)
    throw UnsupportedConfiguration("rotation angles are rationally dependent (" + ind.describe() +
                                   "); the torus-rotation analysis needs independent angles");

  SpectrumReport r;
  r.map_class = "TorusRotation n=" + std::to_string(rotation.dim()) + " (" + ind.describe() + ")";
  const LogIntegralResult I = torus_log_integral(w, opts.torus);
  const double rho_int = std::exp(I.value);
  r.quantities.push_back({"torus_log_integral", I.value});
  r.quantities.push_back({"torus_log_integral_error", I.est_error});
  for (const auto& note : I.notes) r.notes.push_back(note);
  if (I.estimate) r.notes.push_back("torus integral is a statistical estimate");
  const double c0 = std::abs(w.constant_term());
  r.quantities.push_back({"w_at_origin_abs", c0});

  bool invertible = false;
  bool vanishes = false;
  if (w.dominant_constant()) {
    invertible = true;
    r.notes.push_back("invertible in the polydisc algebra: |w(0)| exceeds the sum of the other "
                      "coefficient moduli");
  } else {
    const TorusScan scan = scan_torus(w, opts.zero_tol, opts.max_cells);
    r.quantities.push_back({"torus_min_sampled", scan.min_sampled});
    if (scan.status == TorusZeros::Undecided) {
      r.case_tag = kNotCovered;
      r.rho = r.rho_min = rho_int;
      const double sup = c0 + w.nonconstant_l1();
      r.set_all(SpectrumEntry::unknown(SpectralSet::disk(sup)));
      r.notes.push_back("cannot certify: nonvanishing on the torus is undecided within " +
                        std::to_string(scan.cells) + " cells");
      return r;
    }
    if (scan.status == TorusZeros::Vanishes) {
      vanishes = true;
      std::string at;
      for (double t : scan.witness) at += (at.empty() ? "" : ", ") + format_real(t);
      r.notes.push_back("w vanishes on the torus near angles (" + at + ")");
    } else {
      r.quantities.push_back({"torus_min_certified", scan.certified_lower});
      invertible = true;
      for (int j = 0; j < w.dim() && invertible; ++j)
        if (w.degree_in(j) > 0 && interior_zero_count(w, j) > 0) invertible = false;
      r.notes.push_back(invertible
                            ? "nonvanishing on the torus and zero winding in every variable: no "
                              "zero on the closed polydisc"
                            : "nonvanishing on the torus with a zero inside the polydisc");
    }
  }

  if (invertible) {
    r.case_tag = "torus_rotation.invertible";
    r.rho = r.rho_min = c0;
    r.set_all(SpectrumEntry::exact(SpectralSet::circle(c0)));
    r.sigma_sf.notes.push_back(
        "sigma_f is a nonempty rotation-invariant closed subset of the circle, hence the circle, "
        "and its boundary lies in sigma_sf");
    r.notes.push_back("mean value: exp(torus integral) = " + format_real(rho_int, 12) +
                      " against |w(0)| = " + format_real(c0, 12));
  } else if (vanishes) {
    r.case_tag = "torus_rotation.vanishes_on_torus";
    r.rho = r.rho_min = rho_int;
    r.set_all(SpectrumEntry::exact(SpectralSet::disk(rho_int)));
  } else {
    r.case_tag = "torus_rotation.nonvanishing_on_torus";
    r.rho = r.rho_min = rho_int;
    const SpectralSet disk = SpectralSet::disk(rho_int);
    r.sigma = r.sigma_usf = SpectrumEntry::exact(disk);
    r.sigma_ap = SpectrumEntry::exact(disk, {"sigma_ap = sigma_usf"});
    r.sigma_f = SpectrumEntry::exact(disk, {"forced by sigma_usf <= sigma_f <= sigma"});
    r.sigma_w = SpectrumEntry::exact(disk, {"forced by sigma_f <= sigma_w <= sigma"});
    const std::string note = "contains the boundary circle of sigma_f; interior points not decided";
    r.sigma_sf = SpectrumEntry::at_least(SpectralSet::circle(rho_int), disk, {note});
    r.sigma_lsf = SpectrumEntry::at_least(SpectralSet::circle(rho_int), disk, {note});
  }
  r.notes.push_back("rho_min = rho: the rotation is uniquely ergodic");
  return r;
}

std::vector<CheckResult> verify_polydisc(const SpectrumReport& report, const TorusRotation& rotation,
                                         const MultiPoly& w, int n, double tol) {
  std::vector<CheckResult> out;
  if (const auto li = report.quantity("torus_log_integral")) {
    const double v = std::exp(*li);
    const double err = report.quantity("torus_log_integral_error").value_or(0.0);
    out.push_back(make_check("rho.torus_integral", report.rho, v * std::exp(-err), v * std::exp(err),
                             1e-6, "exp of the torus log-integral"));
  }
  // Birkhoff averages of ln|w| along 16 seeded orbits.
  std::mt19937_64 rng(0x5eed);
  std::uniform_real_distribution<double> angle(0.0, kTwoPi);
  double lo = std::numeric_limits<double>::infinity(), hi = -lo;
  for (int s = 0; s < 16; ++s) {
    std::vector<cplx> z(rotation.dim());
    for (auto& x : z) x = unit(angle(rng));
    PairwiseSum sum;
    bool zero = false;
    for (int k = 0; k < n; ++k) {
      const double v = std::abs(w(z));
      if (v < kUnderflowFloor) {
        zero = true;
        break;
      }
      sum.add(std::log(v));
      z = rotation(z);
      for (auto& x : z) x /= std::abs(x);
    }
    const double g = zero ? 0.0 : std::exp(sum.total() / n);
    lo = std::min(lo, g);
    hi = std::max(hi, g);
  }
  out.push_back(make_check("rho.birkhoff_sampled", report.rho, lo, hi, tol,
                           "sampled orbit averages, n=" + std::to_string(n) + " (not certified)"));
  return out;
}

}  // namespace wco
