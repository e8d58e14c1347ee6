#include "wco/cocycle.hpp"

#include <algorithm>
#include <cmath>

#include "wco/format.hpp"
#include "wco/kernels.hpp"

namespace wco {

cplx apply(const CircleMap& map, cplx z) {
  return std::visit([z](const auto& f) { return f(z); }, map);
}

void apply_batch(const CircleMap& map, double* re, double* im, std::size_t n) {
  const auto& k = kernels::active();
  if (const auto* m = std::get_if<MoebiusMap>(&map)) {
    k.moebius(m->a(), m->b(), m->c(), m->d(), re, im, n);
    return;
  }
  const auto& b = std::get<BlaschkeProduct>(map);
  std::vector<double> acc_re(n, b.phase().real()), acc_im(n, b.phase().imag());
  std::vector<double> tr(n), ti(n);
  for (const cplx& a : b.zeros()) {
    std::copy(re, re + n, tr.begin());
    std::copy(im, im + n, ti.begin());
    k.moebius(1.0, -a, -std::conj(a), 1.0, tr.data(), ti.data(), n);
    for (std::size_t i = 0; i < n; ++i) {
      const double r = acc_re[i] * tr[i] - acc_im[i] * ti[i];
      acc_im[i] = acc_re[i] * ti[i] + acc_im[i] * tr[i];
      acc_re[i] = r;
    }
  }
  std::copy(acc_re.begin(), acc_re.end(), re);
  std::copy(acc_im.begin(), acc_im.end(), im);
}

double max_circle_derivative(const CircleMap& map) {
  return std::visit([](const auto& f) { return f.max_circle_derivative(); }, map);
}

bool is_homeomorphism(const CircleMap& map) { return std::holds_alternative<MoebiusMap>(map); }

CocycleProbe::CocycleProbe(CircleMap map_, WeightPoly weight_, int n_, int sample_grid_)
    : map(std::move(map_)), weight(std::move(weight_)), n(n_), sample_grid(sample_grid_) {
  if (n < 1) throw DegenerateInput("cocycle probe needs n >= 1");
  if (sample_grid < 8) throw DegenerateInput("cocycle probe needs sample_grid >= 8");
}

void PairwiseSum::add(double x) {
  partial_.push_back(x);
  counts_.push_back(1);
  while (counts_.size() >= 2 && counts_[counts_.size() - 1] == counts_[counts_.size() - 2]) {
    const double top = partial_.back();
    partial_.pop_back();
    partial_.back() += top;
    counts_.pop_back();
    counts_.back() *= 2;
  }
}

double PairwiseSum::total() const {
  double s = 0.0;
  for (std::size_t i = partial_.size(); i-- > 0;) s += partial_[i];
  return s;
}

double log_cocycle(const CocycleProbe& probe, cplx t) {
  if (std::abs(std::abs(t) - 1.0) > 1e-9) {
    throw DegenerateInput("log_cocycle expects a point on the unit circle");
  }
  PairwiseSum sum;
  cplx z = t;
  for (int k = 0; k < probe.n; ++k) {
    const double v = std::abs(probe.weight(z));
    if (v < kUnderflowFloor) return kNegInf;
    sum.add(std::log(v));
    z = apply(probe.map, z);
    z /= std::abs(z);
  }
  return sum.total();
}

CircleBounds certified_circle_bounds(const WeightPoly& w, int samples) {
  if (w.degree() == 0) {
    const double m = std::abs(w.coeffs()[0]);
    return {m, m};
  }
  const CircleExtrema ext = circle_extrema(w, samples);
  // Every circle point is within chord h/2 of a grid node.
  const double margin = w.derivative_bound() * (kPi / samples);
  return {std::min(w.l1_norm(), ext.max_mod + margin), std::max(0.0, ext.min_mod - margin)};
}

namespace {

// Log-scale accumulator that multiplies mantissas and sums binary exponents,
// so no logarithm is taken inside the step loop.
struct LogProduct {
  double mant = 1.0;
  long long exp2 = 0;
  bool zero = false;

  void mul(double v) {
    if (zero) return;
    if (!(v >= kUnderflowFloor)) {
      zero = true;
      return;
    }
    if (v < 1e-100 || v > 1e100) {
      int e = 0;
      v = std::frexp(v, &e);
      exp2 += e;
    }
    mant *= v;
    if (mant < 1e-100 || mant > 1e100) {
      int e = 0;
      mant = std::frexp(mant, &e);
      exp2 += e;
    }
  }
  double log() const {
    if (zero) return kNegInf;
    return std::log(mant) + static_cast<double>(exp2) * std::numbers::ln2;
  }
};

// Upper bound for 2 asin(x): the series of asin has coefficients <= 1/6 past
// the linear term.
double arc_from_chord(double x) {
  if (x < 0.5) return 2.0 * (x + x * x * x / (6.0 * (1.0 - x * x)));
  return 2.0 * std::asin(std::min(1.0, x));
}

struct CellBounds {
  std::vector<double> upper;  // >= sup over the cell of ln|w_n|
  std::vector<double> lower;  // <= inf over the cell of ln|w_n|
  std::vector<double> mid;    // ln|w_n| at the cell midpoint
};

// Propagates a batch of arcs [start, start + len] through n steps of the map.
CellBounds evaluate_cells(const CocycleProbe& probe, const CircleBounds& global,
                          std::span<const double> start, std::span<const double> len) {
  const std::size_t m = start.size();
  const auto& kt = kernels::active();
  const WeightPoly& w = probe.weight;
  const bool constant = w.degree() == 0;
  const std::vector<cplx> dcoeffs =
      constant ? std::vector<cplx>{0.0} : w.derivative().coeffs();
  const double w2 = w.second_derivative_bound();
  const double sup_deriv = max_circle_derivative(probe.map);
  const bool homeo = is_homeomorphism(probe.map);

  std::vector<double> pa_re(m), pa_im(m), pb_re(m), pb_im(m), pm_re(m), pm_im(m);
  std::vector<double> c_re(m), c_im(m), wc_re(m), wc_im(m), dc_re(m), dc_im(m);
  std::vector<double> wm_re(m), wm_im(m), mod2(m);
  std::vector<double> arc(len.begin(), len.end());
  std::vector<char> whole(m, 0);
  std::vector<LogProduct> up(m), lo(m), mi(m);

  for (std::size_t i = 0; i < m; ++i) {
    pa_re[i] = std::cos(start[i]);
    pa_im[i] = std::sin(start[i]);
    pb_re[i] = std::cos(start[i] + len[i]);
    pb_im[i] = std::sin(start[i] + len[i]);
    pm_re[i] = std::cos(start[i] + 0.5 * len[i]);
    pm_im[i] = std::sin(start[i] + 0.5 * len[i]);
    if (len[i] >= kTwoPi) whole[i] = 1;
  }

  for (int k = 0; k < probe.n; ++k) {
    for (std::size_t i = 0; i < m; ++i) {
      if (arc[i] < kPi) {
        c_re[i] = pa_re[i] + pb_re[i];
        c_im[i] = pa_im[i] + pb_im[i];
      } else {
        const cplx c = cplx(pa_re[i], pa_im[i]) * unit(0.5 * arc[i]);
        c_re[i] = c.real();
        c_im[i] = c.imag();
      }
    }
    kt.normalize(c_re.data(), c_im.data(), m);
    kt.horner(w.coeffs(), c_re.data(), c_im.data(), wc_re.data(), wc_im.data(), m);
    kt.horner(dcoeffs, c_re.data(), c_im.data(), dc_re.data(), dc_im.data(), m);
    kt.horner(w.coeffs(), pm_re.data(), pm_im.data(), wm_re.data(), wm_im.data(), m);
    kt.abs2(wm_re.data(), wm_im.data(), mod2.data(), m);

    for (std::size_t i = 0; i < m; ++i) {
      mi[i].mul(std::sqrt(mod2[i]));
      if (whole[i]) {
        up[i].mul(global.sup);
        lo[i].mul(global.inf);
        continue;
      }
      const double r = std::min(0.5 * arc[i], 2.0);  // >= 2 sin(arc / 4)
      const double val = std::sqrt(wc_re[i] * wc_re[i] + wc_im[i] * wc_im[i]);
      const double slope = std::sqrt(dc_re[i] * dc_re[i] + dc_im[i] * dc_im[i]);
      const double spread = slope * r + 0.5 * w2 * r * r;
      up[i].mul(std::min(val + spread, global.sup));
      lo[i].mul(std::max(val - spread, global.inf));
    }
    if (k + 1 == probe.n) break;

    apply_batch(probe.map, pa_re.data(), pa_im.data(), m);
    apply_batch(probe.map, pb_re.data(), pb_im.data(), m);
    apply_batch(probe.map, pm_re.data(), pm_im.data(), m);
    kt.normalize(pa_re.data(), pa_im.data(), m);
    kt.normalize(pb_re.data(), pb_im.data(), m);
    kt.normalize(pm_re.data(), pm_im.data(), m);

    for (std::size_t i = 0; i < m; ++i) {
      if (whole[i]) continue;
      const double bound = arc[i] * sup_deriv;
      if (bound < kPi) {
        const double dx = pb_re[i] - pa_re[i], dy = pb_im[i] - pa_im[i];
        const double chord = std::sqrt(dx * dx + dy * dy);
        arc[i] = std::min(bound, arc_from_chord(0.5 * chord));
      } else if (!homeo && bound >= kTwoPi) {
        whole[i] = 1;
      } else {
        double diff = std::atan2(pb_im[i], pb_re[i]) - std::atan2(pa_im[i], pa_re[i]);
        diff = std::fmod(diff, kTwoPi);
        if (diff < 0.0) diff += kTwoPi;
        arc[i] = diff;
      }
    }
  }

  CellBounds out;
  out.upper.resize(m);
  out.lower.resize(m);
  out.mid.resize(m);
  for (std::size_t i = 0; i < m; ++i) {
    out.upper[i] = up[i].log();
    out.lower[i] = lo[i].log();
    out.mid[i] = mi[i].log();
  }
  return out;
}

std::size_t initial_grid(int sample_grid) {
  std::size_t g = 8;
  while (g < static_cast<std::size_t>(sample_grid)) g <<= 1;
  return g;
}

// Branch and bound for sup (maximize = true) or inf of ln|w_n| over the circle.
CertifiedBound certify(const CocycleProbe& probe, const CertifyOptions& opts, bool maximize) {
  const CircleBounds global = certified_circle_bounds(probe.weight);
  const double n = probe.n;
  const double slack = n * opts.eps;

  std::size_t grid = initial_grid(probe.sample_grid);
  std::vector<double> start(grid), len(grid, kTwoPi / static_cast<double>(grid));
  for (std::size_t i = 0; i < grid; ++i) start[i] = kTwoPi * static_cast<double>(i) / static_cast<double>(grid);

  double best = maximize ? kNegInf : std::numeric_limits<double>::infinity();
  double settled = maximize ? kNegInf : std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  bool converged = true;

  while (!start.empty()) {
    const CellBounds cb = evaluate_cells(probe, global, start, len);
    used += start.size();
    for (double v : cb.mid) best = maximize ? std::max(best, v) : std::min(best, v);

    std::vector<double> next_start, next_len;
    for (std::size_t i = 0; i < start.size(); ++i) {
      const double bound = maximize ? cb.upper[i] : cb.lower[i];
      const bool open = maximize ? bound > best + slack : bound < best - slack;
      const bool splittable = len[i] > 1e-13 && used + 2 * next_start.size() + 2 <= opts.max_cells;
      if (open && splittable) {
        const double h = 0.5 * len[i];
        next_start.push_back(start[i]);
        next_len.push_back(h);
        next_start.push_back(start[i] + h);
        next_len.push_back(h);
      } else {
        if (open) converged = false;
        settled = maximize ? std::max(settled, bound) : std::min(settled, bound);
      }
    }
    start = std::move(next_start);
    len = std::move(next_len);
  }

  CertifiedBound out;
  out.n = probe.n;
  out.cells = used;
  out.converged = converged;
  out.sampled = std::exp(best / n);
  if (maximize) {
    out.value = std::min(std::exp(settled / n), global.sup);
  } else {
    out.value = std::max(std::isfinite(settled) ? std::exp(settled / n) : 0.0, global.inf);
  }
  return out;
}

}  // namespace

CertifiedBound rho_upper_certified(const CocycleProbe& probe, const CertifyOptions& opts) {
  return certify(probe, opts, true);
}

CertifiedBound min_growth_lower_certified(const CocycleProbe& probe, const CertifyOptions& opts) {
  // A zero on (or within root tolerance of) the circle makes 0 the answer;
  // 0 is a valid lower bound in any case and refining towards it is wasted work.
  if (probe.weight.degree() > 0 &&
      classify_invertibility(probe.weight).kind == InvertibilityKind::VanishesOnCircle) {
    CertifiedBound out;
    out.n = probe.n;
    out.converged = true;
    return out;
  }
  return certify(probe, opts, false);
}

double rho_lower_periodic(const WeightPoly& w, const CircleMap& map, std::span<const cplx> orbit,
                          double tol) {
  if (orbit.empty()) throw DegenerateInput("periodic orbit is empty");
  PairwiseSum sum;
  for (std::size_t i = 0; i < orbit.size(); ++i) {
    const cplx p = orbit[i];
    if (std::abs(std::abs(p) - 1.0) > tol) throw DegenerateInput("orbit point is not on the circle");
    const cplx next = orbit[(i + 1) % orbit.size()];
    if (std::abs(apply(map, p) - next) >= tol) {
      throw DegenerateInput("orbit fails periodicity verification at index " + std::to_string(i));
    }
    const double v = std::abs(w(p));
    if (v < kUnderflowFloor) return 0.0;
    sum.add(std::log(v));
  }
  return std::exp(sum.total() / static_cast<double>(orbit.size()));
}

void EnclosureTracker::offer_upper(double value, const std::string& witness) {
  if (value < enc_.upper) {
    enc_.upper = value;
    enc_.upper_witness = witness;
  }
}

void EnclosureTracker::offer_lower(double value, const std::string& witness) {
  if (value > enc_.lower || enc_.lower_witness.empty()) {
    enc_.lower = std::max(enc_.lower, value);
    enc_.lower_witness = witness;
  }
}

std::vector<std::vector<cplx>> moebius_boundary_orbits(const MoebiusMap& map, int samples) {
  std::vector<std::vector<cplx>> out;
  MapClass cls;
  try {
    cls = classify(map);
  } catch (const AmbiguousRationality&) {
    return out;
  }
  if (const auto* h = std::get_if<Hyperbolic>(&cls)) {
    out.push_back({h->zeta1});
    out.push_back({h->zeta2});
  } else if (const auto* p = std::get_if<Parabolic>(&cls)) {
    out.push_back({p->zeta});
  } else if (std::holds_alternative<Identity>(cls) || std::holds_alternative<EllipticRational>(cls)) {
    const int period = std::holds_alternative<Identity>(cls) ? 1 : std::get<EllipticRational>(cls).m;
    for (int j = 0; j < samples; ++j) {
      std::vector<cplx> orb{unit(kTwoPi * j / samples)};
      for (int k = 1; k < period; ++k) {
        cplx z = map(orb.back());
        orb.push_back(z / std::abs(z));
      }
      out.push_back(std::move(orb));
    }
  }
  return out;
}

MinModulusEnclosure rho_min_estimate(const WeightPoly& w, const MoebiusMap& map, int n, int samples,
                                     const CertifyOptions& opts) {
  const CocycleProbe probe(map, w, n, samples);
  const CertifiedBound lower = min_growth_lower_certified(probe, opts);
  MinModulusEnclosure out{lower.value, std::numeric_limits<double>::infinity(),
                          "certified min_T |w_n|^(1/n), n=" + std::to_string(n), ""};
  for (const auto& orb : moebius_boundary_orbits(map, samples)) {
    const double g = rho_lower_periodic(w, map, orb, 1e-7);
    if (g < out.upper) {
      out.upper = g;
      out.upper_witness = "periodic orbit through " + format_complex(orb.front()) + " (period " +
                          std::to_string(orb.size()) + ")";
    }
  }
  const CertifiedBound upper = rho_upper_certified(probe, opts);
  if (upper.value < out.upper) {
    out.upper = upper.value;
    out.upper_witness = "certified rho upper bound, n=" + std::to_string(n);
  }
  return out;
}

}  // namespace wco
