#include "wco/weight.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <Eigen/Eigenvalues>

#include "wco/format.hpp"
#include "wco/kernels.hpp"

namespace wco {

WeightPoly::WeightPoly(std::vector<cplx> coeffs) : coeffs_(std::move(coeffs)) {
  while (!coeffs_.empty() && coeffs_.back() == cplx(0.0, 0.0)) coeffs_.pop_back();
  if (coeffs_.empty()) throw DegenerateInput("weight is identically zero");
  for (const cplx& c : coeffs_) {
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
      throw DegenerateInput("weight coefficient is not finite");
    }
  }
}

WeightPoly WeightPoly::from_roots(std::span<const cplx> rs, cplx leading) {
  std::vector<cplx> c{leading};
  for (const cplx& r : rs) {
    std::vector<cplx> next(c.size() + 1, 0.0);
    for (std::size_t k = 0; k < c.size(); ++k) {
      next[k + 1] += c[k];
      next[k] -= r * c[k];
    }
    c = std::move(next);
  }
  return WeightPoly(std::move(c));
}

double WeightPoly::max_abs_coeff() const {
  double m = 0.0;
  for (const cplx& c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

double WeightPoly::l1_norm() const {
  double s = 0.0;
  for (const cplx& c : coeffs_) s += std::abs(c);
  return s;
}

cplx WeightPoly::operator()(cplx z) const {
  cplx acc = coeffs_.back();
  for (std::size_t k = coeffs_.size() - 1; k-- > 0;) acc = acc * z + coeffs_[k];
  return acc;
}

WeightPoly WeightPoly::derivative() const {
  if (coeffs_.size() == 1) throw DegenerateInput("derivative of a constant weight is identically zero");
  std::vector<cplx> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return WeightPoly(std::move(d));
}

double WeightPoly::derivative_bound() const {
  double s = 0.0;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) s += static_cast<double>(k) * std::abs(coeffs_[k]);
  return s;
}

double WeightPoly::second_derivative_bound() const {
  double s = 0.0;
  for (std::size_t k = 2; k < coeffs_.size(); ++k) {
    s += static_cast<double>(k * (k - 1)) * std::abs(coeffs_[k]);
  }
  return s;
}

cplx eval(const WeightPoly& w, cplx z) { return w(z); }

WeightPoly deflate(const WeightPoly& w, cplx r) {
  const auto& c = w.coeffs();
  if (c.size() == 1) return w;
  std::vector<cplx> q(c.size() - 1);
  cplx acc = c.back();
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    q[k] = acc;
    acc = acc * r + c[k];
  }
  return WeightPoly(std::move(q));
}

namespace {

using Matrix = Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic>;

// Parlett-Reinsch balancing with radix-2 scaling (eigenvalues unchanged).
void balance(Matrix& a) {
  const Eigen::Index n = a.rows();
  constexpr double radix = 2.0;
  bool done = false;
  while (!done) {
    done = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double r = 0.0, c = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(a(j, i));
        r += std::abs(a(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      double g = r / radix;
      double f = 1.0;
      const double s = c + r;
      while (c < g) {
        f *= radix;
        c *= radix * radix;
      }
      g = r * radix;
      while (c > g) {
        f /= radix;
        c /= radix * radix;
      }
      if ((c + r) / f < 0.95 * s) {
        done = false;
        const double inv = 1.0 / f;
        a.row(i) *= inv;
        a.col(i) *= f;
      }
    }
  }
}

std::pair<cplx, cplx> eval_with_derivative(const std::vector<cplx>& c, cplx z) {
  cplx p = c.back();
  cplx dp = 0.0;
  for (std::size_t k = c.size() - 1; k-- > 0;) {
    dp = dp * z + p;
    p = p * z + c[k];
  }
  return {p, dp};
}

void aberth_polish(const std::vector<cplx>& c, std::vector<cplx>& z, int iterations) {
  const std::size_t n = z.size();
  for (int it = 0; it < iterations; ++it) {
    bool moved = false;
    for (std::size_t i = 0; i < n; ++i) {
      const auto [p, dp] = eval_with_derivative(c, z[i]);
      if (p == cplx(0.0, 0.0) || dp == cplx(0.0, 0.0)) continue;
      const cplx newton = p / dp;
      cplx repulsion = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i && z[j] != z[i]) repulsion += 1.0 / (z[i] - z[j]);
      }
      const cplx step = newton / (1.0 - newton * repulsion);
      const cplx candidate = z[i] - step;
      if (!std::isfinite(candidate.real()) || !std::isfinite(candidate.imag())) continue;
      if (std::abs(eval_with_derivative(c, candidate).first) < std::abs(p)) {
        if (std::abs(step) > 4e-16 * std::max(1.0, std::abs(z[i]))) moved = true;
        z[i] = candidate;
      }
    }
    if (!moved) break;
  }
}

double residual_budget(const WeightPoly& w, cplx r) {
  const double growth = std::pow(std::max(1.0, std::abs(r)), w.degree());
  return 1e-8 * (1.0 + w.max_abs_coeff()) * std::max(1, w.degree()) * growth;
}

struct Cluster {
  cplx sum;
  int count;
  cplx centroid() const { return sum / static_cast<double>(count); }
};

}  // namespace

std::vector<Root> roots(const WeightPoly& w, const RootOptions& opts) {
  const auto& all = w.coeffs();
  if (w.degree() < 1) throw DegenerateInput("roots() requires degree >= 1");

  std::vector<Root> out;
  std::size_t zeros = 0;
  while (all[zeros] == cplx(0.0, 0.0)) ++zeros;
  if (zeros > 0) out.push_back({0.0, static_cast<int>(zeros)});
  const std::vector<cplx> c(all.begin() + static_cast<std::ptrdiff_t>(zeros), all.end());
  const int d = static_cast<int>(c.size()) - 1;
  if (d == 0) return out;

  std::vector<cplx> z;
  if (d == 1) {
    z.push_back(-c[0] / c[1]);
  } else {
    Matrix comp = Matrix::Zero(d, d);
    for (int i = 1; i < d; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < d; ++i) comp(i, d - 1) = -c[static_cast<std::size_t>(i)] / c.back();
    balance(comp);
    Eigen::ComplexEigenSolver<Matrix> solver(comp, false);
    if (solver.info() != Eigen::Success) {
      throw RootFindingError("companion eigenvalue iteration did not converge",
                             {"degree " + std::to_string(d)});
    }
    for (int i = 0; i < d; ++i) z.push_back(solver.eigenvalues()(i));
    aberth_polish(c, z, opts.polish_iterations);
  }

  // Agglomerate: two clusters merge when their centroids are within
  // tol^(1/m) (m = merged multiplicity) and the merged centroid still
  // satisfies the residual budget.
  std::vector<Cluster> clusters;
  for (const cplx& r : z) clusters.push_back({r, 1});
  bool merged = true;
  while (merged) {
    merged = false;
    double best = std::numeric_limits<double>::infinity();
    std::size_t bi = 0, bj = 0;
    for (std::size_t i = 0; i < clusters.size(); ++i) {
      for (std::size_t j = i + 1; j < clusters.size(); ++j) {
        const int m = clusters[i].count + clusters[j].count;
        const double dist = std::abs(clusters[i].centroid() - clusters[j].centroid());
        const double radius = std::pow(opts.cluster_tol, 1.0 / m) * std::max(1.0, std::abs(clusters[i].centroid()));
        if (dist <= radius && dist / radius < best) {
          const Cluster candidate{clusters[i].sum + clusters[j].sum, m};
          if (std::abs(w(candidate.centroid())) <= residual_budget(w, candidate.centroid())) {
            best = dist / radius;
            bi = i;
            bj = j;
          }
        }
      }
    }
    if (std::isfinite(best)) {
      clusters[bi].sum += clusters[bj].sum;
      clusters[bi].count += clusters[bj].count;
      clusters.erase(clusters.begin() + static_cast<std::ptrdiff_t>(bj));
      merged = true;
    }
  }

  std::vector<std::string> trace;
  bool ok = true;
  for (const Cluster& cl : clusters) {
    const cplx r = cl.centroid();
    const double res = std::abs(w(r));
    trace.push_back("root " + format_complex(r, 17) + " x" + std::to_string(cl.count) +
                    " residual " + format_real(res, 3));
    if (!(res <= residual_budget(w, r))) ok = false;
    out.push_back({r, cl.count});
  }
  if (!ok) throw RootFindingError("root residual exceeds tolerance", std::move(trace));
  std::stable_sort(out.begin(), out.end(), [](const Root& a, const Root& b) {
    if (std::abs(a.value) != std::abs(b.value)) return std::abs(a.value) < std::abs(b.value);
    return std::arg(a.value) < std::arg(b.value);
  });
  return out;
}

std::string to_string(InvertibilityKind kind) {
  switch (kind) {
    case InvertibilityKind::InvertibleInAlgebra: return "invertible_in_algebra";
    case InvertibilityKind::NonvanishingOnCircle: return "nonvanishing_on_circle";
    case InvertibilityKind::VanishesOnCircle: return "vanishes_on_circle";
  }
  return "?";
}

InvertibilityClass classify_invertibility(const WeightPoly& w, double tol) {
  InvertibilityClass out{InvertibilityKind::InvertibleInAlgebra, {}, {}, {}, {}};
  if (w.degree() == 0) return out;
  // Scale-free: roots of w and of s*w coincide.
  RootOptions ro;
  ro.cluster_tol = tol;
  for (const Root& r : roots(w, ro)) {
    const double gap = std::abs(r.value) - 1.0;
    if (std::abs(gap) <= tol) {
      out.on_circle.push_back(r);
    } else if (gap < 0.0) {
      out.inside.push_back(r);
    } else {
      out.outside.push_back(r);
    }
    if (std::abs(gap) > tol && std::abs(gap) < 10.0 * tol) {
      out.warnings.push_back("borderline root " + format_complex(r.value, 12) +
                             " lies within 10*tol of the unit circle");
    }
  }
  if (!out.on_circle.empty()) {
    out.kind = InvertibilityKind::VanishesOnCircle;
  } else if (!out.inside.empty()) {
    out.kind = InvertibilityKind::NonvanishingOnCircle;
  }
  return out;
}

LocalFactor factor_at(const WeightPoly& w, cplx z0, double tol) {
  int order = 0;
  WeightPoly q = w;
  while (q.degree() >= 1) {
    double scale = 0.0;
    double zp = 1.0;
    for (const cplx& c : q.coeffs()) {
      scale += std::abs(c) * zp;
      zp *= std::abs(z0);
    }
    if (std::abs(q(z0)) > tol * scale) break;
    q = deflate(q, z0);
    ++order;
  }
  return {order, q(z0)};
}

namespace {

double modulus_at(const WeightPoly& w, double theta) { return std::abs(w(unit(theta))); }

// Golden-section search for an extremum of |w(e^{i theta})| on [lo, hi].
double golden(const WeightPoly& w, double lo, double hi, bool maximize) {
  const double g = (std::sqrt(5.0) - 1.0) / 2.0;
  auto f = [&](double t) { return maximize ? -modulus_at(w, t) : modulus_at(w, t); };
  double x1 = hi - g * (hi - lo), x2 = lo + g * (hi - lo);
  double f1 = f(x1), f2 = f(x2);
  for (int it = 0; it < 80 && hi - lo > 1e-15; ++it) {
    if (f1 < f2) {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - g * (hi - lo);
      f1 = f(x1);
    } else {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + g * (hi - lo);
      f2 = f(x2);
    }
  }
  return 0.5 * (lo + hi);
}

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  return t < 0.0 ? t + kTwoPi : t;
}

}  // namespace

CircleExtrema circle_extrema(const WeightPoly& w, int samples) {
  samples = std::max(samples, 16);
  if (w.degree() == 0) {
    const double m = std::abs(w.coeffs()[0]);
    return {m, m, 0.0, 0.0};
  }
  const auto n = static_cast<std::size_t>(samples);
  std::vector<double> re(n), im(n), vr(n), vi(n), mod2(n);
  const double h = kTwoPi / samples;
  for (std::size_t j = 0; j < n; ++j) {
    re[j] = std::cos(h * static_cast<double>(j));
    im[j] = std::sin(h * static_cast<double>(j));
  }
  const auto& k = kernels::active();
  k.horner(w.coeffs(), re.data(), im.data(), vr.data(), vi.data(), n);
  k.abs2(vr.data(), vi.data(), mod2.data(), n);

  const auto jmin = static_cast<std::size_t>(std::min_element(mod2.begin(), mod2.end()) - mod2.begin());
  const auto jmax = static_cast<std::size_t>(std::max_element(mod2.begin(), mod2.end()) - mod2.begin());
  CircleExtrema out{std::sqrt(mod2[jmin]), std::sqrt(mod2[jmax]), h * static_cast<double>(jmin),
                    h * static_cast<double>(jmax)};

  const double tmin = golden(w, out.argmin - h, out.argmin + h, false);
  if (const double v = modulus_at(w, tmin); v < out.min_mod) {
    out.min_mod = v;
    out.argmin = wrap_angle(tmin);
  }
  const double tmax = golden(w, out.argmax - h, out.argmax + h, true);
  if (const double v = modulus_at(w, tmax); v > out.max_mod) {
    out.max_mod = v;
    out.argmax = wrap_angle(tmax);
  }
  return out;
}

}  // namespace wco
