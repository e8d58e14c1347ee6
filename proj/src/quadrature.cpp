#include "wco/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "wco/format.hpp"

namespace wco {

GaussRule gauss_legendre(int n) {
  GaussRule rule;
  rule.nodes.resize(static_cast<std::size_t>(n));
  rule.weights.resize(static_cast<std::size_t>(n));
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double wgt = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[static_cast<std::size_t>(i)] = -x;
    rule.nodes[static_cast<std::size_t>(n - 1 - i)] = x;
    rule.weights[static_cast<std::size_t>(i)] = wgt;
    rule.weights[static_cast<std::size_t>(n - 1 - i)] = wgt;
  }
  return rule;
}

const GaussRule& gauss_legendre_32() {
  static const GaussRule rule = gauss_legendre(32);
  return rule;
}

double poisson_kernel(cplx z0, double theta) {
  return (1.0 - std::norm(z0)) / std::norm(unit(theta) - z0);
}

namespace {

double closed_form_term(cplx r, cplx z0, double root_tol) {
  if (std::abs(r) < 1.0 - root_tol) return std::log(std::abs(1.0 - std::conj(r) * z0));
  return std::log(std::abs(z0 - r));
}

bool on_circle(cplx r, double root_tol) { return std::abs(std::abs(r) - 1.0) <= root_tol; }

double panel(const std::function<double(double)>& f, double a, double b) {
  const GaussRule& g = gauss_legendre_32();
  const double half = 0.5 * (b - a);
  const double mid = 0.5 * (a + b);
  double s = 0.0;
  for (std::size_t i = 0; i < g.nodes.size(); ++i) s += g.weights[i] * f(mid + half * g.nodes[i]);
  return s * half;
}

struct Adaptive {
  double value;
  double error;
};

Adaptive adapt(const std::function<double(double)>& f, double a, double b, double whole, double tol,
               int depth) {
  const double m = 0.5 * (a + b);
  const double left = panel(f, a, m);
  const double right = panel(f, m, b);
  const double diff = std::abs(whole - (left + right));
  if (diff <= 0.25 * tol || depth >= 48) return {left + right, diff};
  const Adaptive l = adapt(f, a, m, left, 0.5 * tol, depth + 1);
  const Adaptive r = adapt(f, m, b, right, 0.5 * tol, depth + 1);
  return {l.value + r.value, l.error + r.error};
}

Adaptive integrate_circle(const std::function<double(double)>& f, double tol) {
  constexpr int kPanels = 16;
  Adaptive total{0.0, 0.0};
  for (int p = 0; p < kPanels; ++p) {
    const double a = kTwoPi * p / kPanels;
    const double b = kTwoPi * (p + 1) / kPanels;
    const Adaptive r = adapt(f, a, b, panel(f, a, b), tol / kPanels, 0);
    total.value += r.value;
    total.error += r.error;
  }
  return total;
}

}  // namespace

LogIntegralResult poisson_log_integral_closed_form(const WeightPoly& w, cplx z0, double root_tol) {
  if (!(std::abs(z0) < 1.0)) throw DegenerateInput("Poisson integral needs |z0| < 1");
  LogIntegralResult out;
  out.smooth_part = std::log(std::abs(w.leading()));
  if (w.degree() >= 1) {
    RootOptions ro;
    ro.cluster_tol = root_tol;
    for (const Root& r : roots(w, ro)) {
      const double t = r.multiplicity * closed_form_term(r.value, z0, root_tol);
      if (on_circle(r.value, root_tol)) {
        out.singular_part += t;
      } else {
        out.smooth_part += t;
      }
    }
  }
  out.value = out.singular_part + out.smooth_part;
  return out;
}

LogIntegralResult poisson_log_integral_numeric(const WeightPoly& w, cplx z0, double tol,
                                               double root_tol) {
  if (!(std::abs(z0) < 1.0)) throw DegenerateInput("Poisson integral needs |z0| < 1");
  LogIntegralResult out;
  WeightPoly regular = w;
  if (w.degree() >= 1) {
    RootOptions ro;
    ro.cluster_tol = root_tol;
    for (const Root& r : roots(w, ro)) {
      if (!on_circle(r.value, root_tol)) continue;
      out.singular_part += r.multiplicity * std::log(std::abs(z0 - r.value));
      for (int k = 0; k < r.multiplicity; ++k) regular = deflate(regular, r.value);
      out.notes.push_back("peeled circle zero " + format_complex(r.value) + " x" +
                          std::to_string(r.multiplicity));
    }
  }
  const double norm = 1.0 / kTwoPi;
  auto integrand = [&](double t) {
    const double v = std::abs(regular(unit(t)));
    return std::log(std::max(v, 1e-300)) * poisson_kernel(z0, t) * norm;
  };
  const Adaptive r = integrate_circle(integrand, tol);
  out.smooth_part = r.value;
  out.est_error = r.error;
  out.value = out.singular_part + out.smooth_part;
  return out;
}

LogIntegralResult poisson_log_integral(const WeightPoly& w, cplx z0, double tol) {
  LogIntegralResult closed = poisson_log_integral_closed_form(w, z0);
  const LogIntegralResult numeric = poisson_log_integral_numeric(w, z0, std::min(tol, 1e-12));
  closed.est_error = std::abs(closed.value - numeric.value);
  if (closed.est_error > tol) {
    closed.notes.push_back("closed form and quadrature disagree by " + format_real(closed.est_error, 3));
  }
  return closed;
}

namespace {

// Mean over the m-torus of f, by tensor Gauss-Legendre with `panels` panels
// per dimension.
double tensor_mean(int m, int panels, const std::function<double(const std::vector<cplx>&)>& f) {
  std::vector<cplx> z(static_cast<std::size_t>(m));
  if (m == 0) return f(z);
  const GaussRule& g = gauss_legendre_32();
  const int per_dim = panels * 32;
  std::vector<cplx> node(static_cast<std::size_t>(per_dim));
  std::vector<double> weight(static_cast<std::size_t>(per_dim));
  const double h = kTwoPi / panels;
  for (int p = 0; p < panels; ++p) {
    for (int i = 0; i < 32; ++i) {
      const auto idx = static_cast<std::size_t>(p * 32 + i);
      node[idx] = unit(h * p + 0.5 * h * (1.0 + g.nodes[static_cast<std::size_t>(i)]));
      weight[idx] = 0.5 * h * g.weights[static_cast<std::size_t>(i)] / kTwoPi;
    }
  }
  std::vector<int> idx(static_cast<std::size_t>(m), 0);
  double total = 0.0;
  while (true) {
    double wt = 1.0;
    for (int j = 0; j < m; ++j) {
      const auto k = static_cast<std::size_t>(idx[static_cast<std::size_t>(j)]);
      z[static_cast<std::size_t>(j)] = node[k];
      wt *= weight[k];
    }
    total += wt * f(z);
    int j = 0;
    while (j < m && ++idx[static_cast<std::size_t>(j)] == per_dim) {
      idx[static_cast<std::size_t>(j)] = 0;
      ++j;
    }
    if (j == m) break;
  }
  return total;
}

// Mean of ln|p| over the circle by Jensen's formula: ln|leading coefficient|
// plus ln|r| for every root outside the closed disk.
double circle_log_mean(std::vector<cplx> coeffs) {
  while (coeffs.size() > 1 && coeffs.back() == cplx(0.0)) coeffs.pop_back();
  const WeightPoly p(coeffs);
  if (p.degree() == 0) return std::log(std::max(std::abs(p.coeffs()[0]), 1e-300));
  double s = std::log(std::abs(p.leading()));
  try {
    for (const Root& r : roots(p)) {
      const double m = std::abs(r.value);
      if (m > 1.0) s += r.multiplicity * std::log(m);
    }
  } catch (const RootFindingError&) {
    // Ill-conditioned fibre: fall back to a dense midpoint rule.
    constexpr int kN = 8192;
    double acc = 0.0;
    for (int k = 0; k < kN; ++k) acc += std::log(std::max(std::abs(p(unit(kTwoPi * (k + 0.5) / kN))), 1e-300));
    s = acc / kN;
  }
  return s;
}

}  // namespace

LogIntegralResult torus_log_integral(const MultiPoly& w, const TorusOptions& opts) {
  const int dim = w.dim();
  if (dim > 4) throw UnsupportedConfiguration("torus integrals are limited to n <= 4");
  LogIntegralResult out;
  if (w.terms().size() == 1 && w.nonconstant_l1() == 0.0) {
    out.value = out.smooth_part = std::log(std::abs(w.constant_term()));
    return out;
  }

  if (w.dominant_constant()) {
    const auto f = [&](const std::vector<cplx>& z) { return std::log(std::abs(w(z))); };
    int panels = 1;
    double prev = tensor_mean(dim, panels, f);
    double err = std::numeric_limits<double>::infinity();
    while (std::pow(64.0 * panels, dim) <= static_cast<double>(opts.budget)) {
      const double next = tensor_mean(dim, 2 * panels, f);
      err = std::abs(next - prev);
      prev = next;
      panels *= 2;
      if (err <= opts.tol) break;
    }
    out.value = out.smooth_part = prev;
    out.est_error = err;
    out.notes.push_back("tensor Gauss-Legendre, " + std::to_string(panels) + " panels per dimension");
    if (err > opts.tol) out.notes.push_back("budget exhausted before tolerance");
    return out;
  }

  // Iterated integral: the innermost variable exactly by Jensen's formula,
  // the remaining ones by tensor Gauss-Legendre. The fibre means are
  // continuous with kinks where a root crosses the circle.
  int var = -1;
  for (int j = 0; j < dim; ++j) {
    const int d = w.degree_in(j);
    if (d > 0 && (var < 0 || d < w.degree_in(var))) var = j;
  }
  const int m = dim - 1;
  const auto fibre = [&](const std::vector<cplx>& outer) {
    std::vector<cplx> z(static_cast<std::size_t>(dim), cplx(1.0));
    for (int j = 0, k = 0; j < dim; ++j)
      if (j != var) z[static_cast<std::size_t>(j)] = outer[static_cast<std::size_t>(k++)];
    return circle_log_mean(w.restrict_to(var, z));
  };
  int panels = 1;
  double prev = tensor_mean(m, panels, fibre);
  double err = m == 0 ? 0.0 : std::numeric_limits<double>::infinity();
  while (m > 0 && 16.0 * std::pow(64.0 * panels, m) <= static_cast<double>(opts.budget)) {
    const double next = tensor_mean(m, 2 * panels, fibre);
    err = std::abs(next - prev);
    prev = next;
    panels *= 2;
    if (err <= opts.tol) break;
  }
  out.value = out.smooth_part = prev;
  out.est_error = err;
  out.notes.push_back("Jensen's formula in z" + std::to_string(var + 1) + ", tensor Gauss-Legendre (" +
                      std::to_string(panels) + " panels) over the other variables");
  if (err > opts.tol) out.notes.push_back("budget exhausted before tolerance");
  return out;
}

}  // namespace wco
