#include "wco/moebius.hpp"

#include <cmath>
#include <cstdio>

#include "wco/format.hpp"

namespace wco {

MoebiusMap::MoebiusMap(cplx a, cplx b, cplx c, cplx d) {
  const cplx det = a * d - b * c;
  if (std::abs(det) == 0.0 || !std::isfinite(std::abs(det))) {
    throw DegenerateInput("Moebius map has zero determinant");
  }
  const cplx s = std::sqrt(det);
  a_ = a / s;
  b_ = b / s;
  c_ = c / s;
  d_ = d / s;
}

MoebiusMap MoebiusMap::from_coefficients(cplx a, cplx b, cplx c, cplx d, double tol) {
  const double scale = std::abs(a) * std::abs(d) + std::abs(b) * std::abs(c);
  const cplx det = a * d - b * c;
  if (!(std::abs(det) > tol * std::max(scale, 1e-300))) {
    throw DegenerateInput("Moebius map has (numerically) zero determinant ad - bc");
  }
  MoebiusMap f(a, b, c, d);
  if (!(std::abs(f(0.0)) < 1.0)) {
    throw DegenerateInput("Moebius map does not send the origin into the open disk");
  }
  const double band = std::max(tol, 1e-12) * 10.0;
  for (cplx zeta : {cplx(1, 0), cplx(0, 1), cplx(-1, 0)}) {
    const cplx den = f.c_ * zeta + f.d_;
    if (std::abs(den) < 1e-14) {
      throw DegenerateInput("Moebius map has a pole on the unit circle");
    }
    if (std::abs(std::abs(f(zeta)) - 1.0) > band) {
      throw DegenerateInput("Moebius map does not preserve the unit circle");
    }
  }
  return f;
}

MoebiusMap MoebiusMap::canonical(double theta, cplx a) {
  if (!(std::abs(a) < 1.0)) throw DegenerateInput("canonical form requires |a| < 1");
  const cplx rot = unit(theta);
  return MoebiusMap(rot, -rot * a, -std::conj(a), 1.0);
}

cplx MoebiusMap::operator()(cplx z) const {
  const cplx den = c_ * z + d_;
  if (std::abs(den) < 1e-300) throw DegenerateInput("Moebius denominator vanishes");
  return (a_ * z + b_) / den;
}

cplx MoebiusMap::derivative(cplx z) const {
  const cplx den = c_ * z + d_;
  return determinant() / (den * den);
}

double MoebiusMap::max_circle_derivative() const {
  const double gap = std::abs(d_) - std::abs(c_);
  if (gap <= 0.0) return std::numeric_limits<double>::infinity();
  return std::abs(determinant()) / (gap * gap);
}

cplx evaluate(const MoebiusMap& f, cplx z) {
  const cplx den = f.c() * z + f.d();
  const double scale = std::abs(f.c()) * std::abs(z) + std::abs(f.d());
  if (std::abs(den) <= 1e-14 * std::max(scale, 1e-300)) {
    throw DegenerateInput("Moebius denominator vanishes at the evaluation point");
  }
  return (f.a() * z + f.b()) / den;
}

MoebiusMap compose(const MoebiusMap& f, const MoebiusMap& g) {
  return MoebiusMap::unchecked(f.a() * g.a() + f.b() * g.c(), f.a() * g.b() + f.b() * g.d(),
                               f.c() * g.a() + f.d() * g.c(), f.c() * g.b() + f.d() * g.d());
}

MoebiusMap inverse(const MoebiusMap& f) {
  return MoebiusMap::unchecked(f.d(), -f.b(), -f.c(), f.a());
}

MoebiusMap power(const MoebiusMap& f, int n) {
  if (n < 0) return power(inverse(f), -n);
  MoebiusMap result = MoebiusMap::identity();
  MoebiusMap base = f;
  while (n > 0) {
    if (n & 1) result = compose(result, base);
    base = compose(base, base);
    n >>= 1;
  }
  return result;
}

namespace {

Location locate(cplx z, double band) {
  const double r = std::abs(z);
  if (std::abs(r - 1.0) <= band) return Location::Boundary;
  return r < 1.0 ? Location::Interior : Location::Exterior;
}

double coefficient_scale(const MoebiusMap& f) {
  return std::abs(f.a()) + std::abs(f.b()) + std::abs(f.c()) + std::abs(f.d());
}

bool is_identity(const MoebiusMap& f, double tol) {
  const double off = std::abs(f.b()) + std::abs(f.c()) + std::abs(f.a() - f.d());
  return off <= tol * (std::abs(f.a()) + std::abs(f.d()));
}

}  // namespace

std::vector<FixedPoint> fixed_points(const MoebiusMap& f, double boundary_tol) {
  const double scale = coefficient_scale(f);
  if (is_identity(f, 1e-13)) throw IdentityMapError();

  const cplx qa = f.c();
  const cplx qb = f.d() - f.a();
  const cplx qc = -f.b();
  std::vector<FixedPoint> out;
  auto push = [&](cplx z, bool dbl) {
    out.push_back({z, locate(z, boundary_tol), f.derivative(z), dbl});
  };

  if (std::abs(qa) <= 1e-14 * scale) {
    // Linear equation; the second fixed point sits at infinity.
    if (std::abs(qb) <= 1e-14 * scale) {
      throw DegenerateInput("fixed-point equation degenerates (translation is not a disk map)");
    }
    push(-qc / qb, false);
    return out;
  }

  const cplx disc = qb * qb - 4.0 * qa * qc;
  const double disc_scale = std::norm(qb) + 4.0 * std::abs(qa * qc);
  if (std::abs(disc) <= 1e-12 * disc_scale) {
    push(-qb / (2.0 * qa), true);
    return out;
  }
  cplx s = std::sqrt(disc);
  // Pick the branch that adds magnitudes, avoiding cancellation in -b +- sqrt.
  if ((std::conj(qb) * s).real() < 0.0) s = -s;
  const cplx q = -0.5 * (qb + s);
  const cplx z1 = q / qa;
  const cplx z2 = qc / q;
  push(z1, false);
  push(z2, false);
  return out;
}

MapClass classify(const MoebiusMap& f, const ClassifyOptions& opts,
                  const RationalityOverride& override_) {
  if (is_identity(f, opts.tol)) return Identity{};
  const auto fps = fixed_points(f, opts.boundary_tol);

  for (const auto& fp : fps) {
    if (fp.location != Location::Interior) continue;
    const cplx lambda = fp.multiplier / std::abs(fp.multiplier);
    const double angle = std::arg(lambda);
    const double r0 = std::abs(fp.point);
    const double theta0 = r0 > 0.0 ? std::arg(fp.point) : 0.0;
    switch (override_.kind) {
      case RationalityOverride::Kind::DeclareRational:
        if (override_.m < 1) throw DegenerateInput("declared rational order must be >= 1");
        if (std::abs(std::polar(1.0, override_.m * angle) - 1.0) > 1e-6)
          throw DegenerateInput("declared rational order " + std::to_string(override_.m) +
                                " does not satisfy lambda^m = 1");
        return EllipticRational{override_.m, fp.point, lambda};
      case RationalityOverride::Kind::DeclareIrrational:
        return EllipticIrrational{fp.point, r0, theta0, lambda};
      case RationalityOverride::Kind::Auto:
        break;
    }
    const cplx probes[] = {cplx(0.0, 0.0), cplx(0.5, 0.0), cplx(0.0, 0.5)};
    for (int k = 1; k <= opts.m_max; ++k) {
      if (std::abs(std::polar(1.0, k * angle) - 1.0) >= opts.tol) continue;
      // Cross-check on the map itself: f^k must fix the probe points.
      const MoebiusMap fk = power(f, k);
      bool periodic = true;
      for (cplx p : probes) {
        if (std::abs(fk(p) - p) > 10.0 * std::max(opts.tol, 1e-12) * (1.0 + k)) periodic = false;
      }
      if (periodic) return EllipticRational{k, fp.point, lambda};
    }
    for (int k = opts.m_max + 1; k <= opts.ambiguity_order_limit; ++k) {
      if (std::abs(std::polar(1.0, k * angle) - 1.0) < opts.tol) {
        throw AmbiguousRationality(k, angle);
      }
    }
    return EllipticIrrational{fp.point, r0, theta0, lambda};
  }

  if (fps.size() == 1 && fps[0].location == Location::Boundary && fps[0].double_root) {
    return Parabolic{fps[0].point / std::abs(fps[0].point)};
  }
  if (fps.size() == 2 && fps[0].location == Location::Boundary &&
      fps[1].location == Location::Boundary) {
    double d0 = std::abs(fps[0].multiplier);
    double d1 = std::abs(fps[1].multiplier);
    cplx z0 = fps[0].point / std::abs(fps[0].point);
    cplx z1 = fps[1].point / std::abs(fps[1].point);
    if (std::abs(d0 - d1) <= opts.tol) {
      // Numerically merged boundary pair: treat as the parabolic double point.
      return Parabolic{(z0 + z1) / std::abs(z0 + z1)};
    }
    if (d0 > d1) {
      std::swap(d0, d1);
      std::swap(z0, z1);
    }
    return Hyperbolic{z0, z1, d0, d1};
  }
  throw DegenerateInput("fixed-point configuration is not that of a disk automorphism");
}

std::string class_name(const MapClass& cls) {
  struct V {
    std::string operator()(const Identity&) const { return "Identity"; }
    std::string operator()(const EllipticRational&) const { return "EllipticRational"; }
    std::string operator()(const EllipticIrrational&) const { return "EllipticIrrational"; }
    std::string operator()(const Parabolic&) const { return "Parabolic"; }
    std::string operator()(const Hyperbolic&) const { return "Hyperbolic"; }
  };
  return std::visit(V{}, cls);
}

std::string describe(const MapClass& cls) {
  struct V {
    std::string operator()(const Identity&) const { return "Identity"; }
    std::string operator()(const EllipticRational& e) const {
      return "EllipticRational m=" + std::to_string(e.m) + " z0=" + format_complex(e.z0);
    }
    std::string operator()(const EllipticIrrational& e) const {
      return "EllipticIrrational z0=" + format_complex(e.z0) + " (r0=" + format_real(e.r0) +
             ", theta0=" + format_real(e.theta0) + ")";
    }
    std::string operator()(const Parabolic& p) const {
      return "Parabolic ζ=" + format_complex(p.zeta);
    }
    std::string operator()(const Hyperbolic& h) const {
      return "Hyperbolic ζ₁=" + format_complex(h.zeta1) + " (|φ′|=" + format_real(h.derivative1) +
             "), ζ₂=" + format_complex(h.zeta2) + " (|φ′|=" + format_real(h.derivative2) + ")";
    }
  };
  return std::visit(V{}, cls);
}

std::vector<cplx> orbit(const MoebiusMap& f, cplx z, int n) {
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(std::max(n, 0)) + 1);
  out.push_back(z);
  for (int k = 0; k < n; ++k) {
    z = f(z);
    out.push_back(z);
  }
  return out;
}

}  // namespace wco
