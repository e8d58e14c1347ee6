#include "wco/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <variant>

#include "wco/format.hpp"
#include "wco/quadrature.hpp"

namespace wco {

std::array<std::pair<const char*, const SpectrumEntry*>, 7> SpectrumReport::entries() const {
  return {{{"sigma", &sigma},
           {"sigma_ap", &sigma_ap},
           {"sigma_usf", &sigma_usf},
           {"sigma_sf", &sigma_sf},
           {"sigma_lsf", &sigma_lsf},
           {"sigma_f", &sigma_f},
           {"sigma_w", &sigma_w}}};
}

std::array<std::pair<const char*, SpectrumEntry*>, 7> SpectrumReport::entries() {
  return {{{"sigma", &sigma},
           {"sigma_ap", &sigma_ap},
           {"sigma_usf", &sigma_usf},
           {"sigma_sf", &sigma_sf},
           {"sigma_lsf", &sigma_lsf},
           {"sigma_f", &sigma_f},
           {"sigma_w", &sigma_w}}};
}

void SpectrumReport::set_all(const SpectrumEntry& e) {
  for (auto& [name, entry] : entries()) *entry = e;
}

std::optional<double> SpectrumReport::quantity(const std::string& name) const {
  for (const auto& [k, v] : quantities)
    if (k == name) return v;
  return std::nullopt;
}

std::string to_string(Verdict v) { return v == Verdict::OK ? "OK" : "FLAG"; }

std::pair<double, double> circle_modulus_range(const DiskFunction& f, int samples) {
  samples = std::max(samples, 16);
  const double h = kTwoPi / samples;
  double mn = std::numeric_limits<double>::infinity(), mx = -1.0;
  int imn = 0, imx = 0;
  for (int i = 0; i < samples; ++i) {
    const double v = std::abs(f(unit(h * i)));
    if (v < mn) mn = v, imn = i;
    if (v > mx) mx = v, imx = i;
  }
  auto refine = [&](int i, double sign) {
    double a = h * (i - 1), b = h * (i + 1);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    auto val = [&](double t) { return sign * std::abs(f(unit(t))); };
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = val(c), fd = val(d);
    for (int it = 0; it < 80 && b - a > 1e-15; ++it) {
      if (fc < fd) {
        b = d, d = c, fd = fc;
        c = b - g * (b - a), fc = val(c);
      } else {
        a = c, c = d, fc = fd;
        d = a + g * (b - a), fd = val(d);
      }
    }
    return sign * std::min(fc, fd);
  };
  mn = std::min(mn, refine(imn, 1.0));
  mx = std::max(mx, refine(imx, -1.0));
  return {mn, mx};
}

namespace {

const char* kUsfNote = "sigma_usf = sigma_ap (upper semi-Fredholm spectrum equals approximate point spectrum)";

bool near_zero(double v, const WeightPoly& w) { return v <= 1e-10 * (1.0 + w.l1_norm()); }

void add_warnings(SpectrumReport& r, const InvertibilityClass& inv) {
  for (const auto& wmsg : inv.warnings) r.notes.push_back("warning: " + wmsg);
}

SpectrumReport rational_report(const MoebiusMap& map, const WeightPoly& w, int m, bool identity,
                               const AnalyzeOptions& opts) {
  SpectrumReport r;
  r.case_tag = identity ? "multiplication" : "elliptic_rational";
  const DiskFunction f{w, map, m};
  const SpectralSet range = SpectralSet::root_preimage(m, {PlaneRegion::Kind::RangeOnDisk, f});
  const SpectralSet curve = SpectralSet::root_preimage(m, {PlaneRegion::Kind::CurveImage, f});
  const auto [mn, mx] = circle_modulus_range(f, opts.extrema_samples);
  r.rho = std::pow(mx, 1.0 / m);
  r.rho_min = std::pow(mn, 1.0 / m);
  r.sigma = r.sigma_w = SpectrumEntry::exact(range);
  r.sigma_ap = r.sigma_f = SpectrumEntry::exact(curve);
  r.sigma_usf = SpectrumEntry::exact(curve, {kUsfNote});
  const std::string thin =
      "sigma_f has empty interior, so it equals its boundary, which lies in sigma_sf";
  r.sigma_sf = SpectrumEntry::exact(curve, {thin});
  r.sigma_lsf = SpectrumEntry::exact(curve, {"sigma_sf <= sigma_lsf <= sigma_f; " + thin});
  r.quantities.push_back({"m", static_cast<double>(m)});
  r.notes.push_back(identity ? "multiplication operator: period p(t) = 1 everywhere"
                             : "phi^" + std::to_string(m) + " = id; w_" + std::to_string(m) +
                                   " evaluated by composition");
  return r;
}

// Shared shape of the single-radius cases (irrational rotation, parabolic,
// hyperbolic with equal fixed-point moduli).
enum class SingleCase { Invertible, NonvanishingOnCircle, Zero, CircleZero };

void single_radius_spectra(SpectrumReport& r, SingleCase c, double rho) {
  r.rho = r.rho_min = rho;
  switch (c) {
    case SingleCase::Invertible:
      r.set_all(SpectrumEntry::exact(SpectralSet::circle(rho)));
      break;
    case SingleCase::Zero:
      r.set_all(SpectrumEntry::exact(SpectralSet::origin()));
      break;
    case SingleCase::CircleZero:
      r.set_all(SpectrumEntry::exact(SpectralSet::disk(rho)));
      break;
    case SingleCase::NonvanishingOnCircle: {
      const SpectralSet circ = SpectralSet::circle(rho);
      r.sigma = r.sigma_w = SpectrumEntry::exact(SpectralSet::disk(rho));
      r.sigma_f = SpectrumEntry::exact(circ);
      r.sigma_ap = SpectrumEntry::exact(
          circ, {"derived: sigma_usf <= sigma_f = circle and the boundary of sigma lies in sigma_ap; "
                 "not stated explicitly for this subcase"});
      r.sigma_usf = SpectrumEntry::exact(circ, {kUsfNote, "derived, not quoted"});
      r.sigma_sf = SpectrumEntry::exact(
          circ, {"inferred from boundary(sigma_f) <= sigma_sf <= sigma_usf; not stated explicitly"});
      r.sigma_lsf = SpectrumEntry::exact(circ, {"sigma_sf <= sigma_lsf <= sigma_f"});
      break;
    }
  }
}

SingleCase single_case(const InvertibilityClass& inv) {
  switch (inv.kind) {
    case InvertibilityKind::InvertibleInAlgebra: return SingleCase::Invertible;
    case InvertibilityKind::NonvanishingOnCircle: return SingleCase::NonvanishingOnCircle;
    case InvertibilityKind::VanishesOnCircle: return SingleCase::CircleZero;
  }
  return SingleCase::CircleZero;
}

const char* single_suffix(SingleCase c) {
  switch (c) {
    case SingleCase::Invertible: return ".invertible";
    case SingleCase::NonvanishingOnCircle: return ".nonvanishing_on_circle";
    case SingleCase::Zero: return ".zero_at_fixed_point";
    case SingleCase::CircleZero: return ".vanishes_on_circle";
  }
  return "";
}

SpectrumReport irrational_report(const WeightPoly& w, const EllipticIrrational& e,
                                 const AnalyzeOptions& opts) {
  SpectrumReport r;
  const InvertibilityClass inv = classify_invertibility(w, opts.root_tol);
  add_warnings(r, inv);
  const LogIntegralResult I = poisson_log_integral(w, e.z0, opts.quad_tol);
  const SingleCase c = single_case(inv);
  r.case_tag = std::string("elliptic_irrational") + single_suffix(c);
  single_radius_spectra(r, c, std::exp(I.value));
  r.quantities.push_back({"poisson_log_integral", I.value});
  r.quantities.push_back({"quadrature_self_check_error", I.est_error});
  for (const auto& n : I.notes) r.notes.push_back(n);
  const LocalFactor lf = factor_at(w, e.z0);
  r.quantities.push_back({"zero_order_at_z0", static_cast<double>(lf.order)});
  if (lf.order > 0) {
    const double w1 = std::abs(lf.w1_at_z0);
    r.quantities.push_back({"w1_at_z0_abs", w1});
    r.notes.push_back(
        "w has a zero of order " + std::to_string(lf.order) +
        " at the interior fixed point: exp(Poisson integral) = " + format_real(r.rho) +
        " while |w1(z0)| = " + format_real(w1) + " (they differ by (1 - r0^2)^" +
        std::to_string(lf.order) + "); both are reported and the cocycle oracle decides");
  }
  r.notes.push_back("Poisson kernel taken as (1 - r0^2) / (1 + r0^2 - 2 r0 cos(theta - theta0))");
  return r;
}

SpectrumReport parabolic_report(const WeightPoly& w, const Parabolic& p,
                                const AnalyzeOptions& opts) {
  SpectrumReport r;
  const InvertibilityClass inv = classify_invertibility(w, opts.root_tol);
  add_warnings(r, inv);
  const double a = std::abs(w(p.zeta));
  const SingleCase c = near_zero(a, w) ? SingleCase::Zero : single_case(inv);
  r.case_tag = std::string("parabolic") + single_suffix(c);
  single_radius_spectra(r, c, c == SingleCase::Zero ? 0.0 : a);
  r.quantities.push_back({"w_at_zeta_abs", a});
  return r;
}

enum class HyperBranch { Equal, Less, Greater };

SpectrumReport hyperbolic_branch(const WeightPoly& w, const Hyperbolic& h,
                                 const InvertibilityClass& inv, HyperBranch branch) {
  SpectrumReport r;
  const double r1 = std::abs(w(h.zeta1));
  const double r2 = std::abs(w(h.zeta2));
  r.quantities.push_back({"w_at_zeta1_abs", r1});
  r.quantities.push_back({"w_at_zeta2_abs", r2});

  if (branch == HyperBranch::Equal) {
    const double rho = std::max(r1, r2);
    const SingleCase c = near_zero(rho, w) ? SingleCase::Zero : single_case(inv);
    r.case_tag = std::string("hyperbolic.equal") + single_suffix(c);
    single_radius_spectra(r, c, c == SingleCase::Zero ? 0.0 : rho);
    return r;
  }

  const double lo = std::min(r1, r2), hi = std::max(r1, r2);
  const SpectralSet ann = SpectralSet::annulus(lo, hi);
  const SpectralSet circles = SpectralSet::unite({SpectralSet::circle(r1), SpectralSet::circle(r2)});
  r.rho = hi;
  r.rho_min = lo;

  if (branch == HyperBranch::Less) {
    bool zero_off_zeta1 = false;
    for (const Root& z : inv.on_circle)
      if (std::abs(z.value - h.zeta1) > 1e-6) zero_off_zeta1 = true;
    if (zero_off_zeta1) {
      r.case_tag = "hyperbolic.attracting_smaller.circle_zero";
      r.sigma = r.sigma_f = SpectrumEntry::exact(SpectralSet::disk(r2));
      r.sigma_w = SpectrumEntry::exact(SpectralSet::disk(r2), {"sigma_f <= sigma_w <= sigma"});
      r.sigma_lsf = SpectrumEntry::exact(ann);
      const SpectralSet sf = SpectralSet::unite({SpectralSet::disk(r1), SpectralSet::circle(r2)});
      r.sigma_sf = r.sigma_usf = SpectrumEntry::exact(sf);
      r.sigma_sf.notes.push_back(
          "as stated; the disk part is not inside the stated sigma_lsf, although a point that is "
          "neither upper nor lower semi-Fredholm lies in both");
      r.sigma_ap = SpectrumEntry::exact(sf, {kUsfNote});
    } else if (inv.kind != InvertibilityKind::InvertibleInAlgebra) {
      r.case_tag = "hyperbolic.attracting_smaller.nonvanishing_off_attracting";
      r.sigma = r.sigma_w = SpectrumEntry::exact(SpectralSet::disk(r2));
      r.sigma_lsf = r.sigma_f = SpectrumEntry::exact(ann);
      r.sigma_sf = r.sigma_usf = SpectrumEntry::exact(circles);
      r.sigma_ap = SpectrumEntry::exact(circles, {kUsfNote});
    } else {
      r.case_tag = "hyperbolic.attracting_smaller.invertible";
      r.sigma = r.sigma_f = r.sigma_lsf = SpectrumEntry::exact(ann);
      r.sigma_w = SpectrumEntry::exact(ann, {"sigma_f <= sigma_w <= sigma"});
      r.sigma_sf = SpectrumEntry::exact(circles);
      r.sigma_ap = SpectrumEntry::exact(
          circles, {"the open annulus is the residual spectrum, so sigma_ap = sigma minus it"});
      r.sigma_usf = SpectrumEntry::exact(circles, {kUsfNote});
    }
    return r;
  }

  // |w(zeta1)| > |w(zeta2)|.
  r.notes.push_back(
      "the stated radius formulas assign rho = |w(zeta2)| and rho_min = |w(zeta1)|, which contradicts "
      "the stated spectrum under |w(zeta1)| > |w(zeta2)|; reported rho = |w(zeta1)|, rho_min = |w(zeta2)|");
  r.notes.push_back("the half-open annulus |w(zeta2)| <= |lambda| < |w(zeta1)| is read as closed "
                    "(spectra are closed sets)");
  r.sigma_ap = r.sigma_usf = SpectrumEntry::exact(ann);
  r.sigma_usf.notes.push_back(kUsfNote);
  r.sigma_sf = SpectrumEntry::at_least(
      circles, ann, {"sigma_sf = sigma_usf intersected with sigma_lsf contains both circles"});
  if (inv.kind == InvertibilityKind::VanishesOnCircle) {
    r.case_tag = "hyperbolic.attracting_larger.circle_zero";
    r.sigma = r.sigma_f = SpectrumEntry::exact(SpectralSet::disk(r1));
    r.sigma_w = SpectrumEntry::exact(SpectralSet::disk(r1), {"sigma_f <= sigma_w <= sigma"});
  } else if (inv.kind == InvertibilityKind::NonvanishingOnCircle) {
    r.case_tag = "hyperbolic.attracting_larger.nonvanishing_on_circle";
    r.sigma = r.sigma_w = SpectrumEntry::exact(SpectralSet::disk(r1));
    r.sigma_f = SpectrumEntry::at_least(ann, SpectralSet::disk(r1),
                                        {"sigma_usf <= sigma_f <= sigma_w; not stated"});
  } else {
    r.case_tag = "hyperbolic.attracting_larger.invertible";
    r.sigma = r.sigma_f = SpectrumEntry::exact(ann);
    r.sigma_w = SpectrumEntry::exact(ann, {"sigma_f <= sigma_w <= sigma"});
  }
  const SpectralSet lsf_outer = r.sigma_f.status == Knowledge::Exact ? r.sigma_f.set : *r.sigma_f.outer;
  r.sigma_lsf = SpectrumEntry::at_least(
      circles, lsf_outer,
      {"open problem: sigma_lsf is only known to contain both circles; interior points are unknown"});
  return r;
}

SpectrumReport hyperbolic_report(const WeightPoly& w, const Hyperbolic& h,
                                 const AnalyzeOptions& opts) {
  const InvertibilityClass inv = classify_invertibility(w, opts.root_tol);
  const double r1 = std::abs(w(h.zeta1));
  const double r2 = std::abs(w(h.zeta2));
  const double scale = std::max(r1, r2);
  const double rel = scale == 0.0 ? 0.0 : std::abs(r1 - r2) / scale;
  const HyperBranch strict = r1 < r2 ? HyperBranch::Less : HyperBranch::Greater;

  SpectrumReport r;
  if (rel <= opts.equal_rel_tol) {
    r = hyperbolic_branch(w, h, inv, HyperBranch::Equal);
  } else {
    r = hyperbolic_branch(w, h, inv, strict);
    if (rel < opts.dual_band) {
      r.notes.push_back("warning: |w(zeta1)| and |w(zeta2)| differ by relative " + format_real(rel) +
                        ", inside the dual-report band; the equal-moduli reading is attached");
      r.alternates.push_back(hyperbolic_branch(w, h, inv, HyperBranch::Equal));
    }
  }
  add_warnings(r, inv);
  return r;
}

}  // namespace

SpectrumReport analyze_disc(const MoebiusMap& map, const WeightPoly& w, const AnalyzeOptions& opts) {
  const MapClass cls = classify(map, opts.classify, opts.rationality);
  SpectrumReport r = std::visit(
      [&](const auto& c) -> SpectrumReport {
        using T = std::decay_t<decltype(c)>;
        if constexpr (std::is_same_v<T, Identity>) {
          return rational_report(map, w, 1, true, opts);
        } else if constexpr (std::is_same_v<T, EllipticRational>) {
          return rational_report(map, w, c.m, false, opts);
        } else if constexpr (std::is_same_v<T, EllipticIrrational>) {
          return irrational_report(w, c, opts);
        } else if constexpr (std::is_same_v<T, Parabolic>) {
          return parabolic_report(w, c, opts);
        } else {
          return hyperbolic_report(w, c, opts);
        }
      },
      cls);
  r.map_class = describe(cls);
  for (auto& alt : r.alternates) alt.map_class = r.map_class;
  r.notes.push_back("sigma_r = sigma minus sigma_ap");
  return r;
}

CheckResult make_check(std::string name, double value, double lo, double hi, double tol,
                       std::string note) {
  CheckResult c{std::move(name), value, lo, hi, Verdict::OK, std::move(note)};
  const double slack = tol * std::max(1.0, std::abs(value));
  if (!(value >= lo - slack && value <= hi + slack)) c.verdict = Verdict::FLAG;
  return c;
}

namespace {

void check_report(const SpectrumReport& r, const RadiusEnclosure& rho, const RadiusEnclosure& rmin,
                  double tol, const std::string& prefix, std::vector<CheckResult>& out) {
  out.push_back(make_check(prefix + "rho", r.rho, rho.lower, rho.upper, tol));
  out.push_back(make_check(prefix + "rho_min", r.rho_min, rmin.lower, rmin.upper, tol));
  if (const auto* a = std::get_if<region::ClosedAnnulus>(&r.sigma.set.node())) {
    out.push_back(make_check(prefix + "annulus.r1", a->r1, rmin.lower, rmin.upper, tol,
                             "inner radius against the rho_min enclosure"));
    out.push_back(make_check(prefix + "annulus.r2", a->r2, rho.lower, rho.upper, tol,
                             "outer radius against the rho enclosure"));
  }
  if (const auto w1 = r.quantity("w1_at_z0_abs")) {
    out.push_back(make_check(prefix + "rho.w1_at_z0", *w1, rho.lower, rho.upper, tol,
                             "alternative reading |w1(z0)| of the irrational-rotation radius"));
  }
}

}  // namespace

std::vector<CheckResult> verify_report(SpectrumReport& report, const WeightPoly& w,
                                       const MoebiusMap& map, const VerifyOptions& opts) {
  const CocycleProbe probe(map, w, opts.n, opts.samples);
  const CertifiedBound up = rho_upper_certified(probe, opts.certify);
  const CertifiedBound lo = min_growth_lower_certified(probe, opts.certify);
  const std::string nstr = "n=" + std::to_string(opts.n);

  EnclosureTracker rho;
  rho.offer_upper(up.value, "certified sup_T |w_n|^(1/n), " + nstr +
                                (up.converged ? "" : " (cell budget exhausted)"));
  rho.offer_lower(lo.value, "certified min_T |w_n|^(1/n) <= rho_min <= rho, " + nstr);
  EnclosureTracker rmin;
  rmin.offer_lower(lo.value, "certified min_T |w_n|^(1/n), " + nstr);
  rmin.offer_upper(up.value, "rho_min <= rho <= certified upper bound");

  for (const auto& orb : moebius_boundary_orbits(map, std::min(opts.samples, 256))) {
    double g;
    try {
      g = rho_lower_periodic(w, map, orb, 1e-7);
    } catch (const DegenerateInput&) {
      continue;
    }
    const std::string wit = "periodic orbit through " + format_complex(orb.front()) + " (period " +
                            std::to_string(orb.size()) + ")";
    rho.offer_lower(g, wit);
    rmin.offer_upper(g, wit);
  }

  report.oracle_rho = rho.enclosure();
  report.oracle_rho_min = rmin.enclosure();
  std::vector<CheckResult> out;
  check_report(report, rho.enclosure(), rmin.enclosure(), opts.tol, "", out);
  for (std::size_t i = 0; i < report.alternates.size(); ++i) {
    report.alternates[i].oracle_rho = rho.enclosure();
    report.alternates[i].oracle_rho_min = rmin.enclosure();
    check_report(report.alternates[i], rho.enclosure(), rmin.enclosure(), opts.tol,
                 "alternate" + std::to_string(i) + ".", out);
  }
  if (rho.enclosure().lower > rho.enclosure().upper * (1 + 1e-12)) {
    out.push_back({"enclosure.rho", report.rho, rho.enclosure().lower, rho.enclosure().upper,
                   Verdict::FLAG, "oracle enclosure is inverted"});
  }
  return out;
}

}  // namespace wco
