#include "wco/blaschke.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

#include "wco/format.hpp"

namespace wco {

namespace {

double wrap_angle(double t) {
  t = std::fmod(t, kTwoPi);
  if (t < 0) t += kTwoPi;
  return t;
}

cplx iterate(const BlaschkeProduct& b, cplx z, int k) {
  for (int i = 0; i < k; ++i) {
    z = b(z);
    z /= std::abs(z);
  }
  return z;
}

bool verify_orbit(const BlaschkeProduct& b, const std::vector<cplx>& orb) {
  for (std::size_t k = 0; k < orb.size(); ++k)
    if (std::abs(b(orb[k]) - orb[(k + 1) % orb.size()]) >= 1e-12) return false;
  return true;
}

PeriodicSearch monomial_orbits(const BlaschkeProduct& b, int p, std::size_t budget) {
  PeriodicSearch out;
  const std::int64_t d = b.degree();
  std::int64_t D = 1;
  for (int i = 0; i < p; ++i) D *= d;
  D -= 1;
  const double shift = -std::arg(b.phase()) / static_cast<double>(d - 1);
  std::int64_t limit = D;
  if (static_cast<std::uint64_t>(D) > budget) {
    limit = static_cast<std::int64_t>(budget);
    out.complete = false;
    out.notes.push_back("budget exhausted: scanned " + std::to_string(limit) + " of " +
                        std::to_string(D) + " period-" + std::to_string(p) + " candidates");
  }
  for (std::int64_t k = 0; k < limit; ++k) {
    std::vector<std::int64_t> ks{k};
    bool minimal = true, canonical = true;
    for (int j = 1; j < p; ++j) {
      const std::int64_t next =
          static_cast<std::int64_t>((static_cast<__int128>(ks.back()) * d) % D);
      if (next == k) {
        minimal = false;
        break;
      }
      if (next < k) canonical = false;
      ks.push_back(next);
    }
    if (!minimal || !canonical) continue;
    std::vector<cplx> orb;
    for (std::int64_t kj : ks)
      orb.push_back(unit(kTwoPi * static_cast<double>(kj) / static_cast<double>(D) + shift));
    if (verify_orbit(b, orb)) {
      out.orbits.push_back(std::move(orb));
    } else {
      out.notes.push_back("orbit through angle index " + std::to_string(k) + " failed verification");
      out.complete = false;
    }
  }
  return out;
}

// Principal argument of B^p(e^{it}) e^{-it}.
double residual_arg(const BlaschkeProduct& b, int p, double t) {
  const cplx z = unit(t);
  return std::arg(iterate(b, z, p) * std::conj(z));
}

PeriodicSearch general_orbits(const BlaschkeProduct& b, int p, std::size_t budget) {
  PeriodicSearch out;
  const double lmax = std::pow(b.max_circle_derivative(), p);
  double want = std::max(4096.0, 4.0 * std::ceil(lmax));
  if (want > static_cast<double>(budget)) {
    want = static_cast<double>(budget);
    out.complete = false;
    out.notes.push_back("grid for period " + std::to_string(p) + " capped at the budget");
  }
  const std::size_t n = static_cast<std::size_t>(want);
  const double h = kTwoPi / static_cast<double>(n);

  std::vector<double> g(n + 1);
  cplx prev = iterate(b, 1.0, p);
  double lifted = std::arg(prev);
  g[0] = lifted;
  for (std::size_t i = 1; i <= n; ++i) {
    const double t = h * static_cast<double>(i);
    const cplx cur = iterate(b, unit(t), p);
    lifted += std::arg(cur / prev);
    prev = cur;
    g[i] = lifted - t;
  }

  std::vector<double> roots_found;
  for (std::size_t i = 0; i < n; ++i) {
    const double lo = std::min(g[i], g[i + 1]), hi = std::max(g[i], g[i + 1]);
    for (double j = std::ceil(lo / kTwoPi); j * kTwoPi <= hi; j += 1.0) {
      if (j * kTwoPi == g[i + 1] && i + 1 < n) continue;  // counted in the next cell
      double a = h * static_cast<double>(i), c = h * static_cast<double>(i + 1);
      double fa = residual_arg(b, p, a);
      if (fa == 0.0) {
        roots_found.push_back(a);
        continue;
      }
      for (int it = 0; it < 80 && c - a > 1e-16; ++it) {
        const double m = 0.5 * (a + c);
        const double fm = residual_arg(b, p, m);
        if ((fm > 0) == (fa > 0)) {
          a = m, fa = fm;
        } else {
          c = m;
        }
      }
      roots_found.push_back(0.5 * (a + c));
    }
  }

  std::vector<double> seen;
  for (double t : roots_found) {
    const cplx z = unit(t);
    if (std::abs(iterate(b, z, p) - z) >= 1e-12) continue;
    std::vector<cplx> orb{z};
    bool minimal = true;
    for (int k = 1; k < p; ++k) {
      const cplx next = iterate(b, orb.back(), 1);
      if (std::abs(next - z) < 1e-9) {
        minimal = false;
        break;
      }
      orb.push_back(next);
    }
    if (!minimal || !verify_orbit(b, orb)) continue;
    double rep = kTwoPi;
    for (const cplx& q : orb) rep = std::min(rep, wrap_angle(std::arg(q)));
    bool dup = false;
    for (double s : seen)
      if (std::abs(s - rep) < 1e-9 || std::abs(std::abs(s - rep) - kTwoPi) < 1e-9) dup = true;
    if (dup) continue;
    seen.push_back(rep);
    out.orbits.push_back(std::move(orb));
  }
  return out;
}

}  // namespace

std::vector<double> boundary_iterate(const BlaschkeProduct& b, double theta0, int n) {
  std::vector<double> out{wrap_angle(theta0)};
  cplx z = unit(theta0);
  for (int k = 0; k < n; ++k) {
    z = b(z);
    z /= std::abs(z);
    out.push_back(wrap_angle(std::arg(z)));
  }
  return out;
}

PeriodicSearch periodic_points(const BlaschkeProduct& b, int p, std::size_t budget) {
  if (p < 1 || p > 12) throw DegenerateInput("period must be in 1..12");
  return b.is_monomial() ? monomial_orbits(b, p, budget) : general_orbits(b, p, budget);
}

EndomorphismBounds endomorphism_bounds(const WeightPoly& w, const BlaschkeProduct& b,
                                       const BlaschkeOptions& opts) {
  EndomorphismBounds out;
  EnclosureTracker rho, rmin;
  rho.offer_upper(w.l1_norm(), "sum of coefficient moduli bounds |w| on the disk");
  rho.offer_upper(certified_circle_bounds(w).sup, "certified sup of |w| on the circle");

  for (int n = 1; n <= opts.n_max; n *= 2) {
    const CocycleProbe probe(b, w, n, opts.samples);
    // Arcs grow under an expanding map, so long cocycles need far more cells
    // for the same gain; the budget is split by cocycle length.
    CertifyOptions co = opts.certify;
    co.max_cells = std::max<std::size_t>(4 * static_cast<std::size_t>(opts.samples), co.max_cells / n);
    const CertifiedBound up = rho_upper_certified(probe, co);
    rho.offer_upper(up.value, "certified sup_T |w_n|^(1/n), n=" + std::to_string(n));
    if (2 * n > opts.n_max) {
      const CertifiedBound lo = min_growth_lower_certified(probe, co);
      const std::string wit = "certified min_T |w_n|^(1/n), n=" + std::to_string(n);
      rmin.offer_lower(lo.value, wit);
      rho.offer_lower(lo.value, wit);
    }
  }

  for (int p = 1; p <= opts.p_max; ++p) {
    const PeriodicSearch s = periodic_points(b, p, opts.orbit_budget);
    if (!s.complete) out.search_complete = false;
    for (const auto& orb : s.orbits) {
      const double g = rho_lower_periodic(w, b, orb, 1e-11);
      const std::string wit = "period-" + std::to_string(p) + " orbit through " +
                              format_complex(orb.front(), 12);
      rho.offer_lower(g, wit);
      rmin.offer_upper(g, wit);
      ++out.orbits_used;
    }
  }
  rmin.offer_upper(rho.enclosure().upper, "rho_min <= rho");
  out.rho = rho.enclosure();
  out.rho_min = rmin.enclosure();
  return out;
}

RadiusEnclosure rho_enclosure(const WeightPoly& w, const BlaschkeProduct& b,
                              const BlaschkeOptions& opts) {
  return endomorphism_bounds(w, b, opts).rho;
}

SpectrumReport analyze_endomorphism(const WeightPoly& w, const BlaschkeProduct& b,
                                    const BlaschkeOptions& opts) {
  SpectrumReport r;
  r.map_class = "BlaschkeEndomorphism degree=" + std::to_string(b.degree());
  if (opts.cited_rho) r.quantities.push_back({"cited_rho", *opts.cited_rho});

  if (w.degree() == 0) {
    const double c = std::abs(w.coeffs()[0]);
    r.case_tag = kNotCovered;
    r.rho = r.rho_min = c;
    r.oracle_rho = RadiusEnclosure{c, c, "constant weight", "constant weight"};
    r.oracle_rho_min = r.oracle_rho;
    r.sigma = SpectrumEntry::exact(SpectralSet::disk(c),
                                   {"|c| times the spectrum of the unweighted endomorphism"});
    const SpectralSet outer = SpectralSet::disk(c);
    for (auto& [name, e] : r.entries())
      if (e != &r.sigma) *e = SpectrumEntry::unknown(outer);
    r.notes.push_back("constant weight: only the disk shape of sigma is known");
    return r;
  }

  const EndomorphismBounds eb = endomorphism_bounds(w, b, opts);
  r.case_tag = "blaschke_endomorphism";
  r.oracle_rho = eb.rho;
  r.oracle_rho_min = eb.rho_min;
  r.rho = eb.rho.upper;
  r.rho_min = eb.rho_min.lower;
  r.quantities.push_back({"rho_lower", eb.rho.lower});
  r.quantities.push_back({"rho_upper", eb.rho.upper});
  r.quantities.push_back({"rho_min_lower", eb.rho_min.lower});
  r.quantities.push_back({"rho_min_upper", eb.rho_min.upper});
  r.quantities.push_back({"periodic_orbits_used", static_cast<double>(eb.orbits_used)});
  if (!eb.search_complete) r.notes.push_back("periodic orbit search was cut short by the budget");
  r.notes.push_back("rho is enclosed in [" + format_real(eb.rho.lower, 12) + ", " +
                    format_real(eb.rho.upper, 12) + "]; lower: " + eb.rho.lower_witness +
                    "; upper: " + eb.rho.upper_witness);

  const bool tight = eb.rho.upper - eb.rho.lower <= 1e-12 * std::max(1.0, eb.rho.upper);
  const SpectralSet outer = SpectralSet::disk(eb.rho.upper);
  if (tight) {
    r.sigma = SpectrumEntry::exact(outer, {"sigma is a disk or {0}; the enclosure of rho is tight"});
  } else {
    r.sigma = SpectrumEntry::at_least(SpectralSet::disk(eb.rho.lower), outer,
                                      {"sigma is a disk or {0} of radius rho"});
  }

  const InvertibilityClass inv = classify_invertibility(w);
  std::vector<SpectralSet> ap;
  if (inv.kind == InvertibilityKind::VanishesOnCircle) ap.push_back(SpectralSet::origin());
  if (tight) ap.push_back(SpectralSet::circle(eb.rho.upper));
  const std::string ap_note =
      "rotation invariant; contains {0} when w vanishes on the circle and the boundary circle of sigma";
  r.sigma_ap = SpectrumEntry::at_least(SpectralSet::unite(ap), outer, {ap_note});
  r.sigma_usf = SpectrumEntry::at_least(SpectralSet::unite(ap), outer,
                                        {ap_note, "sigma_usf = sigma_ap"});

  std::vector<std::string> lsf_notes{
      "contains {rho_min <= |lambda| <= rho}; inner set uses the certified part [rho_min upper bound, "
      "rho lower bound]"};
  SpectralSet lsf_inner = SpectralSet::empty();
  if (eb.rho_min.upper <= eb.rho.lower) {
    lsf_inner = SpectralSet::annulus(eb.rho_min.upper, eb.rho.lower);
  } else {
    lsf_notes.push_back("enclosures overlap; no certified inner annulus");
  }
  r.sigma_lsf = SpectrumEntry::at_least(lsf_inner, outer, lsf_notes);
  r.sigma_f = SpectrumEntry::at_least(lsf_inner, outer, {"sigma_lsf <= sigma_f"});
  r.sigma_w = SpectrumEntry::at_least(lsf_inner, outer, {"sigma_f <= sigma_w"});
  if (tight) {
    r.sigma_sf = SpectrumEntry::at_least(SpectralSet::circle(eb.rho.upper), outer,
                                         {"the circle |lambda| = rho lies in sigma_ap and sigma_lsf"});
  } else {
    r.sigma_sf = SpectrumEntry::unknown(outer);
  }

  if (opts.cited_rho) {
    r.notes.push_back("cited value rho = " + format_real(*opts.cited_rho, 12) +
                      " is carried for comparison, not adopted; the periodic-orbit lower bound is " +
                      format_real(eb.rho.lower, 12));
  }
  return r;
}

std::vector<CheckResult> verify_endomorphism(const SpectrumReport& report,
                                             const BlaschkeOptions& opts) {
  std::vector<CheckResult> out;
  auto sound = [&](const char* name, const std::optional<RadiusEnclosure>& e) {
    if (!e) return;
    CheckResult c{name, e->lower, e->lower, e->upper, Verdict::OK, "lower <= upper"};
    if (e->lower > e->upper * (1.0 + 1e-12) + 1e-300) c.verdict = Verdict::FLAG;
    out.push_back(c);
  };
  sound("enclosure.rho", report.oracle_rho);
  sound("enclosure.rho_min", report.oracle_rho_min);
  std::optional<double> cited = opts.cited_rho;
  if (!cited) cited = report.quantity("cited_rho");
  if (cited && report.oracle_rho) {
    out.push_back(make_check("rho.cited", *cited, report.oracle_rho->lower, report.oracle_rho->upper,
                             1e-9,
                             "cited value against the enclosure [" +
                                 format_real(report.oracle_rho->lower, 12) + ", " +
                                 format_real(report.oracle_rho->upper, 12) + "]"));
  }
  return out;
}

}  // namespace wco
