// Acceptance run: one PASS/FAIL line per criterion, exit status 1 on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "wco/blaschke.hpp"
#include "wco/format.hpp"
#include "wco/polydisc.hpp"
#include "wco/quadrature.hpp"
#include "wco/spectra.hpp"

using namespace wco;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void report(int id, const std::string& title, const std::function<Outcome()>& body) {
  Outcome o{false, ""};
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  if (!o.pass) ++failures;
  std::printf("criterion %d %s: %s (%s)\n", id, title.c_str(), o.pass ? "PASS" : "FAIL", o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(double x) { return format_real(x, 12); }

bool check_ok(const std::vector<CheckResult>& checks, const std::string& name) {
  for (const auto& c : checks)
    if (c.name == name) return c.verdict == Verdict::OK;
  return false;
}

std::string verdicts(const std::vector<CheckResult>& checks) {
  std::string s;
  for (const auto& c : checks) s += (s.empty() ? "" : ", ") + c.name + "=" + to_string(c.verdict);
  return s;
}

MoebiusMap rotate_conj(const MoebiusMap& f, double beta) {
  const auto r = MoebiusMap::rotation(std::polar(1.0, beta));
  return compose(r, compose(f, inverse(r)));
}

MoebiusMap point_conj(const MoebiusMap& f, cplx a) {
  const auto psi = MoebiusMap::canonical(0.0, a);
  return compose(inverse(psi), compose(f, psi));
}

const MoebiusMap kHyp = MoebiusMap::from_coefficients(1.0, 0.5, 0.5, 1.0);
const MoebiusMap kPar = MoebiusMap::from_coefficients({1, 1}, {0, -1}, {0, 1}, {1, -1});
const double kIrr = 2 * oracle::kPi * (std::sqrt(2.0) - 1);

AnalyzeOptions irrational_opts() {
  AnalyzeOptions o;
  o.rationality = {RationalityOverride::Kind::DeclareIrrational, 0};
  return o;
}

// Criterion 1.
Outcome hyperbolic() {
  const auto t0 = Clock::now();
  const WeightPoly w({-2.0, 1.0});
  auto r = analyze_disc(kHyp, w);
  VerifyOptions v;
  v.n = 60;
  v.tol = 1e-3;
  const auto checks = verify_report(r, w, kHyp, v);
  const double t = seconds_since(t0);
  const bool sigma = r.sigma.status == Knowledge::Exact && r.sigma.set.describe() == "annulus[1, 3]";
  bool sf = r.sigma_sf.status == Knowledge::Exact;
  for (double th = 0; th < 6.28; th += 0.5) {
    sf = sf && r.sigma_sf.membership(std::polar(1.0, th)) == Membership::In &&
         r.sigma_sf.membership(std::polar(3.0, th)) == Membership::In &&
         r.sigma_sf.membership(std::polar(2.0, th)) == Membership::Out &&
         r.sigma_sf.membership(std::polar(0.5, th)) == Membership::Out &&
         r.sigma_sf.membership(std::polar(3.5, th)) == Membership::Out;
  }
  const bool oracle = check_ok(checks, "annulus.r1") && check_ok(checks, "annulus.r2");
  return {sigma && sf && oracle && t < 1.0,
          "sigma " + r.sigma.set.describe() + ", sigma_sf " + r.sigma_sf.set.describe() + ", rho in [" +
              fmt(r.oracle_rho->lower) + ", " + fmt(r.oracle_rho->upper) + "], rho_min in [" +
              fmt(r.oracle_rho_min->lower) + ", " + fmt(r.oracle_rho_min->upper) + "], " +
              verdicts(checks) + ", " + fmt(t) + " s"};
}

// Criterion 2.
Outcome parabolic() {
  const auto t0 = Clock::now();
  const WeightPoly w({-2.0, 1.0});
  auto r = analyze_disc(kPar, w);
  VerifyOptions v;
  v.n = 10000;
  v.samples = 2048;
  v.tol = 5e-2;
  v.certify.eps = v.tol / 4;
  const auto checks = verify_report(r, w, kPar, v);
  const double t = seconds_since(t0);
  bool all_circle = true;
  for (const auto& [name, e] : r.entries())
    all_circle = all_circle && e->status == Knowledge::Exact && e->set.describe() == "circle(r=1)";
  const bool oracle = check_ok(checks, "rho") && check_ok(checks, "rho_min");
  return {all_circle && oracle && t < 5.0,
          "all spectra circle(r=1): " + std::string(all_circle ? "yes" : "no") + ", rho in [" +
              fmt(r.oracle_rho->lower) + ", " + fmt(r.oracle_rho->upper) + "], rho_min in [" +
              fmt(r.oracle_rho_min->lower) + ", " + fmt(r.oracle_rho_min->upper) + "], " + fmt(t) + " s"};
}

// Criterion 3.
Outcome elliptic_irrational() {
  const WeightPoly w({-2.0, 1.0});
  const auto map = MoebiusMap::canonical(kIrr, 0.0);
  auto r = analyze_disc(map, w, irrational_opts());
  const auto cf = poisson_log_integral_closed_form(w, 0.0);
  const auto nu = poisson_log_integral_numeric(w, 0.0);
  VerifyOptions v;
  v.n = 4096;
  v.tol = 1e-2;
  v.certify.eps = v.tol / 4;
  const auto checks = verify_report(r, w, map, v);
  const double gap = std::abs(cf.value - nu.value);
  const bool ok = r.case_tag == "elliptic_irrational.invertible" && std::abs(r.rho - 2.0) < 1e-10 &&
                  gap < 1e-10 && check_ok(checks, "rho");
  return {ok, "rho " + fmt(r.rho) + ", closed/numeric gap " + format_real(gap, 3) + ", oracle rho in [" +
                  fmt(r.oracle_rho->lower) + ", " + fmt(r.oracle_rho->upper) + "]"};
}

// Criterion 4.
Outcome elliptic_singular() {
  const cplx z0 = 0.5;
  const WeightPoly w({-0.5, 1.0});
  const auto map = point_conj(MoebiusMap::canonical(kIrr, 0.0), z0);
  auto r = analyze_disc(map, w, irrational_opts());
  const auto cf = poisson_log_integral_closed_form(w, z0);
  const auto nu = poisson_log_integral_numeric(w, z0);
  const double target = std::log(0.75);
  VerifyOptions v;
  v.n = 4096;
  v.tol = 1e-2;
  v.certify.eps = v.tol / 4;
  const auto checks = verify_report(r, w, map, v);
  const auto w1 = r.quantity("w1_at_z0_abs");
  bool note = false;
  for (const auto& n : r.notes) note = note || n.find("both are reported") != std::string::npos;
  const bool integrals = std::abs(cf.value - target) < 1e-10 && std::abs(nu.value - target) < 1e-10;
  const bool numbers = std::abs(r.rho - 0.75) < 1e-10 && w1 && std::abs(*w1 - 1.0) < 1e-12;
  const bool recorded = checks.size() >= 3;
  std::string verdict;
  for (const auto& c : checks)
    if (c.name == "rho" || c.name == "rho.w1_at_z0")
      verdict += (verdict.empty() ? "" : ", ") + c.name + " (" + fmt(c.closed_form) + ") " + to_string(c.verdict);
  return {integrals && numbers && note && recorded,
          "integral closed " + fmt(cf.value) + " numeric " + fmt(nu.value) + ", exp = " + fmt(r.rho) +
              ", |w1(z0)| = " + (w1 ? fmt(*w1) : "missing") + ", oracle rho in [" + fmt(r.oracle_rho->lower) +
              ", " + fmt(r.oracle_rho->upper) + "]: " + verdict};
}

// Brute force membership of lambda^2 in the range of -z^2 on the closed disk
// by bucketed dense sampling.
class SquareRangeOracle {
 public:
  SquareRangeOracle() : buckets_(kN * kN) {
    constexpr int kRad = 400, kAng = 2000;
    for (int i = 0; i <= kRad; ++i) {
      const double r = std::sqrt(static_cast<double>(i) / kRad);
      for (int j = 0; j < kAng; ++j) {
        const cplx z = std::polar(r, 2 * oracle::kPi * j / kAng);
        const cplx v = -z * z;
        buckets_[index(v)].push_back(v);
      }
    }
  }
  bool contains(cplx v) const {
    if (std::abs(v) > 1.02) return false;
    const int bx = cell(v.real()), by = cell(v.imag());
    for (int dx = -1; dx <= 1; ++dx)
      for (int dy = -1; dy <= 1; ++dy) {
        const int x = bx + dx, y = by + dy;
        if (x < 0 || y < 0 || x >= kN || y >= kN) continue;
        for (const cplx& s : buckets_[static_cast<std::size_t>(x * kN + y)])
          if (std::abs(s - v) <= kDelta) return true;
      }
    return false;
  }

 private:
  static constexpr double kH = 0.004, kLo = -1.02, kDelta = 0.0045;
  static constexpr int kN = 511;
  static int cell(double x) { return static_cast<int>(std::floor((x - kLo) / kH)); }
  static std::size_t index(cplx v) { return static_cast<std::size_t>(cell(v.real()) * kN + cell(v.imag())); }
  std::vector<std::vector<cplx>> buckets_;
};

// Criterion 5.
Outcome elliptic_rational() {
  const SquareRangeOracle brute;
  const auto t0 = Clock::now();
  const auto r = analyze_disc(MoebiusMap::rotation(-1.0), WeightPoly({0.0, 1.0}));
  int mismatches = 0, ap_mismatches = 0;
  for (int i = 0; i < 33; ++i)
    for (int j = 0; j < 33; ++j) {
      const cplx lam(-1.5 + 3.0 * i / 32, -1.5 + 3.0 * j / 32);
      const Membership want = brute.contains(lam * lam) ? Membership::In : Membership::Out;
      if (r.sigma.membership(lam) != want) ++mismatches;
      const Membership ap = std::abs(std::abs(lam * lam) - 1.0) <= 1e-6 ? Membership::In : Membership::Out;
      if (r.sigma_ap.membership(lam) != ap) ++ap_mismatches;
    }
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 2 * oracle::kPi);
  for (int k = 0; k < 200; ++k) {
    const double th = u(rng);
    if (r.sigma_ap.membership(std::polar(1.0, th)) != Membership::In) ++ap_mismatches;
    if (r.sigma_ap.membership(std::polar(1.0 + 1e-5, th)) != Membership::Out) ++ap_mismatches;
    if (r.sigma_ap.membership(std::polar(1.0 - 1e-5, th)) != Membership::Out) ++ap_mismatches;
  }
  const double t = seconds_since(t0);
  return {mismatches == 0 && ap_mismatches == 0 && t < 2.0,
          "case " + r.case_tag + ", sigma grid mismatches " + std::to_string(mismatches) +
              "/1089, sigma_ap mismatches " + std::to_string(ap_mismatches) + ", " + fmt(t) + " s"};
}

// Criterion 6.
Outcome blaschke_t1() {
  const auto e = endomorphism_bounds(WeightPoly({0.5, 0.5}), BlaschkeProduct::monomial(2));
  return {e.rho.lower == 1.0 && e.rho.upper == 1.0,
          "rho in [" + fmt(e.rho.lower) + ", " + fmt(e.rho.upper) + "]; lower: " + e.rho.lower_witness};
}

// Criterion 7.
Outcome blaschke_t2() {
  BlaschkeOptions o;
  o.cited_rho = 0.5;
  const auto r = analyze_endomorphism(WeightPoly({0.5, -0.5}), BlaschkeProduct::monomial(2), o);
  const auto checks = verify_endomorphism(r, o);
  const double lower = r.oracle_rho->lower;
  const bool bound = std::abs(lower - std::sqrt(3.0) / 2) < 1e-12;
  bool flag = false;
  for (const auto& c : checks)
    if (c.name == "rho.cited")
      flag = c.verdict == Verdict::FLAG && c.closed_form == 0.5 && c.oracle_lo == lower;
  return {bound && flag, "periodic lower bound " + fmt(lower) + ", upper " + fmt(r.oracle_rho->upper) +
                             ", cited 0.5 verdict " + (flag ? "FLAG" : "not flagged")};
}

// Criterion 8.
Outcome polydisc() {
  const auto t0 = Clock::now();
  const auto rot = TorusRotation::from_gammas_over_pi(std::vector<double>{std::sqrt(2.0) - 1, std::sqrt(3.0) - 1},
                                                      TorusRotation::Independence::Declared);
  const MultiPoly w(2, {{{0, 0}, 6.0}, {{1, 0}, 1.0}, {{0, 1}, 1.0}});
  const auto r = analyze_polydisc(rot, w);
  const auto I = torus_log_integral(w);
  const double t = seconds_since(t0);
  bool circle = r.case_tag == "torus_rotation.invertible";
  for (const auto& [name, e] : r.entries()) circle = circle && e->set.describe() == "circle(r=6)";
  const double err = std::abs(I.value - std::log(6.0));
  return {circle && err < 1e-6 && t < 10.0,
          "case " + r.case_tag + ", sigma " + r.sigma.set.describe() + ", |integral - ln 6| = " +
              format_real(err, 3) + ", " + fmt(t) + " s"};
}

// Random operators covering every disc branch.
struct Operator {
  MoebiusMap map;
  WeightPoly w;
  AnalyzeOptions opts;
  std::string label;
};

std::vector<Operator> random_operators(std::mt19937_64& rng, int count) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto ang = [&] { return 2 * oracle::kPi * u(rng); };
  std::vector<Operator> out;
  for (int k = 0; k < count; ++k) {
    const int kind = k % 5;
    const int flavour = (k / 5) % 4;  // inside, circle zero, zero at a fixed point, mixed
    Operator op{MoebiusMap::identity(), WeightPoly::constant(1.0), {}, ""};
    std::vector<cplx> special;  // fixed points to place zeros on
    if (kind == 0) {
      const double beta = ang();
      const double t = 0.2 + 0.6 * u(rng);
      op.map = rotate_conj(MoebiusMap::from_coefficients(1.0, t, t, 1.0), beta);
      special = {std::polar(1.0, beta), -std::polar(1.0, beta)};
      op.label = "hyperbolic";
    } else if (kind == 1) {
      op.map = rotate_conj(kPar, ang());
      special = {op.map(1.0)};
      for (cplx z : {cplx(1.0), cplx(-1.0), cplx(0, 1), cplx(0, -1)})
        if (std::abs(op.map(z) - z) < 1e-9) special = {z};
      op.label = "parabolic";
    } else if (kind == 2) {
      const cplx a = std::polar(0.7 * u(rng), ang());
      op.map = point_conj(MoebiusMap::canonical(kIrr * (1 + 0.1 * u(rng)), 0.0), a);
      op.opts = irrational_opts();
      special = {a};
      op.label = "elliptic irrational";
    } else if (kind == 3) {
      const int m = 2 + static_cast<int>(3 * u(rng));
      const cplx a = std::polar(0.5 * u(rng), ang());
      op.map = point_conj(MoebiusMap::rotation(std::polar(1.0, 2 * oracle::kPi / m)), a);
      special = {a};
      op.label = "elliptic rational";
    } else {
      op.label = "identity";
      special = {0.0};
    }
    std::vector<cplx> roots;
    if (flavour == 0) roots = {oracle::random_root(rng, 2)};
    if (flavour == 1) roots = {oracle::random_root(rng, 1), oracle::random_root(rng, 2)};
    if (flavour == 2) roots = {special[0], oracle::random_root(rng, 2)};
    if (flavour == 3) roots = {oracle::random_root(rng, 0), oracle::random_root(rng, 2)};
    op.w = WeightPoly(oracle::poly_from_roots(roots, std::polar(0.5 + u(rng), ang())));
    out.push_back(op);
  }
  return out;
}

std::vector<cplx> probe_points(const SpectrumReport& r) {
  std::vector<double> radii{0.0};
  for (int i = 1; i <= 16; ++i) radii.push_back(0.3 * i);
  for (const auto& [name, e] : r.entries()) {
    std::vector<const SpectralSet*> sets{&e->set};
    if (e->outer) sets.push_back(&*e->outer);
    for (const auto* s : sets)
      if (s->is_radial())
        for (const auto& [lo, hi] : s->modulus_intervals())
          for (double x : {lo, hi, 0.5 * (lo + hi)}) radii.push_back(x);
  }
  std::vector<cplx> pts;
  for (double rr : radii)
    for (int j = 0; j < 6; ++j) pts.push_back(std::polar(rr, 0.3 + j * oracle::kPi / 3));
  return pts;
}

bool same_entry(const SpectrumEntry& a, const SpectrumEntry& b) {
  return a.status == b.status && a.set.describe() == b.set.describe() &&
         a.outer.has_value() == b.outer.has_value() && (!a.outer || a.outer->describe() == b.outer->describe());
}

void collect_sets(const SpectralSet& s, std::vector<SpectralSet>& radial, std::vector<SpectralSet>& roots) {
  if (const auto* rp = std::get_if<region::RootPreimage>(&s.node())) {
    (void)rp;
    roots.push_back(s);
  } else if (const auto* un = std::get_if<region::Union>(&s.node())) {
    for (const auto& p : un->parts) collect_sets(p, radial, roots);
  }
  if (s.is_radial()) radial.push_back(s);
}

// Criterion 9.
Outcome properties() {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto ops = random_operators(rng, 50);
  std::vector<SpectrumReport> reports;
  std::vector<std::string> tags;
  for (const auto& op : ops) {
    reports.push_back(analyze_disc(op.map, op.w, op.opts));
    for (const auto& alt : reports.back().alternates) reports.push_back(alt);
  }
  for (const auto& r : reports)
    if (std::find(tags.begin(), tags.end(), r.case_tag) == tags.end()) tags.push_back(r.case_tag);

  // (ii) inclusion chain, (iii) sigma_ap = sigma_usf
  int chain_violations = 0, ap_violations = 0;
  for (const auto& r : reports) {
    if (!same_entry(r.sigma_ap, r.sigma_usf)) ++ap_violations;
    const SpectrumEntry* chain[] = {&r.sigma_sf, &r.sigma_usf, &r.sigma_f, &r.sigma_w};
    for (const cplx lam : probe_points(r)) {
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 4; ++j)
          if (chain[i]->membership(lam) == Membership::In && chain[j]->membership(lam) == Membership::Out)
            ++chain_violations;
    }
  }

  // (i) rotation invariance
  std::vector<SpectralSet> radial, roots;
  for (const auto& r : reports)
    for (const auto& [name, e] : r.entries()) {
      collect_sets(e->set, radial, roots);
      if (e->outer) collect_sets(*e->outer, radial, roots);
    }
  int rot_violations = 0;
  for (const auto& s : radial)
    for (int t = 0; t < 1000; ++t) {
      const cplx lam = std::polar(4.0 * u(rng), 2 * oracle::kPi * u(rng));
      const cplx turn = std::polar(1.0, 2 * oracle::kPi * u(rng));
      if (s.membership(lam) != s.membership(lam * turn)) ++rot_violations;
    }
  int root_violations = 0;
  for (const auto& s : roots) {
    const int m = std::get<region::RootPreimage>(s.node()).m;
    const cplx turn = std::polar(1.0, 2 * oracle::kPi / m);
    for (int t = 0; t < 100; ++t) {
      const cplx lam = std::polar(3.0 * u(rng), 2 * oracle::kPi * u(rng));
      if (s.membership(lam) != s.membership(lam * turn)) ++root_violations;
    }
  }

  // (iv) enclosure soundness on z^2 and z^3
  BlaschkeOptions bo;
  bo.n_max = 4;
  bo.p_max = 4;
  bo.samples = 64;
  bo.certify.max_cells = 2048;
  int sound_violations = 0;
  for (int t = 0; t < 1000; ++t) {
    const auto c = oracle::random_poly(rng, 1 + t % 3);
    const auto e = endomorphism_bounds(WeightPoly(c), BlaschkeProduct::monomial(2 + t % 2), bo);
    if (!(e.rho.lower <= e.rho.upper * (1 + 1e-12))) ++sound_violations;
    if (!(e.rho_min.lower <= e.rho_min.upper * (1 + 1e-12))) ++sound_violations;
  }

  // (v) dual-path quadrature
  int quad_violations = 0;
  double worst = 0.0;
  for (int t = 0; t < 200; ++t) {
    const int deg = 1 + static_cast<int>(12 * u(rng));
    std::vector<cplx> rs;
    for (int k = 0; k < deg; ++k) rs.push_back(oracle::random_root(rng, static_cast<int>(3 * u(rng))));
    const WeightPoly w(oracle::poly_from_roots(rs, std::polar(0.5 + u(rng), 1.0)));
    const cplx z0 = std::polar(0.9 * u(rng), 2 * oracle::kPi * u(rng));
    const double a = poisson_log_integral_closed_form(w, z0).value;
    const double b = poisson_log_integral_numeric(w, z0).value;
    const double gap = std::abs(a - b);
    worst = std::max(worst, gap);
    if (!(gap <= 1e-8)) ++quad_violations;
  }

  const bool ok = chain_violations == 0 && ap_violations == 0 && rot_violations == 0 && root_violations == 0 &&
                  sound_violations == 0 && quad_violations == 0 && !roots.empty();
  return {ok, "(i) " + std::to_string(radial.size()) + " radial sets " + std::to_string(rot_violations) +
                  " violations, " + std::to_string(roots.size()) + " root-preimage sets " +
                  std::to_string(root_violations) + " violations; (ii) " + std::to_string(reports.size()) +
                  " reports over " + std::to_string(tags.size()) + " case tags, " +
                  std::to_string(chain_violations) + " chain violations; (iii) " + std::to_string(ap_violations) +
                  " ap/usf mismatches; (iv) " + std::to_string(sound_violations) + " unsound enclosures; (v) " +
                  std::to_string(quad_violations) + " disagreements, worst gap " + format_real(worst, 3)};
}

}  // namespace

int main() {
  report(1, "hyperbolic annulus", hyperbolic);
  report(2, "parabolic circle", parabolic);
  report(3, "irrational rotation radius", elliptic_irrational);
  report(4, "zero at the interior fixed point", elliptic_singular);
  report(5, "rational rotation phi = -z", elliptic_rational);
  report(6, "Blaschke T1 enclosure", blaschke_t1);
  report(7, "Blaschke T2 cited radius", blaschke_t2);
  report(8, "polydisc circle", polydisc);
  report(9, "property suites", properties);
  std::printf("%s: %d of 9 criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
