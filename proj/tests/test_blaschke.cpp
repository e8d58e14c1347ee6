#include <doctest.h>

#include <random>
#include <set>

#include "oracles.hpp"
#include "wco/blaschke.hpp"

using namespace wco;
using oracle::C;

TEST_CASE("Blaschke products map the circle to itself") {
  const BlaschkeProduct b({0.3, {0, -0.5}, {0.2, 0.2}}, std::polar(1.0, 0.4));
  for (int k = 0; k < 64; ++k) {
    const cplx z = std::polar(1.0, 0.1 * k);
    CHECK(std::abs(std::abs(b(z)) - 1.0) < 1e-14);
    C p = std::polar(1.0, 0.4);
    for (const cplx& a : b.zeros()) p *= (z - a) / (1.0 - std::conj(a) * z);
    CHECK(std::abs(b(z) - p) < 1e-14);
  }
  CHECK(BlaschkeProduct::monomial(3).is_monomial());
  CHECK(!b.is_monomial());
  CHECK_THROWS_AS(BlaschkeProduct({1.5}), DegenerateInput);
}

TEST_CASE("boundary iteration of the doubling map") {
  const auto t = boundary_iterate(BlaschkeProduct::monomial(2), 0.3, 5);
  REQUIRE(t.size() == 6);
  for (int k = 0; k < 5; ++k) {
    const double expect = std::fmod(2 * t[k], 2 * oracle::kPi);
    CHECK(std::abs(t[k + 1] - expect) < 1e-12);
  }
}

TEST_CASE("periodic points of monomials: counts and closure") {
  for (int d : {2, 3}) {
    for (int p = 1; p <= 6; ++p) {
      const auto s = periodic_points(BlaschkeProduct::monomial(d), p);
      CHECK(s.complete);
      long long points = 0;
      for (const auto& orb : s.orbits) {
        CHECK(orb.size() == static_cast<std::size_t>(p));
        points += static_cast<long long>(orb.size());
        for (std::size_t i = 0; i < orb.size(); ++i) {
          C z = orb[i];
          for (int j = 0; j < d - 1; ++j) z *= orb[i];
          CHECK(std::abs(z - orb[(i + 1) % orb.size()]) < 1e-12);
        }
      }
      CHECK(points == oracle::exact_period_count(d, p));
    }
  }
}

TEST_CASE("periodic points of a general product satisfy the orbit relation") {
  const BlaschkeProduct b({0.0, 0.3});
  for (int p = 1; p <= 4; ++p) {
    const auto s = periodic_points(b, p);
    long long points = 0;
    std::set<std::pair<long long, long long>> seen;
    for (const auto& orb : s.orbits) {
      points += static_cast<long long>(orb.size());
      for (std::size_t i = 0; i < orb.size(); ++i) {
        CHECK(std::abs(b(orb[i]) - orb[(i + 1) % orb.size()]) < 1e-12);
        seen.insert({std::llround(orb[i].real() * 1e8), std::llround(orb[i].imag() * 1e8)});
      }
    }
    // a degree-2 circle cover has exactly 2^p - 1 fixed points of B^p, counted by period
    CHECK(points == oracle::exact_period_count(2, p));
    CHECK(seen.size() == static_cast<std::size_t>(points));
  }
}

TEST_CASE("enclosures for the reference endomorphisms") {
  const BlaschkeProduct b = BlaschkeProduct::monomial(2);
  const auto t1 = endomorphism_bounds(WeightPoly({0.5, 0.5}), b);
  CHECK(t1.rho.lower == 1.0);
  CHECK(t1.rho.upper == 1.0);
  const auto t2 = endomorphism_bounds(WeightPoly({0.5, -0.5}), b);
  CHECK(std::abs(t2.rho.lower - std::sqrt(3.0) / 2) < 1e-12);
  CHECK(t2.rho.upper >= t2.rho.lower);
  CHECK(t2.rho.upper < 0.9);
}

TEST_CASE("enclosure soundness on random weights") {
  std::mt19937_64 rng(71);
  BlaschkeOptions opts;
  opts.n_max = 8;
  opts.p_max = 5;
  opts.samples = 128;
  opts.certify.max_cells = 1 << 14;
  for (int t = 0; t < 30; ++t) {
    const auto c = oracle::random_poly(rng, 1 + t % 4);
    const auto e = endomorphism_bounds(WeightPoly(c), BlaschkeProduct::monomial(2 + t % 2), opts);
    CHECK(e.rho.lower <= e.rho.upper * (1 + 1e-12));
    CHECK(e.rho_min.lower <= e.rho_min.upper * (1 + 1e-12));
  }
}

TEST_CASE("report for T2 flags the cited radius") {
  BlaschkeOptions opts;
  opts.cited_rho = 0.5;
  const auto r = analyze_endomorphism(WeightPoly({0.5, -0.5}), BlaschkeProduct::monomial(2), opts);
  CHECK(r.case_tag == "blaschke_endomorphism");
  CHECK(r.sigma.status == Knowledge::ContainsAtLeast);
  const auto checks = verify_endomorphism(r, opts);
  bool flagged = false;
  for (const auto& c : checks)
    if (c.name == "rho.cited") flagged = c.verdict == Verdict::FLAG;
  CHECK(flagged);
}

TEST_CASE("constant weights are outside the covered cases") {
  const auto r = analyze_endomorphism(WeightPoly::constant(2.0), BlaschkeProduct::monomial(2));
  CHECK(r.case_tag == kNotCovered);
  CHECK(r.sigma.set.describe() == "disk(r=2)");
  CHECK(r.sigma_ap.status == Knowledge::Unknown);
}
