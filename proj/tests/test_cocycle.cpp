#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "wco/cocycle.hpp"

using namespace wco;
using oracle::C;

TEST_CASE("log cocycle matches a direct orbit sum") {
  const auto f = MoebiusMap::from_coefficients(1.0, 0.5, 0.5, 1.0);
  const std::vector<C> c{{-2, 0}, {1, 0}};
  const CocycleProbe probe(f, WeightPoly(c), 40, 256);
  for (int k = 0; k < 16; ++k) {
    C z = std::polar(1.0, 0.37 * k);
    double s = 0.0;
    for (int j = 0; j < 40; ++j) {
      s += std::log(std::abs(oracle::poly(c, z)));
      z = oracle::mobius(1.0, 0.5, 0.5, 1.0, z);
    }
    CHECK(log_cocycle(probe, std::polar(1.0, 0.37 * k)) == doctest::Approx(s).epsilon(1e-10));
  }
}

TEST_CASE("log cocycle is -inf on a zero of the weight") {
  const CocycleProbe probe(MoebiusMap::rotation({0, 1}), WeightPoly({-1.0, 1.0}), 8, 64);
  CHECK(log_cocycle(probe, 1.0) == kNegInf);
}

TEST_CASE("pairwise summation is accurate") {
  PairwiseSum s;
  double naive = 0.0;
  for (int i = 0; i < 1000000; ++i) {
    s.add(0.1);
    naive += 0.1;
  }
  CHECK(std::abs(s.total() - 100000.0) < 1e-8);
  CHECK(std::abs(s.total() - 100000.0) <= std::abs(naive - 100000.0));
}

TEST_CASE("certified bounds bracket dense sampling") {
  std::mt19937_64 rng(41);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int trial = 0; trial < 12; ++trial) {
    const cplx a = std::polar(0.8 * u(rng), 2 * oracle::kPi * u(rng));
    const auto f = MoebiusMap::canonical(2 * oracle::kPi * u(rng), a);
    auto c = oracle::random_poly(rng, 3);
    c[0] += 4.0;  // keep the weight away from zero on the circle
    const int n = 12;
    const CocycleProbe probe(f, WeightPoly(c), n, 512);
    CertifyOptions opts;
    opts.eps = 1e-3;
    const auto up = rho_upper_certified(probe, opts);
    const auto lo = min_growth_lower_certified(probe, opts);
    const auto [hi_s, lo_s] = oracle::sampled_growth(
        c, [&](C z) { return oracle::mobius(f.a(), f.b(), f.c(), f.d(), z); }, n, 4096);
    CHECK(up.value >= hi_s * (1 - 1e-12));
    CHECK(lo.value <= lo_s * (1 + 1e-12));
    INFO("trial " << trial << " up.converged " << up.converged << " cells " << up.cells
                  << " lo.converged " << lo.converged << " cells " << lo.cells);
    CHECK(up.value <= hi_s * std::exp(2e-3) + 1e-9);
    CHECK(lo.value >= lo_s * std::exp(-2e-3) - 1e-9);
  }
}

TEST_CASE("certified bounds for an expanding Blaschke map") {
  const BlaschkeProduct b = BlaschkeProduct::monomial(2);
  const std::vector<C> c{{2, 0}, {0.5, 0.5}};
  const CocycleProbe probe(b, WeightPoly(c), 6, 256);
  const auto up = rho_upper_certified(probe);
  const auto lo = min_growth_lower_certified(probe);
  const auto [hi_s, lo_s] = oracle::sampled_growth(c, [](C z) { return z * z; }, 6, 8192);
  CHECK(up.value >= hi_s * (1 - 1e-12));
  CHECK(lo.value <= lo_s * (1 + 1e-12));
}

TEST_CASE("a zero on the circle gives a zero lower bound") {
  const CocycleProbe probe(MoebiusMap::from_coefficients(1.0, 0.5, 0.5, 1.0), WeightPoly({-1.0, 1.0}), 30, 256);
  CHECK(min_growth_lower_certified(probe).value == 0.0);
}

TEST_CASE("circle bounds") {
  const auto cb = certified_circle_bounds(WeightPoly({-2.0, 1.0}));
  CHECK(cb.sup >= 3.0);
  CHECK(cb.sup <= 3.0 + 1e-3);
  CHECK(cb.inf <= 1.0);
  CHECK(cb.inf >= 1.0 - 1e-3);
}

TEST_CASE("periodic geometric means") {
  const WeightPoly w({-2.0, 1.0});
  // phi = -z: orbit {1, -1} gives sqrt(|1 - 2| |-1 - 2|) = sqrt(3)
  const MoebiusMap f = MoebiusMap::rotation(-1.0);
  const std::vector<cplx> orb{1.0, -1.0};
  CHECK(rho_lower_periodic(w, f, orb) == doctest::Approx(std::sqrt(3.0)).epsilon(1e-14));
  const std::vector<cplx> broken{1.0, 0.5};
  CHECK_THROWS_AS(rho_lower_periodic(w, f, broken), DegenerateInput);
  // period-2 orbit of z^2 through the cube roots of unity; weight (1 - z)/2
  const BlaschkeProduct b = BlaschkeProduct::monomial(2);
  const cplx om = std::polar(1.0, 2 * oracle::kPi / 3);
  const std::vector<cplx> orb2{om, om * om};
  CHECK(rho_lower_periodic(WeightPoly({0.5, -0.5}), b, orb2) ==
        doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-13));
}

TEST_CASE("boundary orbits of Moebius maps") {
  const auto hyp = moebius_boundary_orbits(MoebiusMap::from_coefficients(1.0, 0.5, 0.5, 1.0), 64);
  REQUIRE(hyp.size() == 2);
  for (const auto& o : hyp) CHECK(o.size() == 1);
  const auto rot = moebius_boundary_orbits(MoebiusMap::rotation({0, 1}), 16);
  REQUIRE(!rot.empty());
  for (const auto& o : rot) CHECK(o.size() == 4);
}

TEST_CASE("enclosure tracker keeps the tightest bounds") {
  EnclosureTracker t;
  t.offer_upper(3.0, "a");
  t.offer_upper(2.5, "b");
  t.offer_upper(2.8, "c");
  t.offer_lower(1.0, "d");
  t.offer_lower(0.5, "e");
  CHECK(t.enclosure().upper == 2.5);
  CHECK(t.enclosure().upper_witness == "b");
  CHECK(t.enclosure().lower == 1.0);
  CHECK(t.enclosure().lower_witness == "d");
}
