#include <doctest.h>

#include "oracles.hpp"
#include "wco/polydisc.hpp"

using namespace wco;

namespace {

const std::vector<double> kIndependent{std::sqrt(2.0) - 1, std::sqrt(3.0) - 1};

TorusRotation declared() {
  return TorusRotation::from_gammas_over_pi(kIndependent, TorusRotation::Independence::Declared);
}

}  // namespace

TEST_CASE("rotation multipliers come from gamma / pi") {
  const auto r = TorusRotation::from_gammas_over_pi(std::vector<double>{0.5, 1.0},
                                                    TorusRotation::Independence::Unknown);
  CHECK(std::abs(r.alphas[0] - cplx(0, 1)) < 1e-15);
  CHECK(std::abs(r.alphas[1] - cplx(-1, 0)) < 1e-15);
  const std::vector<cplx> z{1.0, {0, 1}};
  const auto img = r(z);
  CHECK(std::abs(img[0] - cplx(0, 1)) < 1e-15);
  CHECK(std::abs(img[1] - cplx(0, -1)) < 1e-15);
  CHECK_THROWS_AS(TorusRotation({{2, 0}}, TorusRotation::Independence::Unknown), DegenerateInput);
}

TEST_CASE("integer relations among the angles") {
  // gamma = (pi/4, pi/2): 2 gamma_1 - gamma_2 = 0
  const auto dep = TorusRotation::from_gammas_over_pi(std::vector<double>{0.25, 0.5},
                                                      TorusRotation::Independence::Unknown);
  const auto res = check_independence(dep, 8);
  CHECK(res.kind == IndependenceResult::Kind::DependentWitness);
  CHECK(res.witness == std::vector<int>{2, -1});
  const auto ind = TorusRotation::from_gammas_over_pi(kIndependent, TorusRotation::Independence::Unknown);
  const auto ok = check_independence(ind, 8);
  CHECK(ok.kind == IndependenceResult::Kind::Independent);
  CHECK(ok.q_max == 8);
  CHECK(check_independence(declared(), 8).kind == IndependenceResult::Kind::Declared);
  // a rational angle is a relation with a single nonzero entry
  const auto rat = TorusRotation::from_gammas_over_pi(std::vector<double>{0.5, kIndependent[1]},
                                                      TorusRotation::Independence::Unknown);
  CHECK(check_independence(rat, 8).witness == std::vector<int>{4, 0});
}

TEST_CASE("torus zero scan") {
  const MultiPoly dom(2, {{{0, 0}, 6.0}, {{1, 0}, 1.0}, {{0, 1}, 1.0}});
  const auto a = scan_torus(dom);
  CHECK(a.status == TorusZeros::Nonvanishing);
  CHECK(a.certified_lower > 0.0);
  CHECK(a.certified_lower <= 4.0 + 1e-12);
  // 1 + z1 + z2 vanishes at z1 = e^{2 pi i/3}, z2 = e^{-2 pi i/3}
  const MultiPoly v(2, {{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{0, 1}, 1.0}});
  const auto b = scan_torus(v);
  CHECK(b.status == TorusZeros::Vanishes);
  REQUIRE(b.witness.size() == 2);
  const std::vector<cplx> z{std::polar(1.0, b.witness[0]), std::polar(1.0, b.witness[1])};
  CHECK(std::abs(v(z)) < 1e-8);
}

TEST_CASE("invertible weight: every spectrum is the circle of radius |w(0)|") {
  const MultiPoly w(2, {{{0, 0}, 6.0}, {{1, 0}, 1.0}, {{0, 1}, 1.0}});
  const auto r = analyze_polydisc(declared(), w);
  CHECK(r.case_tag == "torus_rotation.invertible");
  for (const auto& [name, e] : r.entries()) CHECK(e->set.describe() == "circle(r=6)");
  CHECK(r.rho == doctest::Approx(6.0));
  CHECK(r.rho_min == doctest::Approx(6.0));
  const auto checks = verify_polydisc(r, declared(), w);
  for (const auto& c : checks) CHECK_MESSAGE(c.verdict == Verdict::OK, c.name);
}

TEST_CASE("nonvanishing on the torus but not invertible") {
  // 0.5 + z1: no zero on the torus, a zero inside the polydisc; by Jensen the
  // log-mean over the torus is ln 1
  const MultiPoly w(2, {{{0, 0}, 0.5}, {{1, 0}, 1.0}});
  const auto r = analyze_polydisc(declared(), w);
  CHECK(r.case_tag == "torus_rotation.nonvanishing_on_torus");
  CHECK(r.rho == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(r.sigma.set.membership(0.999) == Membership::In);
  CHECK(r.sigma.set.membership(1.001) == Membership::Out);
  CHECK(r.sigma_sf.status == Knowledge::ContainsAtLeast);
  CHECK(r.sigma_sf.membership(1.0) == Membership::In);
}

TEST_CASE("vanishing on the torus gives disks") {
  const MultiPoly w(2, {{{0, 0}, 1.0}, {{1, 0}, 1.0}, {{0, 1}, 1.0}});
  const auto r = analyze_polydisc(declared(), w);
  CHECK(r.case_tag == "torus_rotation.vanishes_on_torus");
  // Mahler measure of 1 + x + y: m = 3 sqrt(3) L(chi_3, 2) / (4 pi) = 0.3230659472...
  CHECK(r.rho == doctest::Approx(std::exp(0.3230659472194505)).epsilon(1e-6));
  CHECK(std::holds_alternative<region::ClosedDisk>(r.sigma.set.node()));
}

TEST_CASE("dependent angles are rejected") {
  const auto dep = TorusRotation::from_gammas_over_pi(std::vector<double>{0.25, 0.5},
                                                      TorusRotation::Independence::Unknown);
  const MultiPoly w(2, {{{0, 0}, 6.0}, {{1, 0}, 1.0}});
  CHECK_THROWS_AS(analyze_polydisc(dep, w), UnsupportedConfiguration);
}
