#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "wco/moebius.hpp"

using namespace wco;
using oracle::C;

namespace {

MoebiusMap random_automorphism(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const cplx a = std::polar(0.95 * u(rng), 2 * oracle::kPi * u(rng));
  return MoebiusMap::canonical(2 * oracle::kPi * u(rng), a);
}

}  // namespace

TEST_CASE("classification strings for the reference maps") {
  const auto hyp = MoebiusMap::from_coefficients(1.0, 0.5, 0.5, 1.0);
  CHECK(describe(classify(hyp)) == "Hyperbolic ζ₁=1 (|φ′|=0.333333), ζ₂=-1 (|φ′|=3)");
  CHECK(describe(classify(MoebiusMap::identity())) == "Identity");
  CHECK(describe(classify(MoebiusMap::rotation({0.0, 1.0}))).rfind("EllipticRational m=4", 0) == 0);
  const auto par = MoebiusMap::from_coefficients({1, 1}, {0, -1}, {0, 1}, {1, -1});
  CHECK(class_name(classify(par)) == "Parabolic");
}

TEST_CASE("hyperbolic multipliers match the derivative at the fixed points") {
  const auto hyp = MoebiusMap::from_coefficients(1.0, 0.5, 0.5, 1.0);
  const auto cls = std::get<Hyperbolic>(classify(hyp));
  CHECK(std::abs(cls.zeta1 - cplx(1.0)) < 1e-12);
  CHECK(std::abs(cls.zeta2 - cplx(-1.0)) < 1e-12);
  // phi'(z) = (ad - bc) / (cz + d)^2 = 0.75 / (z/2 + 1)^2
  CHECK(cls.derivative1 == doctest::Approx(0.75 / 2.25).epsilon(1e-12));
  CHECK(cls.derivative2 == doctest::Approx(0.75 / 0.25).epsilon(1e-12));
}

TEST_CASE("rationality overrides and ambiguity") {
  const double theta = 2 * oracle::kPi * (std::sqrt(2.0) - 1.0);
  const auto rot = MoebiusMap::canonical(theta, 0.0);
  CHECK(class_name(classify(rot)) == "EllipticIrrational");
  RationalityOverride rat{RationalityOverride::Kind::DeclareRational, 5};
  CHECK_THROWS_AS(classify(rot, {}, rat), DegenerateInput);
  const auto five = MoebiusMap::canonical(2 * oracle::kPi / 5, 0.0);
  CHECK(std::get<EllipticRational>(classify(five, {}, rat)).m == 5);
  RationalityOverride irr{RationalityOverride::Kind::DeclareIrrational, 0};
  CHECK(class_name(classify(rot, {}, irr)) == "EllipticIrrational");
  // Order just above m_max: neither clearly rational nor clearly irrational.
  const auto near = MoebiusMap::canonical(2 * oracle::kPi / 97, 0.0);
  CHECK_THROWS_AS(classify(near), AmbiguousRationality);
}

TEST_CASE("invalid maps are rejected") {
  CHECK_THROWS_AS(MoebiusMap::from_coefficients(1.0, 2.0, 2.0, 4.0), DegenerateInput);
  CHECK_THROWS_AS(MoebiusMap::from_coefficients(2.0, 0.0, 0.0, 1.0), DegenerateInput);
  CHECK_THROWS_AS(fixed_points(MoebiusMap::identity()), IdentityMapError);
}

TEST_CASE("evaluation, composition, inverse and powers agree with brute force") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-0.9, 0.9);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_automorphism(rng);
    const auto g = random_automorphism(rng);
    const cplx z(u(rng) * 0.7, u(rng) * 0.7);
    const C fz = oracle::mobius(f.a(), f.b(), f.c(), f.d(), z);
    CHECK(std::abs(f(z) - fz) < 1e-12);
    CHECK(std::abs(compose(f, g)(z) - f(g(z))) < 1e-11);
    CHECK(std::abs(inverse(f)(f(z)) - z) < 1e-10);
    C p = z;
    for (int k = 0; k < 5; ++k) p = oracle::mobius(f.a(), f.b(), f.c(), f.d(), p);
    CHECK(std::abs(power(f, 5)(z) - p) < 1e-9);
    CHECK(std::abs(std::abs(f.determinant()) - 1.0) < 1e-12);
  }
}

TEST_CASE("automorphisms preserve the circle and fixed points are fixed") {
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> u(0.0, 2 * oracle::kPi);
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = random_automorphism(rng);
    const cplx z = std::polar(1.0, u(rng));
    CHECK(std::abs(std::abs(f(z)) - 1.0) < 1e-12);
    for (const auto& fp : fixed_points(f)) {
      const C w = oracle::mobius(f.a(), f.b(), f.c(), f.d(), fp.point);
      CHECK(std::abs(w - fp.point) < 1e-8 * std::max(1.0, std::abs(fp.point)));
    }
    // derivative against a central difference
    const cplx h = 1e-6;
    const cplx w0 = 0.3 * z;
    CHECK(std::abs(f.derivative(w0) - (f(w0 + h) - f(w0 - h)) / (2.0 * h)) < 1e-6);
  }
}

TEST_CASE("orbit follows repeated evaluation") {
  const auto f = MoebiusMap::canonical(0.7, {0.2, -0.1});
  const auto orb = orbit(f, {0.1, 0.2}, 10);
  REQUIRE(orb.size() == 11);
  for (int k = 0; k < 10; ++k) CHECK(std::abs(f(orb[k]) - orb[k + 1]) < 1e-13);
}
