#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "pcsrk/errors.hpp"
#include "pcsrk/quad.hpp"

using namespace pcsrk;

TEST_CASE("gauss_legendre basic rules") {
  const auto& g1 = gauss_legendre(1);
  REQUIRE(g1.size() == 1);
  CHECK(g1.nodes(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g1.weights(0) == doctest::Approx(1.0).epsilon(1e-15));

  const auto& g2 = gauss_legendre(2);
  REQUIRE(g2.size() == 2);
  CHECK(g2.nodes(0) == doctest::Approx(0.5 - std::sqrt(3.0) / 6.0).epsilon(1e-15));
  CHECK(g2.nodes(1) == doctest::Approx(0.5 + std::sqrt(3.0) / 6.0).epsilon(1e-15));
  CHECK(g2.weights(0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(g2.weights(1) == doctest::Approx(0.5).epsilon(1e-15));
}

TEST_CASE("rules have positive ascending nodes and unit weight sum") {
  for (int n : {1, 2, 3, 5, 8, 13, 21, 32, 64}) {
    const auto& g = gauss_legendre(n);
    REQUIRE(g.size() == n);
    CHECK(g.weights.minCoeff() > 0.0);
    CHECK(std::fabs(g.weights.sum() - 1.0) <= 1e-14);
    CHECK(g.nodes(0) > 0.0);
    CHECK(g.nodes(n - 1) < 1.0);
    for (int i = 1; i < n; ++i) CHECK(g.nodes(i) > g.nodes(i - 1));
  }
}

TEST_CASE("degree 2n-1 exactness, and its sharpness") {
  for (int n : {1, 2, 5, 8}) {
    const auto& g = gauss_legendre(n);
    for (int k = 0; k <= 2 * n - 1; ++k) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += g.weights(i) * std::pow(g.nodes(i), k);
      CHECK(std::fabs(acc - 1.0 / (k + 1)) <= 1e-14);
    }
    // degree 2n fails: the rule order is sharp (skip n=8, error ~3.6e-10)
    if (n <= 5) {
      double acc = 0.0;
      for (int i = 0; i < n; ++i) acc += g.weights(i) * std::pow(g.nodes(i), 2 * n);
      CHECK(std::fabs(acc - 1.0 / (2 * n + 1)) > 1e-7);
    }
  }
}

TEST_CASE("rules are cached") {
  CHECK(&gauss_legendre(8) == &gauss_legendre(8));
  CHECK(&gauss_legendre(64) == &gauss_legendre(64));
}

TEST_CASE("gauss_legendre rejects out-of-range sizes") {
  CHECK_THROWS_AS(gauss_legendre(0), ConfigError);
  CHECK_THROWS_AS(gauss_legendre(-3), ConfigError);
  CHECK_THROWS_AS(gauss_legendre(65), ConfigError);
}

TEST_CASE("integrate_vec is exact on polynomial components") {
  auto f = [](double s) {
    Vec v(2);
    v << s * s * s, std::pow(s, 15);
    return v;
  };
  Vec r = integrate_vec(f, 1e-12);
  CHECK(std::fabs(r(0) - 0.25) <= 1e-14);
  CHECK(std::fabs(r(1) - 1.0 / 16.0) <= 1e-14);
}

TEST_CASE("integrate_vec on smooth transcendentals") {
  auto f = [](double s) {
    Vec v(2);
    v << std::exp(s), std::cos(s);
    return v;
  };
  Vec r = integrate_vec(f, 1e-12);
  CHECK(std::fabs(r(0) - (std::exp(1.0) - 1.0)) <= 1e-12);
  CHECK(std::fabs(r(1) - std::sin(1.0)) <= 1e-12);

  // independent of the starting panel size, up to the tolerance
  Vec r4 = integrate_vec(f, 1e-12, 4);
  Vec r16 = integrate_vec(f, 1e-12, 16);
  CHECK((r4 - r).cwiseAbs().maxCoeff() <= 2e-12);
  CHECK((r16 - r).cwiseAbs().maxCoeff() <= 2e-12);
}

TEST_CASE("integrate_vec is deterministic") {
  auto f = [](double s) {
    Vec v(1);
    v << std::sin(7.0 * s) * std::exp(-s);
    return v;
  };
  Vec a = integrate_vec(f, 1e-12);
  Vec b = integrate_vec(f, 1e-12);
  CHECK(a(0) == b(0));
}

TEST_CASE("near-singular integrand hits the node cap") {
  auto f = [](double s) {
    Vec v(1);
    v << 1.0 / (1.0000001 - s);
    return v;
  };
  double gap = 0.0;
  try {
    integrate_vec(f, 1e-12);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    gap = e.gap;
  }
  CHECK(gap > 1e-12);
}

TEST_CASE("tight tolerance with a low cap throws, looser cap succeeds") {
  auto f = [](double s) {
    Vec v(1);
    v << std::exp(3.0 * std::sin(5.0 * s));
    return v;
  };
  CHECK_THROWS_AS(integrate_vec(f, 1e-16, 8, 16), QuadratureError);
  CHECK_NOTHROW(integrate_vec(f, 1e-12, 8, 64));
}

TEST_CASE("integrate_vec rejects bad configs") {
  auto f = [](double) { return Vec::Zero(1); };
  CHECK_THROWS_AS(integrate_vec(f, 0.0), ConfigError);
  CHECK_THROWS_AS(integrate_vec(f, -1e-9), ConfigError);
  CHECK_THROWS_AS(integrate_vec(f, 1e-12, 8, 8), ConfigError);
}
