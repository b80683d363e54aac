#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <numbers>
#include <random>

#include "fmmbound/special_functions.hpp"
#include "fmmbound/sphere_quadrature.hpp"

using namespace fmmbound;
using doctest::Approx;

TEST_CASE("gauss-legendre small rules") {
  const LineRule one = gauss_legendre_rule(1);
  REQUIRE(one.nodes.size() == 1);
  CHECK(std::abs(one.nodes[0]) < 1e-16);
  CHECK(one.weights[0] == Approx(2.0));

  const LineRule two = gauss_legendre_rule(2);
  // roots of P_2 = (3t^2 - 1)/2
  CHECK(std::abs(std::abs(two.nodes[0]) - 1 / std::sqrt(3.0)) < 1e-15);
  CHECK(std::abs(two.nodes[0] + two.nodes[1]) < 1e-15);
  CHECK(two.weights[0] == Approx(1.0));
  CHECK(two.weights[1] == Approx(1.0));
  double integral = 0.0;
  for (int i = 0; i < 2; ++i) integral += two.weights[i] * two.nodes[i] * two.nodes[i];
  CHECK(integral == Approx(2.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("gauss-legendre exactness and symmetry") {
  for (int count : {3, 7, 20, 64, 200, 512}) {
    const LineRule rule = gauss_legendre_rule(count);
    double total = 0.0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
      CHECK(rule.weights[i] > 0.0);
      CHECK(std::abs(rule.nodes[i] + rule.nodes[count - 1 - i]) < 1e-14);
      CHECK(std::abs(rule.weights[i] - rule.weights[count - 1 - i]) < 1e-14);
      total += rule.weights[i];
    }
    CHECK(total == Approx(2.0).epsilon(1e-13));
    for (int deg = 0; deg <= std::min(2 * count - 1, 60); deg += 2) {
      double s = 0.0;
      for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], deg);
      CHECK(s == Approx(2.0 / (deg + 1)).epsilon(1e-13));
    }
  }
}

TEST_CASE("sphere rule structure") {
  for (int d : {0, 1, 5, 12, 31}) {
    const SphereRule rule = sphere_rule(d);
    CHECK(rule.exactness_degree == d);
    CHECK(rule.size() == static_cast<std::size_t>(((d + 2) / 2) * (d + 1)));
    double total = 0.0;
    for (std::size_t i = 0; i < rule.size(); ++i) {
      CHECK(rule.weights[i] > 0.0);
      CHECK(std::abs(norm(rule.nodes[i]) - 1.0) < 1e-15);
      total += rule.weights[i];
    }
    CHECK(std::abs(total - 4 * std::numbers::pi) < 1e-12);
  }
}

TEST_CASE("sphere rule integrals") {
  CHECK(integrate(sphere_rule(0), [](const Vec3&) { return complex(1.0); }).real() ==
        Approx(4 * std::numbers::pi));
  const SphereRule r12 = sphere_rule(12);
  CHECK(std::abs(integrate(r12, [](const Vec3& x) { return sph_harm({5, 3}, x); })) < 1e-12);
  const complex y62 = integrate(r12, [](const Vec3& x) { return complex(std::norm(sph_harm({6, 2}, x))); });
  CHECK(std::abs(y62 - 1.0) < 1e-11);
  const SphereRule r5 = sphere_rule(5);
  CHECK(std::abs(integrate(r5, [](const Vec3& x) { return std::norm(sph_harm({2, 1}, x)); }) - 1.0) < 1e-12);
  CHECK(std::abs(integrate(r5, [](const Vec3& x) {
          return sph_harm({2, 1}, x) * std::conj(sph_harm({3, 1}, x));
        })) < 1e-11);
}

TEST_CASE("monte carlo cross-check of |Y_6^2|^2") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0), a(0.0, 2 * std::numbers::pi);
  const int count = 400000;
  double sum = 0.0;
  for (int i = 0; i < count; ++i) {
    const double z = u(rng), phi = a(rng), s = std::sqrt(1 - z * z);
    sum += std::norm(sph_harm({6, 2}, {s * std::cos(phi), s * std::sin(phi), z}));
  }
  CHECK(4 * std::numbers::pi * sum / count == Approx(1.0).epsilon(0.02));
}

TEST_CASE("orthonormality up to the exactness degree") {
  for (int d : {4, 9, 16}) {
    const SphereRule rule = sphere_rule(d);
    double worst = 0.0;
    for (int a = 0; a <= d; ++a)
      for (int b = 0; a + b <= d; ++b)
        for (int al = -a; al <= a; ++al)
          for (int be = -b; be <= b; ++be) {
            const complex v = integrate(rule, [&](const Vec3& x) {
              return sph_harm({a, al}, x) * std::conj(sph_harm({b, be}, x));
            });
            const double expect = (a == b && al == be) ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(v - expect));
          }
    CHECK(worst < 1e-11);
  }
}
