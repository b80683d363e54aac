#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>

#include "fmmbound/bounds.hpp"
#include "fmmbound/errors.hpp"
#include "fmmbound/verify.hpp"

using namespace fmmbound;
using doctest::Approx;

TEST_CASE("chain geometry validation") {
  CHECK_NOTHROW(ChainGeometry(2, 1));
  CHECK_THROWS_AS(ChainGeometry(1, 1), GeometryError);
  CHECK_THROWS_AS(ChainGeometry(1, 0), GeometryError);
  CHECK_THROWS_AS(ChainGeometry(2, 1, 2, 1.5), GeometryError);
  CHECK_NOTHROW(ChainGeometry(2, 1, 2.5, 1.5));
  CHECK_THROWS_AS(ChainGeometry(2, 1).second(), GeometryError);
}

TEST_CASE("growth lemma bounds") {
  const double k = 1 / std::sqrt(4 * std::numbers::pi);
  CHECK(bound_local_of_regular(0, {1, 2, 3}, {0, 1, 0}) == Approx(k));
  const Vec3 t{0.3, -0.4, 1.2};
  CHECK(bound_local_of_regular(5, {}, t) == Approx(std::sqrt(11.0) * k * std::pow(norm(t), 5)));
  CHECK(bound_local_of_regular(4, {1, 0, 0}, {1.5, 0, 0}) == Approx(std::sqrt(9 / (4 * std::numbers::pi)) * std::pow(1.5, 4)));

  const Vec3 c{0, 2, 0};
  CHECK(bound_local_of_irregular(3, c, c) == Approx(std::sqrt(7.0) * k * std::pow(2.0, -4)));
  CHECK(bound_local_of_irregular(0, c, {0, 3, 0}) == Approx(k));
  double prev = 0.0;
  for (double d = 0.0; d < 1.99; d += 0.1) {
    const double b = bound_local_of_irregular(4, c, c + Vec3{d, 0, 0});
    CHECK(b > prev);
    prev = b;
  }
  CHECK_THROWS_AS(bound_local_of_irregular(1, c, {0, 4, 0}), GeometryError);
}

TEST_CASE("single-stage chain bounds") {
  const ChainGeometry g(2, 1);
  CHECK(bound_chain_s2l2l(g, 3) == Approx(1.0 / (2 - 1) * std::pow(0.5, 4)));
  CHECK(bound_chain_s2l2l(g, 3) == 0.0625);
  CHECK(bound_chain_s2m2l(g, 3) == 0.0625);
  const ChainGeometry h(3.3, 1.1);
  for (int p = 0; p < 30; ++p)
    CHECK(bound_chain_s2l2l(h, p + 1) / bound_chain_s2l2l(h, p) == Approx(1.1 / 3.3).epsilon(1e-14));
  CHECK(bound_chain_s2l2l(ChainGeometry(2, 1e-300), 0) < 1e-299);
}

TEST_CASE("three-stage chain bound") {
  const ChainGeometry g(2, 1, 2, 1);
  CHECK(bound_chain_m2l2l(g, 3) == Approx(0.125));
  CHECK(bound_chain_m2l2l(g, 3) == Approx(2 * bound_chain_s2m2l(ChainGeometry(2, 1), 3)));
  const ChainGeometry a(3, 1, 2.5, 0.5);
  const ChainGeometry b(2.5, 0.5, 3, 1);
  CHECK(bound_chain_m2l2l(a, 4) == Approx(bound_chain_m2l2l(b, 4)));
  CHECK(bound_chain_m2l2l(a, 4) >= bound_chain_s2m2l(a, 4));
  // r' -> 0 with R' fixed leaves the first term
  const ChainGeometry tiny(3, 1e-12 + 0.5, 2.5, 1e-12);
  CHECK(bound_chain_m2l2l(tiny, 2) == Approx(bound_chain_s2m2l(tiny, 2)).epsilon(1e-9));
  CHECK_THROWS_AS(bound_chain_m2l2l(ChainGeometry(2, 1), 3), GeometryError);
}

TEST_CASE("chain bounds positive, decreasing, scale covariant") {
  const ChainGeometry g(3.7, 2.1, 2.9, 1.3);
  for (int p = 0; p < 40; ++p) {
    CHECK(bound_chain_m2l2l(g, p) > 0.0);
    CHECK(bound_chain_m2l2l(g, p + 1) < bound_chain_m2l2l(g, p));
    CHECK(bound_chain_s2l2l(g, p + 1) < bound_chain_s2l2l(g, p));
    for (double alpha : {0.01, 7.0}) {
      const ChainGeometry s = g.scaled(alpha);
      CHECK(bound_chain_s2l2l(s, p) * alpha == Approx(bound_chain_s2l2l(g, p)).epsilon(1e-13));
      CHECK(bound_chain_m2l2l(s, p) * alpha == Approx(bound_chain_m2l2l(g, p)).epsilon(1e-13));
    }
  }
}

TEST_CASE("geometric tail underflow flag") {
  const BoundValue small = geometric_tail(2, 1, 2000);
  CHECK(small.underflow);
  CHECK(small.value < std::numeric_limits<double>::min());
  CHECK_FALSE(geometric_tail(2, 1, 10).underflow);
}

TEST_CASE("gigaqbx expression") {
  const double s3 = std::sqrt(3.0);
  auto oracle = [&](int p, double tf) {
    return std::max(1 / (3 - s3) * std::pow(s3 / 3, p + 1),
                    1 / (6 - 2 * s3 - s3 * tf) * std::pow(s3 * (1 + tf) / (6 - s3), p + 1));
  };
  CHECK(bound_gigaqbx({.p = 3, .t_f = 0.0}) == Approx(0.087631).epsilon(1e-5));
  CHECK(bound_gigaqbx({.p = 3, .t_f = 0.0}) == Approx(oracle(3, 0.0)).epsilon(1e-14));
  CHECK(bound_gigaqbx({.p = 3, .t_f = 0.0, .A = 2, .M = 3, .R = 0.5}) == Approx(12 * oracle(3, 0.0)));
  for (int p : {0, 5, 20}) {
    double prev = 0.0;
    for (double tf = 0.0; tf < max_target_confinement(); tf += 0.05) {
      const double v = bound_gigaqbx({.p = p, .t_f = tf});
      CHECK(v >= prev);
      CHECK(v == Approx(oracle(p, tf)).epsilon(1e-13));
      prev = v;
    }
  }
  CHECK(bound_gigaqbx({.p = 2000, .t_f = 0.4}) < 1e-100);
  CHECK(max_target_confinement() == Approx(2 * s3 - 2));
  CHECK_THROWS_AS(bound_gigaqbx({.p = 3, .t_f = 1.5}), DomainError);
  CHECK_THROWS_AS(bound_gigaqbx({.p = 3, .t_f = -0.1}), DomainError);
}

TEST_CASE("lebesgue asymptotic") {
  CHECK(lebesgue_asymptotic(1) == Approx(std::sqrt(8 / std::numbers::pi)));
  CHECK(lebesgue_asymptotic(1) == Approx(1.5958).epsilon(1e-4));
  CHECK(lebesgue_asymptotic(4) / lebesgue_asymptotic(1) == Approx(2.0));
  CHECK_THROWS_AS(lebesgue_asymptotic(0), DomainError);
}

TEST_CASE("growth lemmas hold on random configurations") {
  const PropertyResult reg = check_lemma_regular(200, 20, 41);
  const PropertyResult irr = check_lemma_irregular(200, 20, 42);
  CHECK_MESSAGE(reg.passed, reg.worst);
  CHECK_MESSAGE(irr.passed, irr.worst);
}
