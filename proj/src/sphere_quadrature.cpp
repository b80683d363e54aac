#include "fmmbound/sphere_quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <utility>
#include <numbers>

#include "fmmbound/errors.hpp"

namespace fmmbound {

namespace {

// P_count(x) and its derivative.
std::pair<double, double> legendre_with_derivative(int count, double x) {
  double p0 = 1.0;
  double p1 = x;
  for (int k = 2; k <= count; ++k) {
    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
    p0 = p1;
    p1 = p2;
  }
  return {p1, count * (x * p1 - p0) / (x * x - 1.0)};
}

}  // namespace

LineRule gauss_legendre_rule(int count) {
  if (count < 1) throw DomainError("gauss_legendre_rule: count must be >= 1");
  LineRule rule;
  rule.nodes.assign(count, 0.0);
  rule.weights.assign(count, 0.0);
  for (int i = 0; i < (count + 1) / 2; ++i) {
    double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    bool converged = false;
    for (int iter = 0; iter < 100 && !converged; ++iter) {
      const auto [p, dp] = legendre_with_derivative(count, x);
      const double dx = p / dp;
      x -= dx;
      converged = std::abs(dx) <= 1e-14 * std::max(1.0, std::abs(x));
    }
    if (!converged) throw IterationError("gauss_legendre_rule: Newton iteration did not converge");
    {
      const auto [p, dp] = legendre_with_derivative(count, x);
      x -= p / dp;
    }
    const double dp = legendre_with_derivative(count, x).second;
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = -x;
    rule.nodes[count - 1 - i] = x;
    rule.weights[i] = rule.weights[count - 1 - i] = w;
  }
  if (count % 2 == 1) rule.nodes[count / 2] = 0.0;
  return rule;
}

SphereRule sphere_rule(int exactness_degree) {
  if (exactness_degree < 0) throw DomainError("sphere_rule: negative degree");
  const int polar = (exactness_degree + 2) / 2;
  const int azimuthal = exactness_degree + 1;
  const LineRule gl = gauss_legendre_rule(polar);
  SphereRule rule;
  rule.exactness_degree = exactness_degree;
  rule.nodes.reserve(static_cast<std::size_t>(polar) * azimuthal);
  rule.weights.reserve(rule.nodes.capacity());
  const double dphi = 2.0 * std::numbers::pi / azimuthal;
  for (int i = 0; i < polar; ++i) {
    const double t = gl.nodes[i];
    const double s = std::sqrt((1.0 - t) * (1.0 + t));
    for (int j = 0; j < azimuthal; ++j) {
      const double phi = dphi * j;
      rule.nodes.push_back({s * std::cos(phi), s * std::sin(phi), t});
      rule.weights.push_back(gl.weights[i] * dphi);
    }
  }
  return rule;
}

complex integrate(const SphereRule& rule, const SphereFunction& f) {
  complex sum{};
  for (std::size_t i = 0; i < rule.size(); ++i) sum += rule.weights[i] * f(rule.nodes[i]);
  return sum;
}

}  // namespace fmmbound
