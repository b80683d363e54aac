#pragma once

#include <functional>
#include <vector>

#include "fmmbound/coefficient_table.hpp"
#include "fmmbound/vec3.hpp"

namespace fmmbound {

/// Nodes and weights of a 1D rule on [-1, 1].
struct LineRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Legendre rule with `count` points (Newton iteration from Chebyshev
/// guesses). Exact for polynomials of degree <= 2*count - 1.
LineRule gauss_legendre_rule(int count);

/// Rule on the unit sphere integrating every spherical harmonic of degree
/// <= exactness_degree exactly.
struct SphereRule {
  std::vector<Vec3> nodes;
  std::vector<double> weights;
  int exactness_degree = 0;

  std::size_t size() const { return nodes.size(); }
};

/// Tensor rule: ceil((d+1)/2) Gauss-Legendre points in cos(theta) times
/// d+1 equispaced azimuths.
SphereRule sphere_rule(int exactness_degree);

using SphereFunction = std::function<complex(const Vec3&)>;

/// Sum of w_i f(node_i).
complex integrate(const SphereRule& rule, const SphereFunction& f);

}  // namespace fmmbound
