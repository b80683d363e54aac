#pragma once

// Local and multipole expansions of Laplace potentials, formed either from
// point sources (closed form via the Laplace addition theorem) or from an
// arbitrary harmonic function by quadrature over a sphere.
//
// Local:      f(x) ~ sum_{n<=p} sum_m L_n^m R_n^m(x - c),  |x - c| <= radius
// Multipole:  f(x) ~ sum_{n<=p} sum_m M_n^m I_n^m(x - c),  |x - c| >= radius

#include <functional>
#include <optional>
#include <string_view>
#include <vector>

#include "fmmbound/coefficient_table.hpp"
#include "fmmbound/sphere_quadrature.hpp"
#include "fmmbound/vec3.hpp"

namespace fmmbound {

enum class ExpansionKind { local, multipole };

std::string_view to_string(ExpansionKind kind);
ExpansionKind expansion_kind_from_string(std::string_view s);

class Expansion {
 public:
  Expansion(ExpansionKind kind, const Vec3& center, double radius, CoefficientTable coefficients);

  ExpansionKind kind() const { return kind_; }
  const Vec3& center() const { return center_; }
  int order() const { return coefficients_.order(); }
  double radius() const { return radius_; }
  const CoefficientTable& coefficients() const { return coefficients_; }

  /// Whether x lies in the region where evaluation is permitted. Boundary
  /// points are admitted with a relative slack of 1e-12.
  bool contains(const Vec3& x) const;

 private:
  ExpansionKind kind_;
  Vec3 center_;
  double radius_;
  CoefficientTable coefficients_;
};

struct PointSources {
  std::vector<Vec3> positions;
  std::vector<double> weights;

  /// Throws DomainError on length mismatch or non-finite entries.
  void validate() const;
};

/// sum_i w_i / |target - s_i| (unit-strength kernel, no 1/(4 pi)).
double eval_point_potential(const PointSources& sources, const Vec3& target);

/// Local expansion of weight/|x - source| about `center`. Default validity
/// radius is 0.999 |source - center|.
Expansion s2l(const Vec3& source, double weight, const Vec3& center, int order,
              std::optional<double> radius = std::nullopt);

/// Multipole expansion of weight/|x - source| about `center`. Default validity
/// radius is max(1.001 |source - center|, 1e-30).
Expansion s2m(const Vec3& source, double weight, const Vec3& center, int order,
              std::optional<double> radius = std::nullopt);

using SpatialFunction = std::function<complex(const Vec3&)>;

/// L_n^m = radius^{-n} * integral of f(center + radius xi) conj(Y_n^m(xi)).
Expansion local_from_function(const SpatialFunction& f, const Vec3& center, double radius,
                              int order, const SphereRule& rule);

/// Same, choosing the rule automatically: degree 2p+16, doubled until the
/// scaled coefficients change by less than 1e-12 (relative). Throws
/// IterationError if degree 512 is reached first.
Expansion local_from_function(const SpatialFunction& f, const Vec3& center, double radius,
                              int order);

/// M_n^m = radius^{n+1} * integral of f(center + radius xi) conj(Y_n^m(xi)).
Expansion multipole_from_function(const SpatialFunction& f, const Vec3& center, double radius,
                                  int order, const SphereRule& rule);

Expansion multipole_from_function(const SpatialFunction& f, const Vec3& center, double radius,
                                  int order);

/// Truncated series at x. Throws GeometryError outside the validity region
/// and SingularityError for a multipole evaluated at its center.
complex eval_expansion(const Expansion& e, const Vec3& x);

/// Degree-p Fourier-Laplace partial sum of a function on the unit sphere.
class FourierLaplaceSeries {
 public:
  explicit FourierLaplaceSeries(CoefficientTable coefficients)
      : coefficients_(std::move(coefficients)) {}

  const CoefficientTable& coefficients() const { return coefficients_; }
  complex operator()(const Vec3& xi) const;

 private:
  CoefficientTable coefficients_;
};

FourierLaplaceSeries fourier_laplace_project(const SphereFunction& f, int order,
                                             const SphereRule& rule);

/// Lebesgue constant of the degree-p Fourier-Laplace projection,
/// 2 pi * int_{-1}^{1} |sum_{n<=p} (2n+1)/(4 pi) P_n(t)| dt.
double lebesgue_constant(int order, int panel_count = 64);

}  // namespace fmmbound
