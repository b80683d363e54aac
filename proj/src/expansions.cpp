#include "fmmbound/expansions.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fmmbound/errors.hpp"
#include "fmmbound/special_functions.hpp"

namespace fmmbound {

std::string_view to_string(ExpansionKind kind) {
  return kind == ExpansionKind::local ? "local" : "multipole";
}

ExpansionKind expansion_kind_from_string(std::string_view s) {
  if (s == "local") return ExpansionKind::local;
  if (s == "multipole") return ExpansionKind::multipole;
  throw ConfigError("unknown expansion kind '" + std::string(s) + "'");
}

Expansion::Expansion(ExpansionKind kind, const Vec3& center, double radius,
                     CoefficientTable coefficients)
    : kind_(kind), center_(center), radius_(radius), coefficients_(std::move(coefficients)) {
  if (!is_finite(center_)) throw DomainError("Expansion: non-finite center");
  if (!(radius_ > 0.0) || !std::isfinite(radius_))
    throw GeometryError("Expansion: radius must be positive and finite");
  for (const complex& v : coefficients_.values())
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw DomainError("Expansion: non-finite coefficient");
}

bool Expansion::contains(const Vec3& x) const {
  const double d = norm(x - center_);
  if (kind_ == ExpansionKind::local) return d <= radius_ * (1.0 + 1e-12);
  return d > 0.0 && d >= radius_ * (1.0 - 1e-12);
}

void PointSources::validate() const {
  if (positions.size() != weights.size())
    throw DomainError("PointSources: positions and weights differ in length");
  for (std::size_t i = 0; i < positions.size(); ++i)
    if (!is_finite(positions[i]) || !std::isfinite(weights[i]))
      throw DomainError("PointSources: non-finite entry");
}

double eval_point_potential(const PointSources& sources, const Vec3& target) {
  sources.validate();
  double sum = 0.0;
  for (std::size_t i = 0; i < sources.positions.size(); ++i) {
    const double d = norm(target - sources.positions[i]);
    if (d == 0.0) throw SingularityError("eval_point_potential: target coincides with a source");
    sum += sources.weights[i] / d;
  }
  return sum;
}

Expansion s2l(const Vec3& source, double weight, const Vec3& center, int order,
              std::optional<double> radius) {
  const Vec3 d = source - center;
  const double dist = norm(d);
  if (dist == 0.0) throw SingularityError("s2l: source coincides with the expansion center");
  const double rho = radius.value_or(0.999 * dist);
  if (!(rho < dist)) throw GeometryError("s2l: validity radius must be below the source distance");

  CoefficientTable coeffs = irregular_solid_table(order, d);
  for (int n = 0; n <= order; ++n) {
    const double scale = weight * kFourPi / (2.0 * n + 1.0);
    for (int m = -n; m <= n; ++m) {
      complex& c = coeffs[harmonic_offset(n, m)];
      c = scale * std::conj(c);
    }
  }
  return Expansion(ExpansionKind::local, center, rho, std::move(coeffs));
}

Expansion s2m(const Vec3& source, double weight, const Vec3& center, int order,
              std::optional<double> radius) {
  const Vec3 d = source - center;
  const double dist = norm(d);
  const double rho = radius.value_or(std::max(1.001 * dist, 1e-30));
  if (!(rho >= dist)) throw GeometryError("s2m: validity radius must enclose the source");

  CoefficientTable coeffs = regular_solid_table(order, d);
  for (int n = 0; n <= order; ++n) {
    const double scale = weight * kFourPi / (2.0 * n + 1.0);
    for (int m = -n; m <= n; ++m) {
      complex& c = coeffs[harmonic_offset(n, m)];
      c = scale * std::conj(c);
    }
  }
  return Expansion(ExpansionKind::multipole, center, rho, std::move(coeffs));
}

namespace {

// Inner products <f(center + radius xi), Y_n^m>, n <= order.
CoefficientTable sphere_moments(const SpatialFunction& f, const Vec3& center, double radius,
                                int order, const SphereRule& rule) {
  CoefficientTable moments(order);
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const complex value = rule.weights[i] * f(center + radius * rule.nodes[i]);
    const CoefficientTable y = sph_harm_table(order, rule.nodes[i]);
    for (std::size_t k = 0; k < moments.size(); ++k) moments[k] += value * std::conj(y[k]);
  }
  return moments;
}

// Multiplies degree-n entries by base * step^n.
void scale_by_degree(CoefficientTable& table, double base, double step) {
  double s = base;
  for (int n = 0; n <= table.order(); ++n) {
    for (int m = -n; m <= n; ++m) table[harmonic_offset(n, m)] *= s;
    s *= step;
  }
}

void check_radius(double radius, const char* what) {
  if (!(radius > 0.0) || !std::isfinite(radius))
    throw GeometryError(std::string(what) + ": radius must be positive");
}

// Doubles the rule degree until the radius-scaled moments settle.
CoefficientTable converged_moments(const SpatialFunction& f, const Vec3& center, double radius,
                                   int order) {
  int degree = 2 * order + 16;
  CoefficientTable current = sphere_moments(f, center, radius, order, sphere_rule(degree));
  while (true) {
    degree *= 2;
    if (degree > 512)
      throw IterationError("sphere quadrature did not converge below degree 512");
    CoefficientTable refined = sphere_moments(f, center, radius, order, sphere_rule(degree));
    double scale = 0.0;
    double change = 0.0;
    for (std::size_t k = 0; k < refined.size(); ++k) {
      scale = std::max(scale, std::abs(refined[k]));
      change = std::max(change, std::abs(refined[k] - current[k]));
    }
    current = std::move(refined);
    if (change <= 1e-12 * scale) return current;
  }
}

}  // namespace

Expansion local_from_function(const SpatialFunction& f, const Vec3& center, double radius,
                              int order, const SphereRule& rule) {
  check_radius(radius, "local_from_function");
  CoefficientTable coeffs = sphere_moments(f, center, radius, order, rule);
  scale_by_degree(coeffs, 1.0, 1.0 / radius);
  return Expansion(ExpansionKind::local, center, radius, std::move(coeffs));
}

Expansion local_from_function(const SpatialFunction& f, const Vec3& center, double radius,
                              int order) {
  check_radius(radius, "local_from_function");
  CoefficientTable coeffs = converged_moments(f, center, radius, order);
  scale_by_degree(coeffs, 1.0, 1.0 / radius);
  return Expansion(ExpansionKind::local, center, radius, std::move(coeffs));
}

Expansion multipole_from_function(const SpatialFunction& f, const Vec3& center, double radius,
                                  int order, const SphereRule& rule) {
  check_radius(radius, "multipole_from_function");
  CoefficientTable coeffs = sphere_moments(f, center, radius, order, rule);
  scale_by_degree(coeffs, radius, radius);
  return Expansion(ExpansionKind::multipole, center, radius, std::move(coeffs));
}

Expansion multipole_from_function(const SpatialFunction& f, const Vec3& center, double radius,
                                  int order) {
  check_radius(radius, "multipole_from_function");
  CoefficientTable coeffs = converged_moments(f, center, radius, order);
  scale_by_degree(coeffs, radius, radius);
  return Expansion(ExpansionKind::multipole, center, radius, std::move(coeffs));
}

complex eval_expansion(const Expansion& e, const Vec3& x) {
  const Vec3 d = x - e.center();
  if (e.kind() == ExpansionKind::multipole && norm(d) == 0.0)
    throw SingularityError("eval_expansion: multipole evaluated at its center");
  if (!e.contains(x)) throw GeometryError("eval_expansion: point outside the validity region");

  const CoefficientTable basis = e.kind() == ExpansionKind::local
                                     ? regular_solid_table(e.order(), d)
                                     : irregular_solid_table(e.order(), d);
  const CoefficientTable& c = e.coefficients();
  complex sum{};
  for (std::size_t k = 0; k < c.size(); ++k) sum += c[k] * basis[k];
  return sum;
}

complex FourierLaplaceSeries::operator()(const Vec3& xi) const {
  const CoefficientTable y = sph_harm_table(coefficients_.order(), xi);
  complex sum{};
  for (std::size_t k = 0; k < y.size(); ++k) sum += coefficients_[k] * y[k];
  return sum;
}

FourierLaplaceSeries fourier_laplace_project(const SphereFunction& f, int order,
                                             const SphereRule& rule) {
  return FourierLaplaceSeries(sphere_moments(f, Vec3{}, 1.0, order, rule));
}

namespace {

// Zonal projection kernel sum_{n<=p} (2n+1)/(4 pi) P_n(t).
double projection_kernel(int order, double t) {
  double sum = 1.0;
  double prev = 1.0;
  double cur = t;
  for (int n = 1; n <= order; ++n) {
    if (n > 1) {
      const double next = ((2.0 * n - 1.0) * t * cur - (n - 1.0) * prev) / n;
      prev = cur;
      cur = next;
    }
    sum += (2.0 * n + 1.0) * cur;
  }
  return sum / kFourPi;
}

}  // namespace

double lebesgue_constant(int order, int panel_count) {
  if (order < 0) throw IndexError("lebesgue_constant: negative order");
  if (panel_count < 64) throw DomainError("lebesgue_constant: panel_count must be >= 64");

  // The kernel is a degree-p polynomial, so a Gauss rule with p/2+1 points is
  // exact on every sub-panel on which it keeps one sign. Panels are uniform
  // in theta, where the kernel's roots are roughly equispaced.
  const LineRule gl = gauss_legendre_rule(order / 2 + 1);
  const int panels = std::max(panel_count, 16 * (order + 1));
  auto integrate_abs = [&](double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    double sum = 0.0;
    for (std::size_t i = 0; i < gl.nodes.size(); ++i)
      sum += gl.weights[i] * projection_kernel(order, mid + half * gl.nodes[i]);
    return std::abs(sum * half);
  };

  double total = 0.0;
  double t_hi = 1.0;
  double k_hi = projection_kernel(order, t_hi);
  for (int j = 1; j <= panels; ++j) {
    const double t_lo = j == panels ? -1.0 : std::cos(std::numbers::pi * j / panels);
    const double k_lo = projection_kernel(order, t_lo);
    if ((k_lo < 0.0 && k_hi > 0.0) || (k_lo > 0.0 && k_hi < 0.0)) {
      double a = t_lo, b = t_hi, ka = k_lo;
      for (int it = 0; it < 200 && b - a > 1e-16 * std::max(1.0, std::abs(a)); ++it) {
        const double mid = 0.5 * (a + b);
        if (mid <= a || mid >= b) break;
        const double km = projection_kernel(order, mid);
        if ((km < 0.0) == (ka < 0.0)) {
          a = mid;
          ka = km;
        } else {
          b = mid;
        }
      }
      const double root = 0.5 * (a + b);
      total += integrate_abs(t_lo, root) + integrate_abs(root, t_hi);
    } else {
      total += integrate_abs(t_lo, t_hi);
    }
    t_hi = t_lo;
    k_hi = k_lo;
  }
  return 2.0 * std::numbers::pi * total;
}

}  // namespace fmmbound
