#include "fmmbound/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "tables.hpp"

namespace fmmbound {

namespace detail {

const std::vector<double>& pascal_rows() {
  static const std::vector<double> rows = [] {
    std::vector<double> out(static_cast<std::size_t>(kTableDegree + 1) * (kTableDegree + 2) / 2);
    auto at = [&](int n, int k) -> double& {
      return out[static_cast<std::size_t>(n) * (n + 1) / 2 + k];
    };
    for (int n = 0; n <= kTableDegree; ++n) {
      at(n, 0) = at(n, n) = 1.0;
      for (int k = 1; k < n; ++k) at(n, k) = at(n - 1, k - 1) + at(n - 1, k);
    }
    return out;
  }();
  return rows;
}

namespace {

// sqrt((2n+1)/(4pi) (n-m)!/(n+m)!) as a running product of k^{-1/2} so that
// no factorial is ever formed.
double norm_const_direct(int n, int m) {
  const int am = m < 0 ? -m : m;
  double ratio_sqrt = 1.0;
  for (int k = n - am + 1; k <= n + am; ++k) ratio_sqrt /= std::sqrt(static_cast<double>(k));
  if (m < 0) ratio_sqrt = 1.0 / ratio_sqrt;
  return std::sqrt((2.0 * n + 1.0) / kFourPi) * ratio_sqrt;
}

}  // namespace

const std::vector<double>& norm_table() {
  static const std::vector<double> table = [] {
    std::vector<double> out(harmonic_count(kTableDegree));
    for (int n = 0; n <= kTableDegree; ++n)
      for (int m = -n; m <= n; ++m) out[harmonic_offset(n, m)] = norm_const_direct(n, m);
    return out;
  }();
  return table;
}

}  // namespace detail

namespace {

double checked_cosine(double t, const char* what) {
  if (!(std::abs(t) <= 1.0 + 1e-12)) throw DomainError(std::string(what) + ": |t| > 1");
  return std::clamp(t, -1.0, 1.0);
}

}  // namespace

double legendre_p(int n, double t) {
  if (n < 0) throw IndexError("legendre_p: negative degree");
  t = checked_cosine(t, "legendre_p");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = t;
  for (int k = 2; k <= n; ++k) {
    const double next = ((2.0 * k - 1.0) * t * cur - (k - 1.0) * prev) / k;
    prev = cur;
    cur = next;
  }
  return cur;
}

double assoc_legendre(int n, int m, double t) {
  if (m < 0 || m > n) throw IndexError("assoc_legendre: require 0 <= m <= n");
  if (n > 2 * kMaxDegree) throw DomainError("assoc_legendre: degree too large");
  t = checked_cosine(t, "assoc_legendre");
  const double s = std::sqrt((1.0 - t) * (1.0 + t));
  double pmm = 1.0;
  for (int k = 1; k <= m; ++k) pmm *= -(2.0 * k - 1.0) * s;
  if (n == m) return pmm;
  double prev = pmm;
  double cur = (2.0 * m + 1.0) * t * pmm;
  for (int k = m + 2; k <= n; ++k) {
    const double next = ((2.0 * k - 1.0) * t * cur - (k + m - 1.0) * prev) / (k - m);
    prev = cur;
    cur = next;
  }
  return cur;
}

double norm_const_a(int n, int m) {
  if (n < 0 || m < -n || m > n) throw IndexError("norm_const_a: require |m| <= n");
  if (n > detail::kTableDegree) throw DomainError("norm_const_a: degree too large");
  return detail::a_fast(n, m);
}

double binom(int n, int k) {
  if (n < 0 || n > detail::kTableDegree) throw DomainError("binom: require 0 <= n <= 256");
  return detail::binom_fast(n, k);
}

CoefficientTable sph_harm_table(int order, const Vec3& v) {
  if (order < 0) throw IndexError("sph_harm_table: negative order");
  CoefficientTable out(order);
  const double r = norm(v);
  double t = 1.0;
  double s = 0.0;
  complex phase{1.0, 0.0};
  if (r > 0.0) {
    t = std::clamp(v.z / r, -1.0, 1.0);
    const double rho = std::hypot(v.x, v.y);
    s = rho / r;
    if (rho > 0.0) phase = complex{v.x / rho, v.y / rho};
  }

  // Normalized Ferrers functions Pbar_n^m = A_n^m P_n^m, m >= 0.
  double pmm = 1.0 / std::sqrt(kFourPi);
  complex eim{1.0, 0.0};
  for (int m = 0; m <= order; ++m) {
    if (m > 0) {
      pmm *= -std::sqrt((2.0 * m + 1.0) / (2.0 * m)) * s;
      eim *= phase;
    }
    double prev = 0.0;
    double cur = pmm;
    for (int n = m; n <= order; ++n) {
      if (n == m + 1) {
        prev = cur;
        cur = std::sqrt(2.0 * m + 3.0) * t * pmm;
      } else if (n > m + 1) {
        const double nn = n, mm = m;
        const double a = std::sqrt((4.0 * nn * nn - 1.0) / (nn * nn - mm * mm));
        const double b =
            std::sqrt(((nn - 1.0) * (nn - 1.0) - mm * mm) / (4.0 * (nn - 1.0) * (nn - 1.0) - 1.0));
        const double next = a * (t * cur - b * prev);
        prev = cur;
        cur = next;
      }
      const complex y = cur * eim;
      out[harmonic_offset(n, m)] = y;
      if (m > 0) out[harmonic_offset(n, -m)] = (m % 2 == 0 ? 1.0 : -1.0) * std::conj(y);
    }
  }
  return out;
}

complex sph_harm(HarmonicIndex idx, const Vec3& xi) {
  if (!is_finite(xi) || std::abs(norm(xi) - 1.0) > 1e-12)
    throw DomainError("sph_harm: argument is not a unit vector");
  return sph_harm_table(idx.n, xi)[harmonic_offset(idx.n, idx.m)];
}

CoefficientTable regular_solid_table(int order, const Vec3& x) {
  CoefficientTable out = sph_harm_table(order, x);
  const double r = norm(x);
  double rn = 1.0;
  for (int n = 0; n <= order; ++n) {
    for (int m = -n; m <= n; ++m) out[harmonic_offset(n, m)] *= rn;
    rn *= r;
  }
  return out;
}

CoefficientTable irregular_solid_table(int order, const Vec3& x) {
  const double r = norm(x);
  if (!(r > 0.0)) throw SingularityError("irregular_solid: evaluation at the origin");
  CoefficientTable out = sph_harm_table(order, x);
  const double inv = 1.0 / r;
  double rn = inv;
  for (int n = 0; n <= order; ++n) {
    for (int m = -n; m <= n; ++m) out[harmonic_offset(n, m)] *= rn;
    rn *= inv;
  }
  return out;
}

complex regular_solid(HarmonicIndex idx, const Vec3& x) {
  return regular_solid_table(idx.n, x)[harmonic_offset(idx.n, idx.m)];
}

complex irregular_solid(HarmonicIndex idx, const Vec3& x) {
  return irregular_solid_table(idx.n, x)[harmonic_offset(idx.n, idx.m)];
}

double poisson_kernel(double r, double t) {
  if (!(std::abs(r) < 1.0)) throw DomainError("poisson_kernel: require |r| < 1");
  t = checked_cosine(t, "poisson_kernel");
  const double d = 1.0 + r * r - 2.0 * r * t;
  return (1.0 - r * r) / (kFourPi * d * std::sqrt(d));
}

double poisson_kernel_series(double r, double t, int terms) {
  if (!(std::abs(r) < 1.0)) throw DomainError("poisson_kernel_series: require |r| < 1");
  if (terms < 0) throw IndexError("poisson_kernel_series: negative term count");
  t = checked_cosine(t, "poisson_kernel_series");
  double sum = 1.0;
  double prev = 1.0;
  double cur = t;
  double rn = 1.0;
  for (int n = 1; n <= terms; ++n) {
    rn *= r;
    if (n > 1) {
      const double next = ((2.0 * n - 1.0) * t * cur - (n - 1.0) * prev) / n;
      prev = cur;
      cur = next;
    }
    sum += (2.0 * n + 1.0) * rn * cur;
  }
  return sum / kFourPi;
}

}  // namespace fmmbound
