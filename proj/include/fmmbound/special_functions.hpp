#pragma once

// Scalar building blocks: Legendre functions, orthonormal spherical
// harmonics (Ferrers P_n^m with the Condon-Shortley phase), solid harmonics,
// the Poisson kernel of the unit ball, and binomial coefficients.
//
// Conventions:
//   Y_n^m(xi)  = A_n^m e^{i m phi} P_n^m(cos theta),
//   A_n^m      = sqrt((2n+1)/(4 pi) (n-m)!/(n+m)!),
//   Y_n^{-m}   = (-1)^m conj(Y_n^m),
//   R_n^m(x)   = |x|^n Y_n^m(x/|x|),   I_n^m(x) = |x|^{-(n+1)} Y_n^m(x/|x|).

#include <numbers>

#include "fmmbound/coefficient_table.hpp"
#include "fmmbound/vec3.hpp"

namespace fmmbound {

/// Largest degree for which normalization constants are tabulated.
inline constexpr int kMaxDegree = 128;

inline constexpr double kFourPi = 4.0 * std::numbers::pi;

struct HarmonicIndex {
  int n = 0;
  int m = 0;

  constexpr HarmonicIndex() = default;
  constexpr HarmonicIndex(int degree, int order) : n(degree), m(order) {
    if (degree < 0 || order < -degree || order > degree)
      throw IndexError("HarmonicIndex: require 0 <= |m| <= n");
  }
};

/// Legendre polynomial P_n(t) by the three-term recurrence.
double legendre_p(int n, double t);

/// Ferrers associated Legendre function P_n^m(t), 0 <= m <= n, with the
/// Condon-Shortley phase.
double assoc_legendre(int n, int m, double t);

/// A_n^m for |m| <= n <= 2 * kMaxDegree.
double norm_const_a(int n, int m);

/// Binomial coefficient; 0 when k < 0 or k > n. Supports n <= 256.
double binom(int n, int k);

/// Y_n^m at a unit vector (renormalized internally; tolerance 1e-12).
complex sph_harm(HarmonicIndex idx, const Vec3& xi);

complex regular_solid(HarmonicIndex idx, const Vec3& x);

/// Throws SingularityError at the origin.
complex irregular_solid(HarmonicIndex idx, const Vec3& x);

/// All Y_n^m, n <= order, at the direction xi (any nonzero vector; the zero
/// vector is treated as the north pole).
CoefficientTable sph_harm_table(int order, const Vec3& xi);

/// All R_n^m(x), n <= order.
CoefficientTable regular_solid_table(int order, const Vec3& x);

/// All I_n^m(x), n <= order. Throws SingularityError at the origin.
CoefficientTable irregular_solid_table(int order, const Vec3& x);

/// Poisson kernel of the unit ball, (1/4pi)(1-r^2)/(1+r^2-2rt)^{3/2}.
double poisson_kernel(double r, double t);

/// Partial sum (1/4pi) sum_{n<=terms} (2n+1) r^n P_n(t).
double poisson_kernel_series(double r, double t, int terms);

}  // namespace fmmbound
