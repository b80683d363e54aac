#pragma once

// Closed-form acceleration-error bounds for the three translation chains of
// a single FMM level, the two solid-harmonic growth lemmas, and the GIGAQBX
// accuracy expression.

#include <optional>

#include "fmmbound/vec3.hpp"

namespace fmmbound {

/// Separation/radius pairs of a translation chain. The second stage is
/// present only for source -> multipole -> local -> local, where the
/// compatibility relation R' + r = R + r' must hold.
class ChainGeometry {
 public:
  struct Stage {
    double separation;  // R or R'
    double radius;      // r or r'
    bool operator==(const Stage&) const = default;
  };

  ChainGeometry(double R, double r);
  ChainGeometry(double R, double r, double R_prime, double r_prime);

  double R() const { return first_.separation; }
  double r() const { return first_.radius; }
  bool has_second_stage() const { return second_.has_value(); }
  /// Throws GeometryError when there is no second stage.
  const Stage& second() const;

  ChainGeometry scaled(double alpha) const;

  bool operator==(const ChainGeometry&) const = default;

 private:
  Stage first_;
  std::optional<Stage> second_;
};

/// Inputs of the GIGAQBX accuracy expression. A, M and R default to 1; M is
/// an unknown constant, so the result is an expression value, not a
/// certified bound.
struct GigaqbxBoundInput {
  int p = 0;
  double t_f = 0.0;
  double A = 1.0;
  double M = 1.0;
  double R = 1.0;
};

/// Largest admissible target confinement factor (exclusive): 2 sqrt(3) - 2.
double max_target_confinement();

/// A geometric tail value together with an underflow flag.
struct BoundValue {
  double value = 0.0;
  bool underflow = false;
};

/// (1/(R - r)) (r/R)^{p+1}; flags results below the smallest normal double.
BoundValue geometric_tail(double R, double r, int p);

/// sqrt((2n+1)/(4 pi)) (|c| + |t - c|)^n.
double bound_local_of_regular(int n, const Vec3& c, const Vec3& t);

/// sqrt((2n+1)/(4 pi)) (|c| - |t - c|)^{-(n+1)}; requires |t - c| < |c|.
double bound_local_of_irregular(int n, const Vec3& c, const Vec3& t);

/// Source -> Local(p) -> Local(q). Independent of q.
double bound_chain_s2l2l(const ChainGeometry& g, int p);

/// Source -> Multipole(p) -> Local(q). Independent of q.
double bound_chain_s2m2l(const ChainGeometry& g, int p);

/// Source -> Multipole(p) -> Local(p) -> Local(q): sum of the two stage
/// tails. Requires the second stage.
double bound_chain_m2l2l(const ChainGeometry& g, int p);

double bound_gigaqbx(const GigaqbxBoundInput& in);

/// sqrt(8p/pi), the leading term of the Lebesgue constant.
double lebesgue_asymptotic(int p);

}  // namespace fmmbound
