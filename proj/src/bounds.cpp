#include "fmmbound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "fmmbound/errors.hpp"
#include "fmmbound/special_functions.hpp"

namespace fmmbound {

namespace {

void check_stage(double R, double r, const char* what) {
  if (!std::isfinite(R) || !std::isfinite(r) || !(r > 0.0) || !(R > r))
    throw GeometryError(std::string(what) + ": require R > r > 0");
}

void check_order(int p) {
  if (p < 0) throw IndexError("bound: negative order");
}

}  // namespace

ChainGeometry::ChainGeometry(double R, double r) : first_{R, r} {
  check_stage(R, r, "ChainGeometry");
}

ChainGeometry::ChainGeometry(double R, double r, double R_prime, double r_prime)
    : first_{R, r}, second_(Stage{R_prime, r_prime}) {
  check_stage(R, r, "ChainGeometry");
  check_stage(R_prime, r_prime, "ChainGeometry (second stage)");
  const double lhs = R_prime + r;
  const double rhs = R + r_prime;
  if (std::abs(lhs - rhs) > 1e-12 * std::max(lhs, rhs))
    throw GeometryError("ChainGeometry: require R' + r = R + r'");
}

const ChainGeometry::Stage& ChainGeometry::second() const {
  if (!second_) throw GeometryError("ChainGeometry: no second stage");
  return *second_;
}

ChainGeometry ChainGeometry::scaled(double alpha) const {
  if (!second_) return ChainGeometry(alpha * R(), alpha * r());
  return ChainGeometry(alpha * R(), alpha * r(), alpha * second_->separation,
                       alpha * second_->radius);
}

double max_target_confinement() { return 2.0 * std::sqrt(3.0) - 2.0; }

BoundValue geometric_tail(double R, double r, int p) {
  check_stage(R, r, "geometric_tail");
  check_order(p);
  const double value = std::pow(r / R, p + 1.0) / (R - r);
  return {value, value < std::numeric_limits<double>::min()};
}

double bound_local_of_regular(int n, const Vec3& c, const Vec3& t) {
  check_order(n);
  return std::sqrt((2.0 * n + 1.0) / kFourPi) * std::pow(norm(c) + norm(t - c), n);
}

double bound_local_of_irregular(int n, const Vec3& c, const Vec3& t) {
  check_order(n);
  const double gap = norm(c) - norm(t - c);
  if (!(gap > 0.0)) throw GeometryError("bound_local_of_irregular: require |t - c| < |c|");
  return std::sqrt((2.0 * n + 1.0) / kFourPi) * std::pow(gap, -(n + 1.0));
}

double bound_chain_s2l2l(const ChainGeometry& g, int p) { return geometric_tail(g.R(), g.r(), p).value; }

double bound_chain_s2m2l(const ChainGeometry& g, int p) { return geometric_tail(g.R(), g.r(), p).value; }

double bound_chain_m2l2l(const ChainGeometry& g, int p) {
  const auto& s = g.second();
  return geometric_tail(g.R(), g.r(), p).value + geometric_tail(s.separation, s.radius, p).value;
}

double bound_gigaqbx(const GigaqbxBoundInput& in) {
  check_order(in.p);
  if (!(in.t_f >= 0.0) || !(in.t_f < max_target_confinement()))
    throw DomainError("bound_gigaqbx: require 0 <= t_f < 2 sqrt(3) - 2");
  if (!(in.R > 0.0)) throw DomainError("bound_gigaqbx: minimum box radius must be positive");
  const double s3 = std::sqrt(3.0);
  const double k = in.p + 1.0;
  const double near = std::pow(s3 / 3.0, k) / (3.0 - s3);
  const double far = std::pow(s3 * (1.0 + in.t_f) / (6.0 - s3), k) /
                     (6.0 - 2.0 * s3 - s3 * in.t_f);
  return in.A * in.M / in.R * std::max(near, far);
}

double lebesgue_asymptotic(int p) {
  if (p < 1) throw DomainError("lebesgue_asymptotic: require p >= 1");
  return std::sqrt(8.0 * p / std::numbers::pi);
}

}  // namespace fmmbound
