#include "fmmbound/translations.hpp"

#include <cmath>
#include <vector>

#include "fmmbound/errors.hpp"
#include "fmmbound/special_functions.hpp"
#include "tables.hpp"

namespace fmmbound {

namespace {

using detail::a_fast;
using detail::binom_fast;

// Index pairs (n, m) in packed order, so a flat loop can be split across
// threads.
std::vector<HarmonicIndex> packed_indices(int order) {
  std::vector<HarmonicIndex> out;
  out.reserve(harmonic_count(order));
  for (int n = 0; n <= order; ++n)
    for (int m = -n; m <= n; ++m) out.emplace_back(n, m);
  return out;
}

// R_n^m(x + d) = A_n^m sum_{nu,mu} C(n+m, nu+mu) R_{n-nu}^{m-mu}(d) R_nu^mu(x)
//                / (A_{n-nu}^{m-mu} A_nu^mu),
// summed over |mu| <= nu, |m - mu| <= n - nu.
struct LocalShift {
  const int src_order;
  std::vector<complex> weighted;  // L_n^m A_n^m
  std::vector<complex> shift;     // R_j^k(d) / A_j^k

  LocalShift(const Expansion& src, const Vec3& d)
      : src_order(src.order()), weighted(src.coefficients().values().begin(),
                                         src.coefficients().values().end()) {
    const CoefficientTable r = regular_solid_table(src_order, d);
    shift.resize(r.size());
    for (int n = 0; n <= src_order; ++n)
      for (int m = -n; m <= n; ++m) {
        const std::size_t k = harmonic_offset(n, m);
        weighted[k] *= a_fast(n, m);
        shift[k] = r[k] / a_fast(n, m);
      }
  }

  complex coefficient(int nu, int mu) const {
    complex sum{};
    for (int n = nu; n <= src_order; ++n) {
      const int j = n - nu;
      for (int m = std::max(-n, mu - j); m <= std::min(n, mu + j); ++m)
        sum += weighted[harmonic_offset(n, m)] * binom_fast(n + m, nu + mu) *
               shift[harmonic_offset(j, m - mu)];
    }
    return sum / a_fast(nu, mu);
  }
};

// I_n^m(x + d) = A_n^m sum_{nu, lambda} (-1)^{nu+lambda} C(n+nu-m+lambda, n-m)
//                I_{n+nu}^{m-lambda}(d) R_nu^lambda(x)
//                / (A_{n+nu}^{m-lambda} A_nu^lambda),  |x| < |d|.
struct MultipoleToLocal {
  const int src_order;
  std::vector<complex> weighted;  // M_n^m A_n^m
  std::vector<complex> shift;     // I_j^k(d) / A_j^k, j <= p + q

  MultipoleToLocal(const Expansion& src, const Vec3& d, int new_order)
      : src_order(src.order()), weighted(src.coefficients().values().begin(),
                                         src.coefficients().values().end()) {
    const int top = src_order + new_order;
    if (top > detail::kTableDegree) throw DomainError("m2l: combined order exceeds 256");
    const CoefficientTable irr = irregular_solid_table(top, d);
    shift.resize(irr.size());
    for (int n = 0; n <= top; ++n)
      for (int m = -n; m <= n; ++m) {
        const std::size_t k = harmonic_offset(n, m);
        shift[k] = irr[k] / a_fast(n, m);
      }
    for (int n = 0; n <= src_order; ++n)
      for (int m = -n; m <= n; ++m) weighted[harmonic_offset(n, m)] *= a_fast(n, m);
  }

  complex coefficient(int nu, int lambda) const {
    complex sum{};
    for (int n = 0; n <= src_order; ++n) {
      const int j = n + nu;
      for (int m = -n; m <= n; ++m)
        sum += weighted[harmonic_offset(n, m)] * binom_fast(n + nu - m + lambda, n - m) *
               shift[harmonic_offset(j, m - lambda)];
    }
    const double sign = (nu + lambda) % 2 == 0 ? 1.0 : -1.0;
    return sign * sum / a_fast(nu, lambda);
  }
};

double l2l_radius(const Expansion& src, const Vec3& new_center) {
  if (src.kind() != ExpansionKind::local) throw DomainError("l2l: source must be a local expansion");
  const double rho = src.radius() - norm(new_center - src.center());
  if (!(rho > 0.0)) throw GeometryError("l2l: new center is not strictly inside the source ball");
  return rho;
}

double m2l_radius(const Expansion& src, const Vec3& new_center, std::optional<double> radius) {
  if (src.kind() != ExpansionKind::multipole)
    throw DomainError("m2l: source must be a multipole expansion");
  const double gap = norm(new_center - src.center()) - src.radius();
  if (!(gap > 0.0)) throw GeometryError("m2l: target center lies inside the multipole ball");
  if (!radius) return gap * (1.0 - 1e-9);
  if (!(*radius > 0.0) || *radius > gap)
    throw GeometryError("m2l: local ball intersects the multipole ball");
  return *radius;
}

void check_order(int order, const char* what) {
  if (order < 0) throw IndexError(std::string(what) + ": negative order");
}

template <class Kernel>
void fill_serial(const Kernel& kernel, CoefficientTable& out) {
  const auto idx = packed_indices(out.order());
  for (std::size_t k = 0; k < idx.size(); ++k) out[k] = kernel.coefficient(idx[k].n, idx[k].m);
}

template <class Kernel>
void fill_parallel(const Kernel& kernel, CoefficientTable& out) {
  const auto idx = packed_indices(out.order());
  const long count = static_cast<long>(idx.size());
#pragma omp parallel for schedule(dynamic, 4) if (count >= 64)
  for (long k = 0; k < count; ++k) out[k] = kernel.coefficient(idx[k].n, idx[k].m);
}

}  // namespace

Expansion l2l(const Expansion& src, const Vec3& new_center, int new_order) {
  check_order(new_order, "l2l");
  const double rho = l2l_radius(src, new_center);
  if (new_center == src.center())
    return Expansion(ExpansionKind::local, new_center, rho, src.coefficients().truncated(new_order));
  CoefficientTable out(new_order);
  fill_parallel(LocalShift(src, new_center - src.center()), out);
  return Expansion(ExpansionKind::local, new_center, rho, std::move(out));
}

Expansion m2l(const Expansion& src, const Vec3& new_center, int new_order,
              std::optional<double> radius) {
  check_order(new_order, "m2l");
  const double rho = m2l_radius(src, new_center, radius);
  CoefficientTable out(new_order);
  fill_parallel(MultipoleToLocal(src, new_center - src.center(), new_order), out);
  return Expansion(ExpansionKind::local, new_center, rho, std::move(out));
}

namespace serial {

Expansion l2l(const Expansion& src, const Vec3& new_center, int new_order) {
  check_order(new_order, "l2l");
  const double rho = l2l_radius(src, new_center);
  if (new_center == src.center())
    return Expansion(ExpansionKind::local, new_center, rho, src.coefficients().truncated(new_order));
  CoefficientTable out(new_order);
  fill_serial(LocalShift(src, new_center - src.center()), out);
  return Expansion(ExpansionKind::local, new_center, rho, std::move(out));
}

Expansion m2l(const Expansion& src, const Vec3& new_center, int new_order,
              std::optional<double> radius) {
  check_order(new_order, "m2l");
  const double rho = m2l_radius(src, new_center, radius);
  CoefficientTable out(new_order);
  fill_serial(MultipoleToLocal(src, new_center - src.center(), new_order), out);
  return Expansion(ExpansionKind::local, new_center, rho, std::move(out));
}

}  // namespace serial

Expansion reexpand_via_quadrature(const Expansion& src, ExpansionKind target_kind,
                                  const Vec3& new_center, double new_radius, int new_order,
                                  const SphereRule& rule) {
  if (target_kind != ExpansionKind::local)
    throw DomainError("reexpand_via_quadrature: only local targets are supported");
  if (!(new_radius > 0.0)) throw GeometryError("reexpand_via_quadrature: radius must be positive");
  const double offset = norm(new_center - src.center());
  const bool inside = src.kind() == ExpansionKind::local
                          ? offset + new_radius <= src.radius() * (1.0 + 1e-12)
                          : offset - new_radius >= src.radius() * (1.0 - 1e-12);
  if (!inside)
    throw GeometryError("reexpand_via_quadrature: evaluation sphere leaves the source region");
  return local_from_function([&src](const Vec3& x) { return eval_expansion(src, x); },
                             new_center, new_radius, new_order, rule);
}

}  // namespace fmmbound
