#pragma once

// Re-centering of expansions by the solid-harmonic addition theorems.
//
// l2l and m2l are OpenMP-parallel over output coefficients; the serial
// namespace holds the single-threaded reference used by the tests and the
// benchmark. Both produce bitwise-identical tables.

#include <optional>

#include "fmmbound/expansions.hpp"

namespace fmmbound {

/// Local -> local. The new radius is src.radius - |new_center - src.center|,
/// which must be positive. Exact re-expansion when new_order >= src.order().
Expansion l2l(const Expansion& src, const Vec3& new_center, int new_order);

/// Multipole -> local. Requires |new_center - src.center| > src.radius. The
/// default radius is (|new_center - src.center| - src.radius) * (1 - 1e-9);
/// a caller-supplied radius may not exceed that gap.
Expansion m2l(const Expansion& src, const Vec3& new_center, int new_order,
              std::optional<double> radius = std::nullopt);

/// Local expansion of x -> eval_expansion(src, x) about new_center, by
/// quadrature. Only ExpansionKind::local targets are supported. The sphere of
/// radius new_radius about new_center must lie in src's validity region.
Expansion reexpand_via_quadrature(const Expansion& src, ExpansionKind target_kind,
                                  const Vec3& new_center, double new_radius, int new_order,
                                  const SphereRule& rule);

namespace serial {

Expansion l2l(const Expansion& src, const Vec3& new_center, int new_order);
Expansion m2l(const Expansion& src, const Vec3& new_center, int new_order,
              std::optional<double> radius = std::nullopt);

}  // namespace serial

}  // namespace fmmbound
