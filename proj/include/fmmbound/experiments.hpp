#pragma once

// Random-geometry sampling of the three translation chains, acceleration
// error measurement, and leading-constant estimation.
//
// Every sample draws its geometry from a stream seeded by
// (seed, chain, p, q, sample index), so reports do not depend on how the
// work is scheduled. estimate_constant runs samples in parallel with OpenMP;
// serial::estimate_constant is the single-threaded reference and yields
// identical reports.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "fmmbound/bounds.hpp"
#include "fmmbound/vec3.hpp"

namespace fmmbound {

enum class Chain { s2l2l, s2m2l, m2l2l };

inline constexpr Chain kAllChains[] = {Chain::s2l2l, Chain::s2m2l, Chain::m2l2l};

/// "S2L2L", "S2M2L", "M2L2L".
std::string_view to_string(Chain chain);
/// Throws ConfigError for an unknown name.
Chain chain_from_string(std::string_view name);

/// One random geometry for a translation chain. The source sits at `source`,
/// the first expansion is formed at the origin, `center` is c and, for
/// M2L2L, `final_center` is c'. Targets lie in the final closed ball.
struct ScenarioSample {
  Chain chain = Chain::s2l2l;
  ChainGeometry geometry{2.0, 1.0};
  Vec3 source;
  Vec3 center;
  std::optional<Vec3> second_center;
  std::vector<Vec3> targets;
  double weight = 1.0;
  std::uint64_t seed = 0;

  /// c for the two-stage chains, c' for M2L2L.
  const Vec3& final_center() const { return second_center ? *second_center : center; }
  /// Radius of the closed target ball about final_center().
  double target_radius() const;

  bool operator==(const ScenarioSample&) const = default;
};

/// Throws GeometryError unless every hypothesis of the matching bound holds:
///   S2L2L: |s| >= R, |c| <= r, t in B(c, r - |c|)
///   S2M2L: |s| <= r, |c| >= R, t in B(c, |c| - R)
///   M2L2L: |s| <= r, |c| = R' + r = R + r', t in B(c', r' - |c - c'|)
void validate_sample(const ScenarioSample& sample);

inline constexpr int kTargetsPerSample = 64;

/// Deterministic in (chain, seed, size_scale). R ~ U[1.5, 4] * size_scale,
/// r ~ U[0.5, 0.9] * R; see the implementation for the remaining laws.
ScenarioSample sample_scenario(Chain chain, std::uint64_t seed, double size_scale = 1.0);

/// max over targets of |L^q[phi_s](t) - L^q[chain approximation](t)|.
double measure_error(const ScenarioSample& sample, int p, int q);

/// Bound of the matching chain for a unit-strength source.
double chain_bound(const ScenarioSample& sample, int p);

struct CellReport {
  int p = 0;
  int q = 0;
  int samples = 0;  // samples that entered the statistics
  int discarded = 0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  int worst_index = -1;

  bool operator==(const CellReport&) const = default;
};

struct ConstantReport {
  Chain chain = Chain::s2l2l;
  int p = 0;  // orders of the worst cell
  int q = 0;
  int samples = 0;
  int discarded = 0;
  double max_ratio = 0.0;
  double mean_ratio = 0.0;
  std::optional<ScenarioSample> worst_sample;
  std::uint64_t seed = 0;
  double size_scale = 1.0;
  std::vector<CellReport> cells;  // sorted by (p, q)

  bool operator==(const ConstantReport&) const = default;
};

struct ExperimentOptions {
  double size_scale = 1.0;
  double weight = 1.0;
};

/// Seed of sample `index` in cell (p, q).
std::uint64_t sample_seed(std::uint64_t seed, Chain chain, int p, int q, int index);

/// Ratio of measured error to bound, maximized over samples and over the
/// order grid order_set x order_set. Samples whose bound is below 1e-280 are
/// discarded and counted.
ConstantReport estimate_constant(Chain chain, const std::vector<int>& order_set,
                                 int samples_per_cell, std::uint64_t seed,
                                 const ExperimentOptions& options = {});

namespace serial {

double measure_error(const ScenarioSample& sample, int p, int q);

ConstantReport estimate_constant(Chain chain, const std::vector<int>& order_set,
                                 int samples_per_cell, std::uint64_t seed,
                                 const ExperimentOptions& options = {});

}  // namespace serial

}  // namespace fmmbound
