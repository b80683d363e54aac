#include "fmmbound/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fmmbound/errors.hpp"
#include "fmmbound/expansions.hpp"
#include "fmmbound/translations.hpp"
#include "random.hpp"

namespace fmmbound {

std::string_view to_string(Chain chain) {
  switch (chain) {
    case Chain::s2l2l: return "S2L2L";
    case Chain::s2m2l: return "S2M2L";
    case Chain::m2l2l: return "M2L2L";
  }
  return "?";
}

Chain chain_from_string(std::string_view name) {
  for (Chain c : kAllChains)
    if (name == to_string(c)) return c;
  throw ConfigError("unknown chain '" + std::string(name) + "' (expected S2L2L, S2M2L or M2L2L)");
}

namespace {

using detail::Stream;

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Fibonacci lattice on the unit sphere, rotated about z by `phase`.
Vec3 fibonacci_point(int k, int count, double phase) {
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  const double z = 1.0 - (2.0 * k + 1.0) / count;
  const double s = std::sqrt(std::max(0.0, 1.0 - z * z));
  const double phi = phase + golden * k;
  return {s * std::cos(phi), s * std::sin(phi), z};
}

constexpr int kBoundaryLattice = 31;
constexpr int kInteriorLattice = kTargetsPerSample - 3 - kBoundaryLattice;

// Center, the two boundary points on the line through the source, a boundary
// lattice, and an interior lattice at radii rho * cbrt((k + 1/2) / K).
std::vector<Vec3> target_points(const Vec3& center, double rho, const Vec3& source, Stream& rng) {
  std::vector<Vec3> out;
  out.reserve(kTargetsPerSample);
  out.push_back(center);
  const Vec3 toward = norm(source - center) > 0.0 ? unit_vector(source - center) : Vec3{0, 0, 1};
  out.push_back(center + rho * toward);
  out.push_back(center - rho * toward);
  const double phase = rng.uniform(0.0, 2.0 * std::numbers::pi);
  for (int k = 0; k < kBoundaryLattice; ++k)
    out.push_back(center + rho * fibonacci_point(k, kBoundaryLattice, phase));
  for (int k = 0; k < kInteriorLattice; ++k) {
    const double radius = rho * std::cbrt((k + 0.5) / kInteriorLattice);
    out.push_back(center + radius * fibonacci_point(k, kInteriorLattice, -phase));
  }
  return out;
}

ScenarioSample draw(Chain chain, double scale, Stream& rng) {
  ScenarioSample s;
  s.chain = chain;
  const double R = rng.uniform(1.5, 4.0) * scale;
  const double r = rng.uniform(0.5, 0.9) * R;
  switch (chain) {
    case Chain::s2l2l: {
      s.geometry = ChainGeometry(R, r);
      s.source = rng.uniform(R, 1.25 * R) * rng.direction();
      s.center = rng.uniform(0.0, 0.95 * r) * rng.direction();
      break;
    }
    case Chain::s2m2l: {
      s.geometry = ChainGeometry(R, r);
      s.source = rng.uniform(0.0, r) * rng.direction();
      s.center = rng.uniform(1.05 * R, 2.0 * R) * rng.direction();
      break;
    }
    case Chain::m2l2l: {
      const double r2 = rng.uniform(0.5, 0.9) * R;
      const double R2 = R + r2 - r;
      s.geometry = ChainGeometry(R, r, R2, r2);
      s.source = rng.uniform(0.0, r) * rng.direction();
      s.center = (R + r2) * rng.direction();
      s.second_center = s.center + rng.uniform(0.0, 0.9 * r2) * rng.direction();
      break;
    }
  }
  s.targets = target_points(s.final_center(), s.target_radius(), s.source, rng);
  return s;
}

}  // namespace

double ScenarioSample::target_radius() const {
  switch (chain) {
    case Chain::s2l2l: return geometry.r() - norm(center);
    case Chain::s2m2l: return norm(center) - geometry.R();
    case Chain::m2l2l: return geometry.second().radius - norm(center - final_center());
  }
  return 0.0;
}

void validate_sample(const ScenarioSample& s) {
  const double R = s.geometry.R();
  const double r = s.geometry.r();
  const double tol = 1e-12 * R;
  const double src = norm(s.source);
  const double c = norm(s.center);
  auto fail = [&](const char* why) {
    throw GeometryError(std::string(to_string(s.chain)) + " sample: " + why);
  };
  switch (s.chain) {
    case Chain::s2l2l:
      if (src < R - tol) fail("require |s| >= R");
      if (c > r + tol) fail("require |c| <= r");
      break;
    case Chain::s2m2l:
      if (src > r + tol) fail("require |s| <= r");
      if (c < R - tol) fail("require |c| >= R");
      break;
    case Chain::m2l2l: {
      if (!s.geometry.has_second_stage() || !s.second_center) fail("missing second stage");
      const auto& st = s.geometry.second();
      if (src > r + tol) fail("require |s| <= r");
      if (std::abs(c - (st.separation + r)) > tol || std::abs(c - (R + st.radius)) > tol)
        fail("require |c| = R' + r = R + r'");
      if (norm(*s.second_center - s.center) > st.radius + tol) fail("require c' in B(c, r')");
      break;
    }
  }
  const double rho = s.target_radius();
  if (rho < -tol) fail("empty target ball");
  for (const Vec3& t : s.targets)
    if (norm(t - s.final_center()) > rho + tol) fail("target outside the final ball");
}

ScenarioSample sample_scenario(Chain chain, std::uint64_t seed, double size_scale) {
  if (!(size_scale > 0.0) || !std::isfinite(size_scale))
    throw DomainError("sample_scenario: size_scale must be positive");
  Stream rng(seed);
  for (int attempt = 0; attempt < 1000; ++attempt) {
    ScenarioSample s = draw(chain, size_scale, rng);
    s.seed = seed;
    try {
      validate_sample(s);
      return s;
    } catch (const GeometryError&) {
    }
  }
  throw IterationError("sample_scenario: no admissible sample after 1000 attempts");
}

double chain_bound(const ScenarioSample& sample, int p) {
  switch (sample.chain) {
    case Chain::s2l2l: return bound_chain_s2l2l(sample.geometry, p);
    case Chain::s2m2l: return bound_chain_s2m2l(sample.geometry, p);
    case Chain::m2l2l: return bound_chain_m2l2l(sample.geometry, p);
  }
  return 0.0;
}

namespace {

struct ParallelKernels {
  static Expansion l2l(const Expansion& e, const Vec3& c, int q) { return fmmbound::l2l(e, c, q); }
  static Expansion m2l(const Expansion& e, const Vec3& c, int q, double rho) {
    return fmmbound::m2l(e, c, q, rho);
  }
};

struct SerialKernels {
  static Expansion l2l(const Expansion& e, const Vec3& c, int q) { return serial::l2l(e, c, q); }
  static Expansion m2l(const Expansion& e, const Vec3& c, int q, double rho) {
    return serial::m2l(e, c, q, rho);
  }
};

template <class K>
double measure(const ScenarioSample& s, int p, int q) {
  if (p < 0 || q < 0) throw IndexError("measure_error: negative order");
  const double rho = s.target_radius();
  const Vec3 origin{};
  const double w = s.weight;
  const Expansion reference = s2l(s.source, w, s.final_center(), q, rho);
  const Expansion approx = [&] {
    switch (s.chain) {
      case Chain::s2l2l:
        return K::l2l(s2l(s.source, w, origin, p, s.geometry.r()), s.center, q);
      case Chain::s2m2l:
        return K::m2l(s2m(s.source, w, origin, p, s.geometry.r()), s.center, q, rho);
      case Chain::m2l2l: {
        const Expansion mid =
            K::m2l(s2m(s.source, w, origin, p, s.geometry.r()), s.center, p,
                   s.geometry.second().radius);
        return K::l2l(mid, s.final_center(), q);
      }
    }
    throw DomainError("measure_error: unknown chain");
  }();
  double worst = 0.0;
  for (const Vec3& t : s.targets)
    worst = std::max(worst, std::abs(eval_expansion(reference, t) - eval_expansion(approx, t)));
  return worst;
}

constexpr double kBoundFloor = 1e-280;

struct SampleOutcome {
  double ratio = 0.0;
  bool discarded = false;
};

template <class K>
SampleOutcome run_sample(Chain chain, std::uint64_t seed, int p, int q, int index,
                         const ExperimentOptions& opt) {
  ScenarioSample s = sample_scenario(chain, sample_seed(seed, chain, p, q, index), opt.size_scale);
  s.weight = opt.weight;
  const double bound = chain_bound(s, p);
  if (bound < kBoundFloor) return {0.0, true};
  if (opt.weight == 0.0) return {0.0, false};
  return {measure<K>(s, p, q) / (std::abs(opt.weight) * bound), false};
}

void check_inputs(const std::vector<int>& order_set, int samples_per_cell) {
  if (samples_per_cell < 1) throw DomainError("estimate_constant: samples_per_cell must be >= 1");
  if (order_set.empty()) throw DomainError("estimate_constant: empty order set");
  for (int p : order_set)
    if (p < 0) throw IndexError("estimate_constant: negative order");
}

// Folds per-sample outcomes (cell-major, sample-minor) into a report in a
// fixed order.
ConstantReport assemble(Chain chain, const std::vector<int>& orders, int per_cell,
                        std::uint64_t seed, const ExperimentOptions& opt,
                        const std::vector<SampleOutcome>& outcomes) {
  ConstantReport report;
  report.chain = chain;
  report.seed = seed;
  report.size_scale = opt.size_scale;
  double total = 0.0;
  int worst_cell = -1;
  std::size_t job = 0;
  for (int p : orders)
    for (int q : orders) {
      CellReport cell{.p = p, .q = q};
      double sum = 0.0;
      for (int i = 0; i < per_cell; ++i, ++job) {
        const SampleOutcome& o = outcomes[job];
        if (o.discarded) {
          ++cell.discarded;
          continue;
        }
        ++cell.samples;
        sum += o.ratio;
        if (cell.worst_index < 0 || o.ratio > cell.max_ratio) {
          cell.max_ratio = o.ratio;
          cell.worst_index = i;
        }
      }
      cell.mean_ratio = cell.samples > 0 ? sum / cell.samples : 0.0;
      report.samples += cell.samples;
      report.discarded += cell.discarded;
      total += sum;
      if (cell.worst_index >= 0 && (worst_cell < 0 || cell.max_ratio > report.max_ratio)) {
        report.max_ratio = cell.max_ratio;
        worst_cell = static_cast<int>(report.cells.size());
      }
      report.cells.push_back(cell);
    }
  report.mean_ratio = report.samples > 0 ? total / report.samples : 0.0;
  if (worst_cell >= 0) {
    const CellReport& c = report.cells[worst_cell];
    report.p = c.p;
    report.q = c.q;
    ScenarioSample s =
        sample_scenario(chain, sample_seed(seed, chain, c.p, c.q, c.worst_index), opt.size_scale);
    s.weight = opt.weight;
    report.worst_sample = std::move(s);
  }
  return report;
}

}  // namespace

std::uint64_t sample_seed(std::uint64_t seed, Chain chain, int p, int q, int index) {
  std::uint64_t h = splitmix(seed);
  h = splitmix(h ^ static_cast<std::uint64_t>(chain));
  h = splitmix(h ^ static_cast<std::uint64_t>(p));
  h = splitmix(h ^ static_cast<std::uint64_t>(q));
  return splitmix(h ^ static_cast<std::uint64_t>(index));
}

double measure_error(const ScenarioSample& sample, int p, int q) {
  return measure<ParallelKernels>(sample, p, q);
}

ConstantReport estimate_constant(Chain chain, const std::vector<int>& order_set,
                                 int samples_per_cell, std::uint64_t seed,
                                 const ExperimentOptions& options) {
  check_inputs(order_set, samples_per_cell);
  const long cells = static_cast<long>(order_set.size() * order_set.size());
  const long jobs = cells * samples_per_cell;
  std::vector<SampleOutcome> outcomes(jobs);
#pragma omp parallel for schedule(dynamic)
  for (long j = 0; j < jobs; ++j) {
    const long cell = j / samples_per_cell;
    const int p = order_set[cell / order_set.size()];
    const int q = order_set[cell % order_set.size()];
    outcomes[j] = run_sample<ParallelKernels>(chain, seed, p, q,
                                              static_cast<int>(j % samples_per_cell), options);
  }
  return assemble(chain, order_set, samples_per_cell, seed, options, outcomes);
}

namespace serial {

double measure_error(const ScenarioSample& sample, int p, int q) {
  return measure<SerialKernels>(sample, p, q);
}

ConstantReport estimate_constant(Chain chain, const std::vector<int>& order_set,
                                 int samples_per_cell, std::uint64_t seed,
                                 const ExperimentOptions& options) {
  check_inputs(order_set, samples_per_cell);
  std::vector<SampleOutcome> outcomes;
  outcomes.reserve(order_set.size() * order_set.size() * samples_per_cell);
  for (int p : order_set)
    for (int q : order_set)
      for (int i = 0; i < samples_per_cell; ++i)
        outcomes.push_back(run_sample<SerialKernels>(chain, seed, p, q, i, options));
  return assemble(chain, order_set, samples_per_cell, seed, options, outcomes);
}

}  // namespace serial

}  // namespace fmmbound
