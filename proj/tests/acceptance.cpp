// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <string>
#include <vector>

#include "fmmbound/bounds.hpp"
#include "fmmbound/expansions.hpp"
#include "fmmbound/experiments.hpp"
#include "fmmbound/verify.hpp"

using namespace fmmbound;

namespace {

struct Verdict {
  bool passed;
  std::string detail;
};

std::string fmt(const char* spec, double a, double b = 0.0, double c = 0.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, spec, a, b, c);
  return buf;
}

Verdict from(const PropertyResult& r) {
  return {r.passed, r.name + fmt(": worst %.3g, limit %.3g", r.worst, r.limit) +
                        (r.detail.empty() ? "" : " (" + r.detail + ")")};
}

Verdict both(const Verdict& a, const Verdict& b) { return {a.passed && b.passed, a.detail + "; " + b.detail}; }

Verdict table_reproduction() {
  Verdict v{true, ""};
  for (Chain c : kAllChains) {
    const ConstantReport r = estimate_constant(c, {3, 5, 10}, 200, 20190401);
    const bool ok = r.max_ratio >= 0.05 && r.max_ratio <= 1.02 && r.samples >= 9 * 200;
    v.passed = v.passed && ok;
    v.detail += std::string(v.detail.empty() ? "" : ", ") + std::string(to_string(c)) +
                fmt(" max_ratio %.4f", r.max_ratio);
  }
  v.detail += " (interval [0.05, 1.02], 200 samples per cell)";
  return v;
}

Verdict bound_compliance() {
  const PropertyResult r = check_bound_compliance(10000, 20, 555);
  return {r.passed && r.cases == 10000,
          fmt("%g scenarios, worst ratio %.4f (limit 1.02)", r.cases, r.worst)};
}

Verdict lebesgue() {
  const double l0 = lebesgue_constant(0), l1 = lebesgue_constant(1), l100 = lebesgue_constant(100);
  const double asym = std::sqrt(800.0 / std::numbers::pi);
  const double rel = std::abs(l100 - asym) / asym;
  const bool ok = std::abs(l0 - 1.0) < 1e-10 && std::abs(l1 - 5.0 / 3.0) < 1e-7 && rel < 0.15;
  return {ok, fmt("L0-1 = %.2g, L1-5/3 = %.2g, ", l0 - 1.0, l1 - 5.0 / 3.0) +
                  fmt("L100 = %.6f vs %.6f (%.1f%%)", l100, asym, 100 * rel)};
}

Verdict convention_lock() {
  return both(from(check_addition_theorem(1000, 20, 404)), from(check_norm_corollary(100, 30, 405)));
}

Verdict idempotence() {
  return both(from(check_local_idempotence(100, 506)), from(check_multipole_truncation(100, 507)));
}

Verdict oracle() { return from(check_oracle_equivalence(100, 12, 606)); }

Verdict lemmas() {
  return both(from(check_lemma_regular(200, 20, 707)), from(check_lemma_irregular(200, 20, 708)));
}

Verdict projection() { return from(check_projection_bound(50, 15, 808)); }

// Collinear S2M2L with |s| = r and R/r = 2, target at the final center.
Verdict convergence_rate() {
  ScenarioSample s;
  s.chain = Chain::s2m2l;
  s.geometry = ChainGeometry(2.0, 1.0);
  const Vec3 axis = unit_vector({1.0, 2.0, 2.0});
  s.source = 1.0 * axis;
  s.center = 2.0 * (1.0 + 1e-6) * axis;
  s.targets = {s.center};
  validate_sample(s);
  double lo = 1e300, hi = 0.0;
  double prev = measure_error(s, 5, 0);
  for (int p = 6; p <= 15; ++p) {
    const double e = measure_error(s, p, 0);
    lo = std::min(lo, e / prev);
    hi = std::max(hi, e / prev);
    prev = e;
  }
  return {lo >= 0.45 && hi <= 0.55, fmt("per-order ratio in [%.5f, %.5f], r/R = 0.5", lo, hi)};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria{
      {"table reproduction", table_reproduction},
      {"bound-compliance sweep", bound_compliance},
      {"lebesgue constants", lebesgue},
      {"convention lock", convention_lock},
      {"translation idempotence", idempotence},
      {"oracle equivalence", oracle},
      {"growth lemma bounds", lemmas},
      {"generic projection bound", projection},
      {"convergence rate", convergence_rate},
  };
  int failures = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    const auto start = std::chrono::steady_clock::now();
    Verdict v{false, ""};
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s [%d] %s: %s [%.1fs]\n", v.passed ? "PASS" : "FAIL", index, name, v.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !v.passed;
  }
  std::printf("%d/%d criteria passed\n", index - failures, index);
  return failures ? 1 : 0;
}
