#pragma once

// Property suites shared by the test binaries and `fmmbound verify`.
// Each check draws its cases from a seeded stream and reports the worst
// observed value of its metric against a limit.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "fmmbound/special_functions.hpp"

namespace fmmbound {

struct PropertyResult {
  std::string name;
  bool passed = false;
  int cases = 0;
  double worst = 0.0;  // largest observed metric
  double limit = 0.0;  // passes iff worst <= limit
  std::string detail;
};

using HarmonicEvaluator = std::function<complex(HarmonicIndex, const Vec3&)>;

/// P_n(xi . eta) = 4pi/(2n+1) sum_m Y_n^m(xi) conj(Y_n^m(eta)) on `trials`
/// random triples with n <= max_degree, and the regular solid-harmonic
/// translation identity on trials/5 random pairs (n <= 8). Both are built
/// from `y`, so a tampered convention is caught.
PropertyResult check_addition_theorem(int trials, int max_degree, std::uint64_t seed,
                                      const HarmonicEvaluator& y = sph_harm);

/// sum_m |Y_n^m(xi)|^2 = (2n+1)/(4pi) for every n <= max_degree.
PropertyResult check_norm_corollary(int trials, int max_degree, std::uint64_t seed);

/// int |R_n^m|^2 = int |I_n^m|^2 = 1 over the unit sphere, n <= max_degree.
PropertyResult check_solid_normalization(int max_degree);

/// binom(n+k, m) binom(n-k, m) <= binom(n, m)^2 and
/// binom(n, m+k) binom(n, m-k) <= binom(n, m)^2 for n, m, k <= limit.
PropertyResult check_binomial_lemma(int limit);

/// L_{c2}^{q'}[L_{c1}^q e] = L_{c1}^q e for q' >= q, relative 1e-10.
PropertyResult check_local_idempotence(int trials, std::uint64_t seed);

/// M_{c'}^{p'}[M_c^p g] = M_{c'}^{p'}[g] for p' <= p, coefficientwise 1e-11.
PropertyResult check_multipole_truncation(int trials, std::uint64_t seed);

/// l2l and m2l against reexpand_via_quadrature, relative 1e-10.
PropertyResult check_oracle_equivalence(int trials, int max_order, std::uint64_t seed);

/// Translation of a sum equals the sum of translations.
PropertyResult check_translation_linearity(int trials, std::uint64_t seed);

/// |L_p[R_n^0](t)| and |L_p[I_n^0](t)| against their growth bounds,
/// relative slack 1e-9, n, p <= max_order.
PropertyResult check_lemma_regular(int trials, int max_order, std::uint64_t seed);
PropertyResult check_lemma_irregular(int trials, int max_order, std::uint64_t seed);

/// sup |L_q[phi] - L_q[phi~]| <= Lambda_q sup |phi - phi~| (1 + 1e-6) on
/// random perturbed harmonic pairs, q <= max_order.
PropertyResult check_projection_bound(int trials, int max_order, std::uint64_t seed);

/// Random admissible chain samples with p, q <= max_order: measured error
/// over bound stays <= 1.02.
PropertyResult check_bound_compliance(int samples, int max_order, std::uint64_t seed);

enum class VerifyLevel { quick, full };

std::vector<PropertyResult> run_verify(VerifyLevel level, std::uint64_t seed);

}  // namespace fmmbound
