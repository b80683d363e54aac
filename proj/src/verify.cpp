#include "fmmbound/verify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "fmmbound/bounds.hpp"
#include "fmmbound/experiments.hpp"
#include "fmmbound/expansions.hpp"
#include "fmmbound/sphere_quadrature.hpp"
#include "fmmbound/translations.hpp"
#include "random.hpp"

namespace fmmbound {

namespace {

using detail::Stream;

PropertyResult finish(std::string name, int cases, double worst, double limit,
                      std::string detail = {}) {
  return {std::move(name), worst <= limit, cases, worst, limit, std::move(detail)};
}

complex random_complex(Stream& rng) { return {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}; }

// Random coefficients of order p, scaled so that degree-n terms are O(1) on
// a sphere of the given radius (local) or at that radius (multipole).
CoefficientTable random_table(int order, double radius, ExpansionKind kind, Stream& rng) {
  CoefficientTable t(order);
  for (int n = 0; n <= order; ++n)
    for (int m = -n; m <= n; ++m)
      t(n, m) = random_complex(rng) *
                (kind == ExpansionKind::local ? std::pow(radius, -n) : std::pow(radius, n + 1));
  return t;
}

// max |a - b| / max |b| over coefficients rescaled by radius^n (local) or
// radius^-(n+1) (multipole).
double scaled_difference(const Expansion& a, const Expansion& b, double radius) {
  const int order = std::min(a.order(), b.order());
  double diff = 0.0;
  double size = 0.0;
  for (int n = 0; n <= order; ++n) {
    const double s = a.kind() == ExpansionKind::local ? std::pow(radius, n)
                                                       : std::pow(radius, -(n + 1));
    for (int m = -n; m <= n; ++m) {
      diff = std::max(diff, std::abs(a.coefficients()(n, m) - b.coefficients()(n, m)) * s);
      size = std::max(size, std::abs(b.coefficients()(n, m)) * s);
    }
  }
  return size > 0.0 ? diff / size : diff;
}

// sum_k |c_k| |basis_k(x)|, the magnitude an evaluation is accurate relative to.
double evaluation_scale(const Expansion& e, const Vec3& x) {
  const Vec3 d = x - e.center();
  const CoefficientTable basis = e.kind() == ExpansionKind::local
                                     ? regular_solid_table(e.order(), d)
                                     : irregular_solid_table(e.order(), d);
  double sum = 0.0;
  for (std::size_t k = 0; k < basis.size(); ++k) sum += std::abs(e.coefficients()[k] * basis[k]);
  return sum;
}

std::vector<Vec3> ball_points(const Vec3& center, double radius, Stream& rng, int count) {
  std::vector<Vec3> out{center};
  for (int k = 1; k < count; ++k) {
    const double rho = k % 2 ? radius : radius * rng.uniform(0.0, 1.0);
    out.push_back(center + rho * rng.direction());
  }
  return out;
}

std::string describe(const char* what, double value) {
  std::ostringstream s;
  s.precision(3);
  s << what << ' ' << value;
  return s.str();
}

}  // namespace

PropertyResult check_addition_theorem(int trials, int max_degree, std::uint64_t seed,
                                      const HarmonicEvaluator& y) {
  Stream rng(seed);
  double key = 0.0;
  for (int i = 0; i < trials; ++i) {
    const int n = rng.integer(0, max_degree);
    const Vec3 xi = rng.direction();
    const Vec3 eta = rng.direction();
    complex sum{};
    for (int m = -n; m <= n; ++m) sum += y({n, m}, xi) * std::conj(y({n, m}, eta));
    sum *= kFourPi / (2 * n + 1);
    key = std::max(key, std::abs(legendre_p(n, dot(xi, eta)) - sum));
  }

  auto solid = [&y](int n, int m, const Vec3& x) {
    const double r = norm(x);
    return std::pow(r, n) * y({n, m}, r > 0.0 ? x / r : Vec3{0, 0, 1});
  };
  double shift = 0.0;
  const int pairs = std::max(1, trials / 5);
  for (int i = 0; i < pairs; ++i) {
    const int n = rng.integer(0, 8);
    const int m = rng.integer(-n, n);
    const Vec3 x = rng.uniform(0.0, 0.6) * rng.direction();
    const Vec3 d = rng.uniform(0.0, 0.6) * rng.direction();
    complex sum{};
    double scale = 0.0;
    for (int nu = 0; nu <= n; ++nu)
      for (int mu = -nu; mu <= nu; ++mu) {
        if (std::abs(m - mu) > n - nu) continue;
        const complex term = binom(n + m, nu + mu) * solid(n - nu, m - mu, d) * solid(nu, mu, x) /
                             (norm_const_a(n - nu, m - mu) * norm_const_a(nu, mu));
        sum += term;
        scale += std::abs(term);
      }
    sum *= norm_const_a(n, m);
    scale *= norm_const_a(n, m);
    const complex lhs = solid(n, m, x + d);
    scale = std::max(scale, std::abs(lhs));
    if (scale > 0.0) shift = std::max(shift, std::abs(lhs - sum) / scale);
  }
  return finish("addition theorem", trials + pairs, std::max(key, shift), 1e-11,
                describe("spherical", key) + ", " + describe("solid", shift));
}

PropertyResult check_norm_corollary(int trials, int max_degree, std::uint64_t seed) {
  Stream rng(seed);
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const CoefficientTable y = sph_harm_table(max_degree, rng.direction());
    for (int n = 0; n <= max_degree; ++n) {
      double sum = 0.0;
      for (int m = -n; m <= n; ++m) sum += std::norm(y(n, m));
      worst = std::max(worst, std::abs(sum - (2 * n + 1) / kFourPi));
    }
  }
  return finish("sum-of-squares corollary", trials * (max_degree + 1), worst, 1e-11);
}

PropertyResult check_solid_normalization(int max_degree) {
  const SphereRule rule = sphere_rule(2 * max_degree);
  double worst = 0.0;
  for (int n = 0; n <= max_degree; ++n)
    for (int m = -n; m <= n; ++m) {
      const HarmonicIndex idx{n, m};
      const complex r = integrate(rule, [&](const Vec3& x) { return complex(std::norm(regular_solid(idx, x))); });
      const complex i = integrate(rule, [&](const Vec3& x) { return complex(std::norm(irregular_solid(idx, x))); });
      worst = std::max({worst, std::abs(r - 1.0), std::abs(i - 1.0)});
    }
  return finish("solid-harmonic normalization", harmonic_count(max_degree), worst, 1e-11);
}

PropertyResult check_binomial_lemma(int limit) {
  double worst = 0.0;
  int cases = 0;
  constexpr double kSlack = 1e-12;
  auto excess = [](double lhs, double rhs) { return rhs > 0.0 ? lhs / rhs - 1.0 : (lhs > 0.0 ? 1.0 : 0.0); };
  for (int n = 0; n <= limit; ++n)
    for (int m = 0; m <= limit; ++m) {
      const double sq = binom(n, m) * binom(n, m);
      for (int k = 0; k <= limit; ++k) {
        if (n >= k) {
          worst = std::max(worst, excess(binom(n + k, m) * binom(n - k, m), sq));
          ++cases;
        }
        if (m >= k) {
          worst = std::max(worst, excess(binom(n, m + k) * binom(n, m - k), sq));
          ++cases;
        }
      }
    }
  return finish("binomial product lemma", cases, worst, kSlack);
}

PropertyResult check_local_idempotence(int trials, std::uint64_t seed) {
  Stream rng(seed);
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const Expansion e(ExpansionKind::local, Vec3{}, 1.0,
                      random_table(rng.integer(0, 12), 1.0, ExpansionKind::local, rng));
    const int q = rng.integer(0, 12);
    const Expansion first = l2l(e, rng.uniform(0.0, 0.4) * rng.direction(), q);
    const Vec3 c2 = first.center() + rng.uniform(0.0, 0.4) * first.radius() * rng.direction();
    const Expansion chained = l2l(first, c2, rng.integer(q, q + 6));
    for (const Vec3& t : ball_points(c2, chained.radius(), rng, 16)) {
      const double scale = std::max(evaluation_scale(first, t), 1e-300);
      worst = std::max(worst, std::abs(eval_expansion(chained, t) - eval_expansion(first, t)) / scale);
    }
  }
  return finish("local translation idempotence", trials, worst, 1e-10);
}

PropertyResult check_multipole_truncation(int trials, std::uint64_t seed) {
  Stream rng(seed);
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const double rho = 0.5;
    const Vec3 s = rng.uniform(0.0, rho) * rng.direction();
    const int p = rng.integer(0, 12);
    const int p2 = rng.integer(0, p);
    const Vec3 c2 = rng.uniform(0.0, 0.5) * rng.direction();
    const double reach = rho + norm(c2);
    const Expansion inner = s2m(s, 1.0, Vec3{}, p, rho);
    const Expansion direct = s2m(s, 1.0, c2, p2, reach);
    const Expansion via = multipole_from_function(
        [&inner](const Vec3& x) { return eval_expansion(inner, x); }, c2, 2.0 * reach, p2);
    worst = std::max(worst, scaled_difference(via, direct, reach));
  }
  return finish("multipole truncation identity", trials, worst, 1e-11);
}

PropertyResult check_oracle_equivalence(int trials, int max_order, std::uint64_t seed) {
  Stream rng(seed);
  double worst_l2l = 0.0;
  double worst_m2l = 0.0;
  for (int i = 0; i < trials; ++i) {
    {
      const int p = rng.integer(0, max_order);
      const int q = rng.integer(0, max_order);
      const Expansion e(ExpansionKind::local, Vec3{}, 1.0,
                        random_table(p, 1.0, ExpansionKind::local, rng));
      const Expansion fast = l2l(e, rng.uniform(0.0, 0.5) * rng.direction(), q);
      const Expansion oracle = reexpand_via_quadrature(e, ExpansionKind::local, fast.center(),
                                                       fast.radius(), q, sphere_rule(p + q + 2));
      worst_l2l = std::max(worst_l2l, scaled_difference(fast, oracle, fast.radius()));
    }
    {
      const int p = rng.integer(0, max_order);
      const int q = rng.integer(0, max_order);
      const Expansion e(ExpansionKind::multipole, Vec3{}, 0.5,
                        random_table(p, 0.5, ExpansionKind::multipole, rng));
      const Expansion fast = m2l(e, rng.uniform(1.5, 3.0) * rng.direction(), q);
      const double rho = 0.5 * fast.radius();
      const Expansion oracle = reexpand_via_quadrature(e, ExpansionKind::local, fast.center(), rho,
                                                       q, sphere_rule(p + q + 100));
      worst_m2l = std::max(worst_m2l, scaled_difference(fast, oracle, rho));
    }
  }
  return finish("oracle equivalence", 2 * trials, std::max(worst_l2l, worst_m2l), 1e-10,
                describe("l2l", worst_l2l) + ", " + describe("m2l", worst_m2l));
}

PropertyResult check_translation_linearity(int trials, std::uint64_t seed) {
  Stream rng(seed);
  double worst = 0.0;
  for (int i = 0; i < trials; ++i) {
    const int p = rng.integer(0, 12);
    const int q = rng.integer(0, 12);
    for (ExpansionKind kind : {ExpansionKind::local, ExpansionKind::multipole}) {
      const double radius = kind == ExpansionKind::local ? 1.0 : 0.5;
      const Expansion a(kind, Vec3{}, radius, random_table(p, radius, kind, rng));
      const Expansion b(kind, Vec3{}, radius, random_table(p, radius, kind, rng));
      const Expansion sum(kind, Vec3{}, radius, a.coefficients() + b.coefficients());
      const Vec3 c = (kind == ExpansionKind::local ? rng.uniform(0.0, 0.5) : rng.uniform(1.5, 3.0)) *
                     rng.direction();
      auto go = [&](const Expansion& e) { return kind == ExpansionKind::local ? l2l(e, c, q) : m2l(e, c, q); };
      const Expansion ta = go(a);
      const Expansion lhs = go(sum);
      const Expansion rhs(ExpansionKind::local, c, ta.radius(), ta.coefficients() + go(b).coefficients());
      worst = std::max(worst, scaled_difference(lhs, rhs, ta.radius()));
    }
  }
  return finish("translation linearity", 2 * trials, worst, 1e-12);
}

PropertyResult check_lemma_regular(int trials, int max_order, std::uint64_t seed) {
  Stream rng(seed);
  double worst = -1.0;
  for (int i = 0; i < trials; ++i) {
    const int n = rng.integer(0, max_order);
    const int p = rng.integer(0, max_order);
    const Vec3 c = rng.uniform(0.0, 2.0) * rng.direction();
    const Vec3 t = c + rng.uniform(0.0, 2.0) * rng.direction();
    CoefficientTable table(n);
    table(n, 0) = 1.0;
    const Expansion src(ExpansionKind::local, Vec3{}, norm(c) + norm(t - c) + 1.0, std::move(table));
    const double value = std::abs(eval_expansion(l2l(src, c, p), t));
    worst = std::max(worst, value / bound_local_of_regular(n, c, t) - 1.0);
  }
  return finish("regular growth lemma", trials, worst, 1e-9);
}

PropertyResult check_lemma_irregular(int trials, int max_order, std::uint64_t seed) {
  Stream rng(seed);
  double worst = -1.0;
  for (int i = 0; i < trials; ++i) {
    const int n = rng.integer(0, max_order);
    const int p = rng.integer(0, max_order);
    const Vec3 c = rng.uniform(0.5, 2.0) * rng.direction();
    const Vec3 t = c + rng.uniform(0.0, 0.95) * norm(c) * rng.direction();
    CoefficientTable table(n);
    table(n, 0) = 1.0;
    const double inner = 0.5 * (norm(c) - norm(t - c));
    const Expansion src(ExpansionKind::multipole, Vec3{}, inner, std::move(table));
    const double value = std::abs(eval_expansion(m2l(src, c, p, norm(c) - inner), t));
    worst = std::max(worst, value / bound_local_of_irregular(n, c, t) - 1.0);
  }
  return finish("irregular growth lemma", trials, worst, 1e-9);
}

PropertyResult check_projection_bound(int trials, int max_order, std::uint64_t seed) {
  Stream rng(seed);
  const SphereRule dense = sphere_rule(40);
  std::vector<Vec3> samples(dense.nodes.begin(), dense.nodes.end());
  samples.push_back(Vec3{});
  std::map<int, double> lambda;
  double worst = -1.0;
  for (int i = 0; i < trials; ++i) {
    const int q = rng.integer(0, max_order);
    PointSources base;
    for (int k = 0; k < 3; ++k) {
      base.positions.push_back(rng.uniform(1.5, 3.0) * rng.direction());
      base.weights.push_back(rng.uniform(-1.0, 1.0));
    }
    PointSources bump = base;
    bump.positions.push_back(rng.uniform(1.5, 3.0) * rng.direction());
    bump.weights.push_back(0.1 * rng.uniform(-1.0, 1.0));
    CoefficientTable extra = random_table(4, 1.0, ExpansionKind::local, rng);
    extra *= 0.05;
    const Expansion poly(ExpansionKind::local, Vec3{}, 1.0, std::move(extra));
    const SpatialFunction phi = [&base](const Vec3& x) { return complex(eval_point_potential(base, x)); };
    const SpatialFunction perturbed = [&](const Vec3& x) {
      return eval_point_potential(bump, x) + eval_expansion(poly, x);
    };
    const Expansion a = local_from_function(phi, Vec3{}, 1.0, q);
    const Expansion b = local_from_function(perturbed, Vec3{}, 1.0, q);
    double out = 0.0;
    double in = 0.0;
    for (const Vec3& x : samples) {
      out = std::max(out, std::abs(eval_expansion(a, x) - eval_expansion(b, x)));
      in = std::max(in, std::abs(phi(x) - perturbed(x)));
    }
    if (!lambda.count(q)) lambda[q] = lebesgue_constant(q);
    worst = std::max(worst, out / (lambda[q] * in) - 1.0);
  }
  return finish("projection bound", trials, worst, 1e-6);
}

PropertyResult check_bound_compliance(int samples, int max_order, std::uint64_t seed) {
  Stream rng(seed);
  double worst = 0.0;
  int counted = 0;
  for (int i = 0; i < samples; ++i) {
    const Chain chain = kAllChains[i % 3];
    const int p = rng.integer(0, max_order);
    const int q = rng.integer(0, max_order);
    const ScenarioSample s = sample_scenario(chain, sample_seed(seed, chain, p, q, i));
    const double bound = chain_bound(s, p);
    if (bound < 1e-280) continue;
    worst = std::max(worst, measure_error(s, p, q) / bound);
    ++counted;
  }
  return finish("chain bound compliance", counted, worst, 1.02);
}

std::vector<PropertyResult> run_verify(VerifyLevel level, std::uint64_t seed) {
  const bool full = level == VerifyLevel::full;
  std::vector<PropertyResult> out;
  out.push_back(check_addition_theorem(1000, 20, seed));
  out.push_back(check_norm_corollary(50, 30, seed + 1));
  out.push_back(check_solid_normalization(20));
  out.push_back(check_binomial_lemma(full ? 60 : 20));
  out.push_back(check_local_idempotence(100, seed + 2));
  out.push_back(check_multipole_truncation(full ? 100 : 30, seed + 3));
  out.push_back(check_oracle_equivalence(full ? 100 : 30, 12, seed + 4));
  out.push_back(check_translation_linearity(20, seed + 5));
  out.push_back(check_lemma_regular(200, 20, seed + 6));
  out.push_back(check_lemma_irregular(200, 20, seed + 7));
  out.push_back(check_projection_bound(full ? 50 : 15, 15, seed + 8));
  out.push_back(check_bound_compliance(full ? 10000 : 600, 20, seed + 9));
  return out;
}

}  // namespace fmmbound
