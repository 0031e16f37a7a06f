#pragma once
// Named property suites: each one checks a theorem-level guarantee of the
// library end to end, at desk scale, with fixed seeds and pinned tolerances.
// The acceptance binary runs all of them; the CLI `verify` subcommand runs
// them by name. Every suite is deterministic.

#include "mixcomp/chains.hpp"
#include "mixcomp/core.hpp"
#include "mixcomp/duality.hpp"
#include "mixcomp/mixing.hpp"
#include "mixcomp/orders.hpp"
#include "mixcomp/spectral.hpp"
#include "mixcomp/structures.hpp"

#include <functional>
#include <map>
#include <random>

namespace mixcomp::verify {

struct VerifyResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

namespace detail_verify {

inline double unif(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Any feasible symmetric chain: p_i in (0, 1 - p_{i-1}), kept off the
// boundary so the chain stays irreducible and aperiodic.
inline Vec random_symmetric_p(std::mt19937_64& rng, int n) {
  Vec p(n);
  double prev = 0.0;
  for (int i = 0; i < n; ++i) {
    p[i] = unif(rng, 0.02 * (1.0 - prev), 0.95 * (1.0 - prev));
    prev = p[i];
  }
  return p;
}

// Monotone symmetric chain: p_i <= 1/2 everywhere.
inline Vec random_monotone_symmetric_p(std::mt19937_64& rng, int n) {
  Vec p(n);
  for (int i = 0; i < n; ++i) p[i] = unif(rng, 0.02, 0.5);
  return p;
}

// Monotone chain with p_i + q_{i+1} = 1 on every edge: exactly the
// non-increasing up-probability sequences in (0, 1).
inline chains::BdParams random_no_hold_monotone(std::mt19937_64& rng, int n) {
  Vec p = Vec::Zero(n + 1), q = Vec::Zero(n + 1), r = Vec::Zero(n + 1);
  p[0] = unif(rng, 0.3, 0.9);
  for (int i = 1; i < n; ++i) p[i] = std::max(0.02, p[i - 1] * unif(rng, 0.5, 1.0));
  for (int i = 1; i <= n; ++i) q[i] = 1.0 - p[i - 1];
  for (int i = 0; i <= n; ++i) r[i] = std::max(0.0, 1.0 - q[i] - p[i]);
  return chains::BdParams(std::move(q), std::move(r), std::move(p));
}

// General monotone chain (p_i + q_{i+1} <= 1) with one-step ratios kept in
// [1/3, 3] so the stationary pmf stays well away from underflow.
inline chains::BdParams random_monotone_bd(std::mt19937_64& rng, int n) {
  Vec p = Vec::Zero(n + 1), q = Vec::Zero(n + 1), r = Vec::Zero(n + 1);
  p[0] = unif(rng, 0.15, 0.8);
  for (int i = 1; i <= n; ++i) {
    const double hi = std::min({3.0 * p[i - 1], 1.0 - p[i - 1], 0.9});
    const double lo = std::min(std::max(p[i - 1] / 3.0, 0.05), 0.9 * hi);
    q[i] = unif(rng, lo, hi);
    if (i < n) {
      const double cap = 0.9 * (1.0 - q[i]);
      p[i] = unif(rng, std::min(0.05, cap), cap);
    }
  }
  for (int i = 0; i <= n; ++i) r[i] = std::max(0.0, 1.0 - q[i] - p[i]);
  return chains::BdParams(std::move(q), std::move(r), std::move(p));
}

// Pair A (larger up-probabilities) and B sharing a strictly positive pi,
// both reversible and monotone; A compares below B.
inline std::pair<chains::BdParams, chains::BdParams> random_monotone_pair(std::mt19937_64& rng, const Pmf& pi) {
  const int m = pi.size();
  Vec pa = Vec::Zero(m), pb = Vec::Zero(m);
  double qa = 0.0;  // q_i of chain A, tracked sequentially
  for (int i = 0; i + 1 < m; ++i) {
    double cap = std::min(pi(i + 1) / (pi(i) + pi(i + 1)), 1.0 - qa);
    pa[i] = unif(rng, 0.3 * cap, 0.95 * cap);
    pb[i] = pa[i] * unif(rng, 0.25, 0.9);
    qa = pi(i) * pa[i] / pi(i + 1);
  }
  auto make = [&](const Vec& p) {
    Vec q = Vec::Zero(m), r = Vec::Zero(m);
    for (int i = 1; i < m; ++i) q[i] = pi(i - 1) * p[i - 1] / pi(i);
    for (int i = 0; i < m; ++i) r[i] = std::max(0.0, 1.0 - q[i] - p[i]);
    return chains::BdParams(std::move(q), std::move(r), Vec(p));
  };
  return {make(pa), make(pb)};
}

inline Pmf random_pmf(std::mt19937_64& rng, int m) {
  Vec w(m);
  double sum = 0.0;
  for (int i = 0; i < m; ++i) {
    w[i] = unif(rng, 0.2, 1.0);
    sum += w[i];
  }
  w /= sum;
  return Pmf(std::move(w));
}

inline VerifyResult fail(std::string name, std::string detail) {
  return VerifyResult{std::move(name), false, std::move(detail)};
}

inline VerifyResult pass(std::string name, std::string detail) {
  return VerifyResult{std::move(name), true, std::move(detail)};
}

inline std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.3g", x);
  return buf;
}

}  // namespace detail_verify

// Every law of a feasible symmetric chain majorizes the uniform chain's law,
// step for step, from a point start.
inline VerifyResult suite_path_majorization() {
  using namespace detail_verify;
  const std::string name = "path-majorization";
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 2 + trial % 7;
    const Kernel k = chains::symmetric_bd(random_symmetric_p(rng, n));
    const Kernel u = chains::uniform_chain(n);
    auto flags = mixing::majorization_trace(k, u, point_mass(n + 1, 0), 200, 1e-10);
    for (size_t t = 0; t < flags.size(); ++t)
      if (!flags[t])
        return fail(name, "trial " + std::to_string(trial) + ": majorization fails at t=" + std::to_string(t));
  }
  return pass(name, "200 chains, n in 2..8, horizon 200: every law majorizes the uniform chain's");
}

// Comparison survives products: A <= B pairwise implies equal-length products
// stay ordered, including mixed words ordered factor by factor.
inline VerifyResult suite_product_preservation() {
  using namespace detail_verify;
  const std::string name = "product-preservation";
  std::mt19937_64 rng(202);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 5;
    const Pmf pi = random_pmf(rng, n + 1);
    auto [bda, bdb] = random_monotone_pair(rng, pi);
    const Kernel a = chains::to_kernel(bda), b = chains::to_kernel(bdb);
    const Poset order = Poset::linear(n + 1);
    if (!orders::compare(a, b, pi, order, 1e-10).holds)
      return fail(name, "trial " + std::to_string(trial) + ": base pair not ordered");
    for (int t = 2; t <= 6; ++t)
      if (!orders::compare(kernel_power(a, t), kernel_power(b, t), pi, order, 1e-10).holds)
        return fail(name, "trial " + std::to_string(trial) + ": power t=" + std::to_string(t) + " not ordered");
    for (int t = 2; t <= 4; ++t) {
      Mat lower = Mat::Identity(n + 1, n + 1), upper = lower;
      for (int s = 0; s < t; ++s) {
        const bool use_a = rng() % 2 == 0;
        lower = lower * (use_a ? a : b).rows();
        // wherever the lower word uses A, the upper word may keep A or move up to B
        const bool upgrade = use_a && rng() % 2 == 0;
        upper = upper * ((use_a && !upgrade) ? a : b).rows();
      }
      if (!orders::compare(Kernel(lower), Kernel(upper), pi, order, 1e-10).holds)
        return fail(name, "trial " + std::to_string(trial) + ": mixed word t=" + std::to_string(t) + " not ordered");
    }
  }
  return pass(name, "100 pairs, n <= 6: powers to t=6 and mixed words to t=4 stay ordered");
}

// Separation of the primal chain equals the dual's survival probability.
inline VerifyResult suite_ssd_identity() {
  using namespace detail_verify;
  const std::string name = "ssd-identity";
  // Hand-checked triple for the uniform chain on 0..2.
  {
    const Kernel u = chains::uniform_chain(2);
    const Pmf pi = stationary(u);
    auto tr = mixing::trace(u, point_mass(3, 0), 2);
    const double want[3] = {1.0, 1.0, 0.25};
    for (int t = 0; t <= 2; ++t)
      if (std::abs(tr.rows[t].sep - want[t]) > 1e-12)
        return fail(name, "uniform n=2 separation triple mismatch at t=" + std::to_string(t));
  }
  std::mt19937_64 rng(303);
  double worst = 0.0;
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 7;
    const auto bd = random_no_hold_monotone(rng, n);
    const Pmf pi = chains::bd_stationary(bd);
    const auto dual = duality::ssd_dual(bd, pi);
    const Vec surv = duality::dual_survival(dual, 500);
    const Kernel k = chains::to_kernel(bd);
    Vec mu = Vec::Zero(n + 1);
    mu[0] = 1.0;
    for (int t = 0; t <= 500; ++t) {
      double sep = 0.0;
      for (int i = 0; i <= n; ++i) sep = std::max(sep, 1.0 - mu[i] / pi(i));
      worst = std::max(worst, std::abs(sep - surv[t]));
      if (std::abs(sep - surv[t]) > 1e-10)
        return fail(name, "trial " + std::to_string(trial) + ": sep != survival at t=" + std::to_string(t) +
                              " (diff " + fmt(sep - surv[t]) + ")");
      mu = (mu.transpose() * k.rows()).transpose();
    }
  }
  return pass(name, "100 duals, t <= 500: max |sep - survival| = " + fmt(worst));
}

// Three independent routes to the mixing-time functional agree.
inline VerifyResult suite_tmix_triple() {
  using namespace detail_verify;
  const std::string name = "tmix-triple";
  const Kernel u = chains::uniform_chain(2);
  const Pmf piu = stationary(u);
  const auto bdu = chains::bd_from_kernel(u);
  const double closed = duality::tmix_closed(bdu, piu).value;
  if (std::abs(closed - 8.0 / 3.0) > 1e-12) return fail(name, "uniform n=2 closed form is not 8/3");
  const double oracle = duality::tmix_first_step(u).value;
  if (std::abs(closed - oracle) > 1e-8) return fail(name, "uniform n=2: closed vs first-step diverge");
  const auto mc = duality::tmix_monte_carlo(u, 1'000'000);
  if (std::abs(mc.value - closed) > 4.0 * *mc.se)
    return fail(name, "uniform n=2: Monte Carlo off by " + fmt((mc.value - closed) / *mc.se) + " se");

  const auto bd2 = chains::biased_rw(2.0, 2);
  const Pmf pi2 = chains::bd_stationary(bd2);
  const double closed2 = duality::tmix_closed(bd2, pi2).value;
  const auto mc2 = duality::tmix_monte_carlo(chains::to_kernel(bd2), 1'000'000);
  if (std::abs(mc2.value - closed2) > 4.0 * *mc2.se)
    return fail(name, "biased rho=2 n=2: Monte Carlo off by " + fmt((mc2.value - closed2) / *mc2.se) + " se");

  std::mt19937_64 rng(404);
  double worst = 0.0;
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + trial % 7;
    const auto bd = trial % 2 == 0 ? random_no_hold_monotone(rng, n) : random_monotone_bd(rng, n);
    const Pmf pi = chains::bd_stationary(bd);
    const double a = duality::tmix_closed(bd, pi).value;
    const double b = duality::tmix_first_step(chains::to_kernel(bd)).value;
    worst = std::max(worst, std::abs(a - b));
    if (std::abs(a - b) > 1e-8)
      return fail(name, "trial " + std::to_string(trial) + ": closed vs first-step differ by " + fmt(a - b));
  }
  return pass(name, "closed = first-step on 20 chains (max diff " + fmt(worst) +
                        "); Monte Carlo within 4 se on both pinned chains");
}

// The summed separation trace reproduces the mixing-time functional.
inline VerifyResult suite_sep_sum() {
  using namespace detail_verify;
  const std::string name = "sep-sum";
  std::mt19937_64 rng(505);
  double worst = 0.0;
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 7;
    const auto bd = random_monotone_bd(rng, n);
    const Pmf pi = chains::bd_stationary(bd);
    const double lhs = duality::sep_sum(bd, pi, 1e-14);
    const double rhs = duality::tmix_closed(bd, pi).value;
    worst = std::max(worst, std::abs(lhs - rhs));
    if (std::abs(lhs - rhs) > 1e-7)
      return fail(name, "trial " + std::to_string(trial) + ": sum sep - T = " + fmt(lhs - rhs));
  }
  return pass(name, "50 monotone chains: max |sum sep - T| = " + fmt(worst));
}

namespace detail_verify {

// Mixing time of the alternating symmetric chain with odd n and parameter
// theta, via the parity rank sums.
inline double alternating_tmix(int n, double theta) {
  const double a = chains::detail_path::even_rank_sum(n);
  const double b = chains::detail_path::odd_rank_sum(n);
  return (a / (1.0 - theta) + b / theta) / (n + 1.0);
}

inline double symmetric_tmix(const Vec& p) {
  const Kernel k = chains::symmetric_bd(p);
  return duality::tmix_closed(chains::bd_from_kernel(k), stationary(k)).value;
}

}  // namespace detail_verify

// For odd n the alternating chain at theta_n is the mixing-time optimum:
// both closed forms agree, it beats the uniform chain, and neither a fine
// grid over alternating designs nor random feasible designs do better.
inline VerifyResult suite_theta_optimality() {
  using namespace detail_verify;
  const std::string name = "theta-optimality";
  std::mt19937_64 rng(606);
  for (int n : {3, 5, 7}) {
    const double theta = chains::path_theta(n);
    if (std::abs(theta - chains::path_theta_quadratic(n)) > 1e-12)
      return fail(name, "n=" + std::to_string(n) + ": the two theta forms disagree");
    const double best = alternating_tmix(n, theta);
    const Kernel opt = chains::lw_optimal_path(n);
    const double via_chain = duality::tmix_closed(chains::bd_from_kernel(opt), stationary(opt)).value;
    if (std::abs(best - via_chain) > 1e-9)
      return fail(name, "n=" + std::to_string(n) + ": rank-sum formula vs chain evaluation diverge");
    if (n == 3 && std::abs(best - (2.5 + std::sqrt(6.0))) > 1e-12)
      return fail(name, "n=3 optimum is not 5/2 + sqrt(6)");
    const Kernel u = chains::uniform_chain(n);
    const double uniform_t = duality::tmix_closed(chains::bd_from_kernel(u), stationary(u)).value;
    if (!(best < uniform_t)) return fail(name, "n=" + std::to_string(n) + ": does not beat the uniform chain");
    for (long g = 1; g < 1'000'000; ++g) {
      const double t = alternating_tmix(n, g * 1e-6);
      if (t < best - 1e-9)
        return fail(name, "n=" + std::to_string(n) + ": grid theta=" + fmt(g * 1e-6) + " beats theta_n");
    }
    for (int trial = 0; trial < 200; ++trial) {
      const double t = symmetric_tmix(random_symmetric_p(rng, n));
      if (t < best - 1e-12)
        return fail(name, "n=" + std::to_string(n) + ": random design beats theta_n (trial " +
                              std::to_string(trial) + ")");
    }
  }
  return pass(name, "n in {3,5,7}: theta forms agree to 1e-12; optimum confirmed against grid and 200 designs");
}

// For even n the uniform chain is the mixing-time optimum.
inline VerifyResult suite_even_uniform_optimality() {
  using namespace detail_verify;
  const std::string name = "even-uniform-optimality";
  std::mt19937_64 rng(707);
  for (int n : {2, 4, 6}) {
    const Kernel u = chains::uniform_chain(n);
    const double uniform_t = duality::tmix_closed(chains::bd_from_kernel(u), stationary(u)).value;
    for (int trial = 0; trial < 500; ++trial) {
      const double t = symmetric_tmix(random_symmetric_p(rng, n));
      if (t < uniform_t - 1e-12)
        return fail(name, "n=" + std::to_string(n) + ": random design beats the uniform chain (trial " +
                              std::to_string(trial) + ")");
    }
  }
  return pass(name, "n in {2,4,6}: 500 random designs each, none beats the uniform chain");
}

// Budgeted rung design: sqrt-weights minimize; uniform-rung and parabolic
// rungs tie at n^2(n+2)/6; the n^3 asymptote has constant pi^2/64.
inline VerifyResult suite_ladder_optimum() {
  using namespace detail_verify;
  const std::string name = "ladder-optimum";
  auto rung_design = [](int n, const Vec& pvec) {
    Vec q = Vec::Zero(n + 1), r = Vec::Zero(n + 1), p = Vec::Zero(n + 1);
    for (int i = 0; i < n; ++i) p[i] = pvec[i];
    for (int i = 1; i <= n; ++i) q[i] = pvec[i - 1];  // uniform pi: q_{i} = p_{i-1}
    for (int i = 0; i <= n; ++i) r[i] = std::max(0.0, 1.0 - q[i] - p[i]);
    return chains::BdParams(std::move(q), std::move(r), std::move(p));
  };
  for (int n = 2; n <= 50; ++n) {
    const Pmf pi = uniform_pmf(n + 1);
    const double c = 1.0 / (n + 1.0);
    const auto best = chains::budgeted_min_tmix(pi, c);
    const double want_tie = n * n * (n + 2.0) / 6.0;

    const Vec uniform_rung = Vec::Constant(n, 1.0 / n);
    const double t_uniform = duality::tmix_closed(rung_design(n, uniform_rung), pi).value;
    // parabolic rungs scaled to the same budget: sum_i pi_i p_i = c means sum_i p_i = 1
    Vec parabolic(n);
    double norm = 0.0;
    for (int i = 0; i < n; ++i) norm += (i + 1.0) * (n - i);
    for (int i = 0; i < n; ++i) parabolic[i] = (i + 1.0) * (n - i) / norm;
    const double t_parabolic = duality::tmix_closed(rung_design(n, parabolic), pi).value;

    const double scale = std::max(1.0, want_tie);
    if (std::abs(t_uniform - want_tie) > 1e-8 * scale)
      return fail(name, "n=" + std::to_string(n) + ": uniform-rung value off the closed form");
    if (std::abs(t_parabolic - want_tie) > 1e-8 * scale)
      return fail(name, "n=" + std::to_string(n) + ": parabolic value off the closed form");
    if (n == 2) {
      if (std::abs(best.tmix - want_tie) > 1e-12)
        return fail(name, "n=2: designs should coincide");
    } else if (!(best.tmix < want_tie - 1e-9 * scale)) {
      return fail(name, "n=" + std::to_string(n) + ": sqrt-weights do not beat the rung designs");
    }
    if (n <= 10 || n == 50) {
      const double oracle = duality::tmix_first_step(best.kernel).value;
      if (std::abs(oracle - best.tmix) > 1e-8 * scale)
        return fail(name, "n=" + std::to_string(n) + ": first-step oracle disagrees with the budgeted optimum");
    }
  }
  {
    const int n = 400;
    const auto best = chains::budgeted_min_tmix(uniform_pmf(n + 1), 1.0 / (n + 1.0));
    const double limit = M_PI * M_PI / 64.0;
    const double ratio = best.tmix / (static_cast<double>(n) * n * n);
    if (std::abs(ratio - limit) > 0.02 * limit)
      return fail(name, "n=400: T/n^3 = " + fmt(ratio) + " misses pi^2/64 by more than 2%");
  }
  return pass(name, "n in 2..50: sqrt-weights optimal, rung designs tie at n^2(n+2)/6; n=400 asymptote within 2%");
}

// Spectrum closed form for the biased walk, and the uniform chain as the
// SLEM minimizer among feasible symmetric chains.
inline VerifyResult suite_slem() {
  using namespace detail_verify;
  const std::string name = "slem-suite";
  for (double rho : {0.5, 1.0, 2.0, 4.0}) {
    for (int n = 1; n <= 50; ++n) {
      const auto bd = chains::biased_rw(rho, n);
      const Pmf pi = chains::bd_stationary(bd);
      const auto spec = spectral::spectrum_reversible(chains::to_kernel(bd), pi);
      const double up = rho / (1.0 + rho), down = 1.0 / (1.0 + rho);
      Vec want(n + 1);
      want[0] = 1.0;
      for (int j = 1; j <= n; ++j) want[j] = 2.0 * std::sqrt(up * down) * std::cos(M_PI * j / (n + 1.0));
      std::sort(want.data(), want.data() + n + 1, std::greater<double>());
      for (int j = 0; j <= n; ++j)
        if (std::abs(spec.eigenvalues[j] - want[j]) > 1e-8)
          return fail(name, "rho=" + fmt(rho) + " n=" + std::to_string(n) + ": eigenvalue " + std::to_string(j) +
                                " off by " + fmt(spec.eigenvalues[j] - want[j]));
    }
  }
  std::mt19937_64 rng(909);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 2 + trial % 7;
    const Kernel k = chains::symmetric_bd(random_symmetric_p(rng, n));
    const Kernel u = chains::uniform_chain(n);
    const Pmf pi = uniform_pmf(n + 1);
    if (spectral::slem(k, pi) < spectral::slem(u, pi) - 1e-10)
      return fail(name, "trial " + std::to_string(trial) + ": a symmetric design has smaller SLEM than uniform");
  }
  return pass(name, "biased-walk spectra match to 1e-8 for n <= 50; uniform minimizes SLEM over 500 designs");
}

// Site kernels compare below identity; systematic scans compare below random
// scans; doubly stochastic kernels compare below identity under uniform pi.
inline VerifyResult suite_censoring() {
  using namespace detail_verify;
  const std::string name = "censoring-suite";
  {
    const auto space = structures::SpinSpace::grid(2, 2);
    const Poset order = structures::product_order(space);
    for (double beta : {0.2, 0.5, 1.0}) {
      const Pmf pi = structures::ising_pmf(space, beta);
      if (!structures::is_monotone_system(space, pi))
        return fail(name, "beta=" + fmt(beta) + ": ferromagnetic system not monotone");
      const auto sites = structures::spin_site_kernels(space, pi);
      const Kernel id = identity_kernel(space.states()).with_stationary(pi);
      for (size_t v = 0; v < sites.size(); ++v)
        if (!orders::compare(sites[v], id, pi, order, 1e-10).holds)
          return fail(name, "beta=" + fmt(beta) + ": site kernel " + std::to_string(v) + " not below identity");
      if (!orders::compare(structures::systematic_scan(sites), structures::random_scan(sites), pi, order, 1e-10)
               .holds)
        return fail(name, "beta=" + fmt(beta) + ": systematic scan not below random scan");
    }
  }
  for (int n : {3, 4}) {
    const structures::PermutationSpace space(n);
    const Poset order = structures::bruhat_poset(space);
    for (double p : {0.3, 0.5, 0.7}) {
      const Pmf pi = structures::shuffle_stationary(space, p);
      const auto sites = structures::shuffle_site_kernels(space, p);
      const Kernel id = identity_kernel(space.states()).with_stationary(pi);
      for (size_t s = 0; s < sites.size(); ++s)
        if (!orders::compare(sites[s], id, pi, order, 1e-10).holds)
          return fail(name, "n=" + std::to_string(n) + " p=" + fmt(p) + ": site kernel " + std::to_string(s + 1) +
                                " not below identity");
      if (!orders::compare(structures::systematic_scan(sites), structures::random_scan(sites), pi, order, 1e-10)
               .holds)
        return fail(name, "n=" + std::to_string(n) + " p=" + fmt(p) + ": systematic scan not below random scan");
    }
  }
  for (int trial = 0; trial < 200; ++trial) {
    const int m = 2 + trial % 7;
    const Kernel k = structures::doubly_stochastic_sample(m, 1000 + trial, 3 + trial % 6);
    const Pmf pi = uniform_pmf(m);
    if (!orders::compare(k, identity_kernel(m).with_stationary(pi), pi, Poset::linear(m), 1e-10).holds)
      return fail(name, "doubly stochastic trial " + std::to_string(trial) + " not below identity");
  }
  return pass(name, "site kernels and scans ordered on both testbeds; 200 doubly stochastic kernels below identity");
}

// Distance orderings along traces: the uniform chain mixes fastest in tv,
// separation, and l2 among monotone symmetric chains; separation slows as the
// walk's bias flattens toward uniform.
inline VerifyResult suite_distance_orderings() {
  using namespace detail_verify;
  const std::string name = "distance-orderings";
  std::mt19937_64 rng(1111);
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 7;
    const Kernel l = chains::symmetric_bd(random_monotone_symmetric_p(rng, n));
    const Kernel u = chains::uniform_chain(n);
    const auto tl = mixing::trace(l, point_mass(n + 1, 0), 500);
    const auto tu = mixing::trace(u, point_mass(n + 1, 0), 500);
    for (int t = 0; t <= 500; ++t) {
      if (tu.rows[t].tv > tl.rows[t].tv + 1e-10)
        return fail(name, "trial " + std::to_string(trial) + ": tv ordering fails at t=" + std::to_string(t));
      if (tu.rows[t].sep > tl.rows[t].sep + 1e-10)
        return fail(name, "trial " + std::to_string(trial) + ": sep ordering fails at t=" + std::to_string(t));
      if (tu.rows[t].l2 > tl.rows[t].l2 + 1e-10)
        return fail(name, "trial " + std::to_string(trial) + ": l2 ordering fails at t=" + std::to_string(t));
    }
  }
  for (int trial = 0; trial < 50; ++trial) {
    const int n = 2 + trial % 7;
    const double r2 = trial % 5 == 0 ? 1.0 : unif(rng, 0.1, 1.0);  // include the uniform chain itself
    const double r1 = unif(rng, 0.05, r2);
    auto sep_trace = [&](double rho) {
      const auto bd = chains::biased_rw(rho, n);
      return mixing::trace(chains::to_kernel(bd), point_mass(n + 1, 0), 500);
    };
    const auto t1 = sep_trace(r1), t2 = sep_trace(r2);
    for (int t = 0; t <= 500; ++t)
      if (t1.rows[t].sep > t2.rows[t].sep + 1e-10)
        return fail(name, "trial " + std::to_string(trial) + ": separation not monotone in the bias at t=" +
                              std::to_string(t));
  }
  return pass(name, "50 monotone chains: uniform fastest in tv/sep/l2; 50 bias pairs: separation monotone");
}

inline const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {
      "path-majorization", "product-preservation", "ssd-identity",       "tmix-triple",
      "sep-sum",           "theta-optimality",     "even-uniform-optimality",
      "ladder-optimum",    "slem-suite",           "censoring-suite",    "distance-orderings",
  };
  return names;
}

inline VerifyResult run_suite(const std::string& name) {
  static const std::map<std::string, std::function<VerifyResult()>> table = {
      {"path-majorization", suite_path_majorization},
      {"product-preservation", suite_product_preservation},
      {"ssd-identity", suite_ssd_identity},
      {"tmix-triple", suite_tmix_triple},
      {"sep-sum", suite_sep_sum},
      {"theta-optimality", suite_theta_optimality},
      {"even-uniform-optimality", suite_even_uniform_optimality},
      {"ladder-optimum", suite_ladder_optimum},
      {"slem-suite", suite_slem},
      {"censoring-suite", suite_censoring},
      {"distance-orderings", suite_distance_orderings},
  };
  auto it = table.find(name);
  if (it == table.end()) throw validation_error("verify: unknown suite \"" + name + "\"");
  return it->second();
}

inline std::vector<VerifyResult> run_all() {
  std::vector<VerifyResult> out;
  for (const auto& n : suite_names()) out.push_back(run_suite(n));
  return out;
}

}  // namespace mixcomp::verify
