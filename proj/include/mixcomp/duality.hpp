#pragma once
// Strong stationary duality for monotone birth-and-death chains started at 0,
// mean hitting times, and the mixing-time functional T = sum over states of
// pi(j) E T_j (expected steps of the best stationary-target stopping rule).
// Three independent routes to T are kept deliberately separate: the closed
// form, a first-step linear-solve oracle, and seeded simulation.

#include "mixcomp/chains.hpp"
#include "mixcomp/core.hpp"
#include "mixcomp/spectral.hpp"

#include <random>

namespace mixcomp::duality {

// Fixed default seed so published simulation numbers reproduce bit-exactly.
inline constexpr uint64_t kDefaultSeed = 0x9E3779B97F4A7C15ull;

namespace detail_dual {

// Detailed balance pins pi as the stationary pmf of the path chain.
inline void require_bd_stationary(const chains::BdParams& bd, const Pmf& pi) {
  if (pi.size() != bd.states()) throw validation_error("bd: pmf length mismatch");
  for (int i = 0; i + 1 < bd.states(); ++i)
    if (std::abs(pi(i) * bd.p[i] - pi(i + 1) * bd.q[i + 1]) > tol::kStationary)
      throw validation_error("bd: pi is not stationary (detailed balance fails at edge " + std::to_string(i) + ")");
}

// Tail sums 1 - H_i computed directly to avoid cancellation near the top.
inline Vec tail_mass(const Pmf& pi) {
  Vec tail(pi.size());
  double acc = 0.0;
  for (int i = pi.size() - 1; i >= 0; --i) {
    tail[i] = acc;
    acc += pi(i);
  }
  return tail;
}

inline uint64_t splitmix64(uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

}  // namespace detail_dual

// Absorbing dual walk on 0..n: from i < n step up with p_star[i], down with
// q_star[i]; state n is absorbing. When the primal chain satisfies
// p_i + q_{i+1} = 1 on every edge, the dual holds nowhere below n.
struct DualChain {
  Vec q_star, p_star;

  DualChain(Vec q_in, Vec p_in) : q_star(std::move(q_in)), p_star(std::move(p_in)) {
    const int m = static_cast<int>(q_star.size());
    if (m == 0 || p_star.size() != m) throw validation_error("dual: q*, p* must share a nonzero length");
    if (q_star[0] != 0.0) throw validation_error("dual: q*_0 must be 0");
    for (int i = 0; i < m; ++i)
      if (q_star[i] < 0.0 || p_star[i] < 0.0 || q_star[i] + p_star[i] > 1.0 + 1e-12)
        throw validation_error(detail::describe_index("dual: invalid step probabilities at state ", i));
  }

  int states() const { return static_cast<int>(q_star.size()); }
  int top() const { return states() - 1; }
};

// Dual of an irreducible monotone path chain started at 0, defined when
// p_i + q_{i+1} = 1 on every edge (checked to 1e-12):
//   q*_i = (H_{i-1}/H_i) p_i,  p*_i = (H_{i+1}/H_i) q_{i+1},
// with H the cumulative sums of pi. The separation of the primal chain at
// time t equals the dual's survival probability P(T > t), T the hitting time
// of the top state.
inline DualChain ssd_dual(const chains::BdParams& bd, const Pmf& pi) {
  if (!chains::is_irreducible(bd)) throw validation_error("ssd_dual: chain is not irreducible");
  detail_dual::require_bd_stationary(bd, pi);
  const int m = bd.states();
  for (int i = 0; i + 1 < m; ++i)
    if (std::abs(bd.p[i] + bd.q[i + 1] - 1.0) > 1e-12)
      throw validation_error(detail::describe_index("ssd_dual: p_i + q_{i+1} != 1 at edge ", i));
  const Vec h = cdf(pi);
  Vec q = Vec::Zero(m), p = Vec::Zero(m);
  for (int i = 0; i + 1 < m; ++i) {
    q[i] = (i > 0 ? h[i - 1] / h[i] : 0.0) * bd.p[i];
    p[i] = h[i + 1] / h[i] * bd.q[i + 1];
  }
  return DualChain(std::move(q), std::move(p));
}

// P(T > t) for t = 0..horizon, T the dual's absorption time at the top,
// started at state 0.
inline Vec dual_survival(const DualChain& dual, int horizon) {
  if (horizon < 0) throw validation_error("dual_survival: negative horizon");
  const int m = dual.states();
  Vec mu = Vec::Zero(m), next = Vec::Zero(m);
  mu[0] = 1.0;
  Vec out(horizon + 1);
  for (int t = 0; t <= horizon; ++t) {
    out[t] = std::max(0.0, 1.0 - mu[m - 1]);
    if (t == horizon) break;
    next.setZero();
    for (int i = 0; i + 1 < m; ++i) {
      const double hold = std::max(0.0, 1.0 - dual.q_star[i] - dual.p_star[i]);
      if (i > 0) next[i - 1] += mu[i] * dual.q_star[i];
      next[i] += mu[i] * hold;
      next[i + 1] += mu[i] * dual.p_star[i];
    }
    next[m - 1] += mu[m - 1];  // absorbing top
    mu.swap(next);
  }
  return out;
}

// Mean time for the path chain to first hit `target`, started at 0:
// sum over i < target of H_i / (pi_i p_i).
inline double hitting_time_mean(const chains::BdParams& bd, const Pmf& pi, int target) {
  if (target < 0 || target >= bd.states()) throw validation_error("hitting_time_mean: target out of range");
  detail_dual::require_bd_stationary(bd, pi);
  const Vec h = cdf(pi);
  double total = 0.0;
  for (int i = 0; i < target; ++i) {
    if (!(bd.p[i] > 0.0))
      throw validation_error(detail::describe_index("hitting_time_mean: target unreachable, p = 0 at state ", i));
    total += h[i] / (pi(i) * bd.p[i]);
  }
  return total;
}

// Rate-parameterized variant: per-edge birth rates lambda_i in place of the
// one-step probabilities, giving sum_{i<target} H_i / (pi_i lambda_i).
inline double hitting_time_mean(const Pmf& pi, const Vec& birth_rates, int target) {
  if (target < 0 || target >= pi.size()) throw validation_error("hitting_time_mean: target out of range");
  if (birth_rates.size() != pi.size() - 1)
    throw validation_error("hitting_time_mean: need one birth rate per edge");
  const Vec h = cdf(pi);
  double total = 0.0;
  for (int i = 0; i < target; ++i) {
    if (!(birth_rates[i] > 0.0))
      throw validation_error(detail::describe_index("hitting_time_mean: target unreachable, rate 0 at state ", i));
    total += h[i] / (pi(i) * birth_rates[i]);
  }
  return total;
}

struct TmixReport {
  enum class Method { closed_form, first_step_oracle, monte_carlo };
  double value = 0.0;
  Method method = Method::closed_form;
  std::optional<double> se;  // standard error, monte_carlo only
};

inline const char* method_name(TmixReport::Method m) {
  switch (m) {
    case TmixReport::Method::closed_form: return "closed_form";
    case TmixReport::Method::first_step_oracle: return "first_step_oracle";
    case TmixReport::Method::monte_carlo: return "monte_carlo";
  }
  return "?";
}

// Closed form for irreducible path chains: T = sum_i H_i (1 - H_i) / (pi_i p_i).
inline TmixReport tmix_closed(const chains::BdParams& bd, const Pmf& pi) {
  if (!chains::is_irreducible(bd)) throw validation_error("tmix_closed: chain is not irreducible");
  detail_dual::require_bd_stationary(bd, pi);
  const Vec h = cdf(pi);
  const Vec tail = detail_dual::tail_mass(pi);
  double total = 0.0;
  for (int i = 0; i + 1 < bd.states(); ++i) total += h[i] * tail[i] / (pi(i) * bd.p[i]);
  return TmixReport{total, TmixReport::Method::closed_form, std::nullopt};
}

// First-step oracle for any irreducible kernel: solve the mean hitting time
// of each target j from 0 as a dense linear system, then average targets
// under the stationary pmf (the stationary-target stopping rule).
inline TmixReport tmix_first_step(const Kernel& k) {
  if (!is_irreducible(k)) throw validation_error("tmix_first_step: kernel is reducible");
  const Pmf pi = stationary(k);
  const int n = k.size();
  double total = 0.0;
  for (int j = 1; j < n; ++j) {  // E T_0 from 0 is 0
    std::vector<int> keep;
    keep.reserve(n - 1);
    for (int i = 0; i < n; ++i)
      if (i != j) keep.push_back(i);
    Mat a = Mat::Zero(n - 1, n - 1);
    for (int r = 0; r < n - 1; ++r)
      for (int c = 0; c < n - 1; ++c) a(r, c) = (r == c ? 1.0 : 0.0) - k(keep[r], keep[c]);
    Vec x = Eigen::PartialPivLU<Mat>(a).solve(Vec::Ones(n - 1));
    total += pi(j) * x[0];  // state 0 is always first in keep
  }
  return TmixReport{total, TmixReport::Method::first_step_oracle, std::nullopt};
}

// Simulation of the stationary-target rule: draw the target from pi, walk
// from 0 until hitting it. Samples are split into 16 fixed batches with
// seeds derived from (seed, batch); merging in batch order keeps the result
// bit-exact for a given seed regardless of how batches would be scheduled.
inline TmixReport tmix_monte_carlo(const Kernel& k, long samples, uint64_t seed = kDefaultSeed) {
  if (samples < 2) throw validation_error("tmix_monte_carlo: need at least 2 samples");
  if (!is_irreducible(k)) throw validation_error("tmix_monte_carlo: kernel is reducible");
  if (!is_aperiodic(k)) throw validation_error("tmix_monte_carlo: kernel is periodic");
  const Pmf pi = stationary(k);
  const int n = k.size();
  std::vector<std::discrete_distribution<int>> step(n);
  for (int i = 0; i < n; ++i) {
    std::vector<double> row(n);
    for (int j = 0; j < n; ++j) row[j] = k(i, j);
    step[i] = std::discrete_distribution<int>(row.begin(), row.end());
  }
  std::vector<double> pw(pi.weights().data(), pi.weights().data() + n);
  std::discrete_distribution<int> target_draw(pw.begin(), pw.end());

  constexpr int kBatches = 16;
  double sum = 0.0, sumsq = 0.0;
  long done = 0;
  for (int b = 0; b < kBatches; ++b) {
    const long batch = samples / kBatches + (b < samples % kBatches ? 1 : 0);
    std::mt19937_64 rng(detail_dual::splitmix64(seed ^ (0xD1B54A32D192ED03ull * (b + 1))));
    for (long s = 0; s < batch; ++s) {
      const int target = target_draw(rng);
      int state = 0;
      long steps = 0;
      while (state != target) {
        state = step[state](rng);
        ++steps;
      }
      sum += static_cast<double>(steps);
      sumsq += static_cast<double>(steps) * static_cast<double>(steps);
    }
    done += batch;
  }
  const double mean = sum / done;
  const double var = std::max(0.0, (sumsq - sum * sum / done) / (done - 1));
  return TmixReport{mean, TmixReport::Method::monte_carlo, std::sqrt(var / done)};
}

// Sum of separations sum_t sep(t) for an irreducible monotone path chain
// started at 0; equals the mixing-time functional. The infinite sum is
// truncated at the first t with sep(t) < 1e-14 or with geometric tail bound
// slem^t / (1 - slem) below tail_tol; t is capped at 1e7.
inline double sep_sum(const chains::BdParams& bd, const Pmf& pi, double tail_tol = 1e-10) {
  if (!chains::is_irreducible(bd)) throw validation_error("sep_sum: chain is not irreducible");
  if (!chains::is_monotone(bd, 1e-12)) throw validation_error("sep_sum: chain is not monotone");
  detail_dual::require_bd_stationary(bd, pi);
  const Kernel k = chains::to_kernel(bd);
  const double lam = spectral::slem(k, pi);
  const int m = bd.states();
  Vec mu = Vec::Zero(m);
  mu[0] = 1.0;
  double total = 0.0;
  double lam_pow = 1.0;
  constexpr long kCap = 10'000'000;
  for (long t = 0;; ++t) {
    if (t > kCap) throw numeric_error("sep_sum: truncation cap of 1e7 steps reached");
    double sep = -std::numeric_limits<double>::infinity();
    for (int i = 0; i < m; ++i) sep = std::max(sep, 1.0 - mu[i] / pi(i));
    if (sep < 1e-14) break;
    if (lam_pow / (1.0 - lam) < tail_tol) break;
    total += sep;
    mu = (mu.transpose() * k.rows()).transpose();
    lam_pow *= lam;
  }
  return total;
}

// Dual up-step probability profile of the ratio-rho walk:
// f_i(rho) = (1 + rho + ... + rho^{i+1}) / ((1 + ... + rho^i)(1 + rho)),
// evaluated in the geometric-sum form, which is finite and smooth at rho = 1
// where it takes the value (i+2) / (2(i+1)). Symmetric under rho <-> 1/rho.
inline double dual_birth_profile(int i, double rho) {
  if (i < 0) throw validation_error("dual_birth_profile: need i >= 0");
  if (!(rho > 0.0) || !std::isfinite(rho)) throw validation_error("dual_birth_profile: rho must be positive");
  double num = 0.0, den = 0.0, pw = 1.0;
  for (int kk = 0; kk <= i; ++kk) {
    den += pw;
    pw *= rho;
  }
  num = den + pw;  // adds the rho^{i+1} term
  return num / (den * (1.0 + rho));
}

}  // namespace mixcomp::duality
