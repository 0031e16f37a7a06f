#pragma once
// Birth-and-death chains on the path 0..n and the designed kernels built on
// them: symmetric chains, the holding-free chain adapted to a log-concave pmf,
// biased walks, edge-rate parameterizations, and the mixing-time-optimal
// designs (unconstrained path, non-decreasing pi, budgeted rung sums).

#include "mixcomp/core.hpp"

#include <limits>

namespace mixcomp::chains {

// Transition probabilities on the path: down q_i, hold r_i, up p_i.
// Invariants: q_0 = 0, p_n = 0, entries in [0,1], q+r+p = 1 per state.
struct BdParams {
  Vec q, r, p;

  BdParams(Vec q_in, Vec r_in, Vec p_in) : q(std::move(q_in)), r(std::move(r_in)), p(std::move(p_in)) {
    const int m = static_cast<int>(q.size());
    if (m == 0 || r.size() != m || p.size() != m)
      throw validation_error("bd: q, r, p must share a nonzero length");
    if (q[0] != 0.0) throw validation_error("bd: q_0 must be 0");
    if (p[m - 1] != 0.0) throw validation_error("bd: p_n must be 0");
    for (int i = 0; i < m; ++i) {
      for (double e : {q[i], r[i], p[i]})
        if (!std::isfinite(e) || e < 0.0 || e > 1.0)
          throw validation_error(detail::describe_index("bd: probability outside [0,1] at state ", i));
      if (std::abs(q[i] + r[i] + p[i] - 1.0) > tol::kSum)
        throw validation_error(detail::describe_index("bd: q+r+p != 1 at state ", i));
    }
  }

  int states() const { return static_cast<int>(q.size()); }
  int top() const { return states() - 1; }
};

// All interior steps possible: p_i > 0 below the top, q_i > 0 above the bottom.
inline bool is_irreducible(const BdParams& bd) {
  for (int i = 0; i < bd.top(); ++i)
    if (!(bd.p[i] > 0.0 && bd.q[i + 1] > 0.0)) return false;
  return true;
}

// Stochastic monotonicity is equivalent to p_i + q_{i+1} <= 1 for every edge.
inline bool is_monotone(const BdParams& bd, double tolerance = tol::kCompare) {
  for (int i = 0; i < bd.top(); ++i)
    if (bd.p[i] + bd.q[i + 1] > 1.0 + tolerance) return false;
  return true;
}

inline Kernel to_kernel(const BdParams& bd) {
  const int m = bd.states();
  Mat k = Mat::Zero(m, m);
  for (int i = 0; i < m; ++i) {
    if (i > 0) k(i, i - 1) = bd.q[i];
    k(i, i) = bd.r[i];
    if (i + 1 < m) k(i, i + 1) = bd.p[i];
  }
  return Kernel(std::move(k));
}

inline BdParams bd_from_kernel(const Kernel& k) {
  const int m = k.size();
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      if (std::abs(i - j) > 1 && k(i, j) != 0.0)
        throw validation_error("bd_from_kernel: kernel is not tridiagonal");
  Vec q = Vec::Zero(m), r(m), p = Vec::Zero(m);
  for (int i = 0; i < m; ++i) {
    if (i > 0) q[i] = k(i, i - 1);
    r[i] = k(i, i);
    if (i + 1 < m) p[i] = k(i, i + 1);
  }
  return BdParams(std::move(q), std::move(r), std::move(p));
}

// Stationary pmf via detailed balance: pi_{i+1}/pi_i = p_i/q_{i+1}.
inline Pmf bd_stationary(const BdParams& bd) {
  if (!is_irreducible(bd)) throw validation_error("bd_stationary: chain is not irreducible");
  const int m = bd.states();
  Vec w(m);
  w[0] = 1.0;
  for (int i = 0; i + 1 < m; ++i) w[i + 1] = w[i] * bd.p[i] / bd.q[i + 1];
  w /= w.sum();
  return Pmf(w);
}

// Symmetric chain on 0..n from edge probabilities p (length n): K(i, i+1) =
// K(i+1, i) = p_i. Feasibility: p_{i-1} + p_i <= 1 so holding stays
// nonnegative. Stationary pmf is uniform.
inline Kernel symmetric_bd(const Vec& p) {
  const int n = static_cast<int>(p.size());
  if (n == 0) throw validation_error("symmetric_bd: need at least one edge");
  for (int i = 0; i <= n; ++i) {
    double prev = i > 0 ? p[i - 1] : 0.0;
    double next = i < n ? p[i] : 0.0;
    if (!(prev >= 0.0 && next >= 0.0))
      throw validation_error(detail::describe_index("symmetric_bd: negative probability at state ", i));
    if (prev + next > 1.0 + 1e-15)
      throw validation_error(detail::describe_index("symmetric_bd: holding probability negative at state ", i));
  }
  Mat k = Mat::Zero(n + 1, n + 1);
  for (int i = 0; i < n; ++i) {
    k(i, i + 1) = p[i];
    k(i + 1, i) = p[i];
  }
  for (int i = 0; i <= n; ++i) {
    double prev = i > 0 ? p[i - 1] : 0.0;
    double next = i < n ? p[i] : 0.0;
    k(i, i) = std::max(0.0, 1.0 - prev - next);
  }
  return Kernel(std::move(k)).with_stationary(uniform_pmf(n + 1));
}

inline Kernel uniform_chain(int n) {
  if (n < 1) throw validation_error("uniform_chain: need n >= 1");
  return symmetric_bd(Vec::Constant(n, 0.5));
}

// Holding-free-in-the-interior chain adapted to a log-concave pmf:
//   q_i = pi_{i-1} / (pi_{i-1} + pi_i),
//   p_i = pi_{i+1} / (pi_i + pi_{i+1}),
//   r_i = (pi_i^2 - pi_{i-1} pi_{i+1}) / ((pi_{i-1} + pi_i)(pi_i + pi_{i+1})).
// Reversible with stationary pi, stochastically monotone, and satisfies
// p_i + q_{i+1} = 1 along every edge. Log-concavity (pi_i^2 >= pi_{i-1}
// pi_{i+1}) keeps r_i nonnegative; tiny negative round-off is clamped.
inline BdParams fmmc_logconcave(const Pmf& pi) {
  if (!pi.strictly_positive()) throw validation_error("fmmc_logconcave: pi must be strictly positive");
  const int m = pi.size();
  for (int i = 1; i + 1 < m; ++i)
    if (pi(i) * pi(i) - pi(i - 1) * pi(i + 1) < -1e-12 * pi(i) * pi(i))
      throw validation_error(detail::describe_index("fmmc_logconcave: pi is not log-concave at index ", i));
  Vec q = Vec::Zero(m), r(m), p = Vec::Zero(m);
  for (int i = 0; i < m; ++i) {
    double lo = i > 0 ? pi(i - 1) : 0.0;
    double hi = i + 1 < m ? pi(i + 1) : 0.0;
    double dn = (lo + pi(i)) * (pi(i) + hi);
    if (i > 0) q[i] = lo / (lo + pi(i));
    if (i + 1 < m) p[i] = hi / (pi(i) + hi);
    double ri = (pi(i) * pi(i) - lo * hi) / dn;
    if (ri < 0.0) {
      if (ri < -1e-12) throw validation_error(detail::describe_index("fmmc_logconcave: negative holding at state ", i));
      ri = 0.0;
    }
    r[i] = ri;
  }
  return BdParams(std::move(q), std::move(r), std::move(p));
}

// Nearest-neighbour walk with up/down ratio rho: interior p = rho/(1+rho),
// q = 1/(1+rho), no interior holding; the walk holds at a boundary instead of
// stepping out. Stationary pmf is proportional to rho^i.
inline BdParams biased_rw(double rho, int n) {
  if (!(rho > 0.0) || !std::isfinite(rho)) throw validation_error("biased_rw: rho must be positive");
  if (n < 1) throw validation_error("biased_rw: need n >= 1");
  const double up = rho / (1.0 + rho);
  const double down = 1.0 / (1.0 + rho);
  Vec q = Vec::Zero(n + 1), r = Vec::Zero(n + 1), p = Vec::Zero(n + 1);
  for (int i = 0; i <= n; ++i) {
    if (i > 0) q[i] = down;
    if (i < n) p[i] = up;
  }
  r[0] = down;
  r[n] = up;
  return BdParams(std::move(q), std::move(r), std::move(p));
}

// Edge-rate parameterization: w_i = pi_i p_i = pi_{i+1} q_{i+1} for the edge
// (i, i+1). Feasibility: w_{i-1} + w_i <= pi_i (holding nonnegative).
struct WParams {
  Vec w;
  Pmf pi;
};

// Chain with the given edge rates. Zero rates are allowed; the resulting
// kernel is then not irreducible, which downstream ergodic operations reject.
inline BdParams from_w(const WParams& params) {
  const int m = params.pi.size();
  if (static_cast<int>(params.w.size()) != m - 1)
    throw validation_error("from_w: need exactly one rate per edge");
  Vec q = Vec::Zero(m), r(m), p = Vec::Zero(m);
  for (int i = 0; i < m; ++i) {
    double wl = i > 0 ? params.w[i - 1] : 0.0;
    double wr = i < m - 1 ? params.w[i] : 0.0;
    if (wl < 0.0 || wr < 0.0) throw validation_error(detail::describe_index("from_w: negative rate at edge ", i));
    if (wl + wr > params.pi(i) + 1e-12)
      throw validation_error(detail::describe_index("from_w: rates exceed pi at state ", i));
    if (i > 0) q[i] = wl / params.pi(i);
    if (i < m - 1) p[i] = wr / params.pi(i);
    r[i] = std::max(0.0, 1.0 - (wl + wr) / params.pi(i));
  }
  return BdParams(std::move(q), std::move(r), std::move(p));
}

// Rank sums entering the optimal alternating path design: over states k of one
// parity, the sum of (k+1)(n-k).
namespace detail_path {
inline double even_rank_sum(int n) { return (n + 1.0) * (n * n + 2.0 * n + 3.0) / 12.0; }
inline double odd_rank_sum(int n) { return (n + 1.0) * (n - 1.0) * (n + 3.0) / 12.0; }
}  // namespace detail_path

// Optimal alternating probability for odd n: minimizes
// [a_n/(1-theta) + b_n/theta] with a_n, b_n the parity rank sums.
inline double path_theta(int n) {
  if (n < 1 || n % 2 == 0) throw validation_error("path_theta: defined for odd n >= 1");
  if (n == 1) return 0.0;  // two-state path: the swap chain is optimal
  return 1.0 / (1.0 + std::sqrt(detail_path::even_rank_sum(n) / detail_path::odd_rank_sum(n)));
}

// Same value through the quadratic closed form in m = n + 1, arranged to
// avoid cancellation: theta = (m^2-4) / (sqrt((m^2+2)(m^2-4)) + (m^2-4)).
inline double path_theta_quadratic(int n) {
  if (n < 1 || n % 2 == 0) throw validation_error("path_theta_quadratic: defined for odd n >= 1");
  const double m2 = static_cast<double>(n + 1) * (n + 1);
  if (m2 == 4.0) return 0.0;
  return (m2 - 4.0) / (std::sqrt((m2 + 2.0) * (m2 - 4.0)) + (m2 - 4.0));
}

// Mixing-time-optimal symmetric chain on the path 0..n: the uniform chain for
// even n; for odd n the alternating chain p_k = 1-theta_n (k even), theta_n
// (k odd).
inline Kernel lw_optimal_path(int n) {
  if (n < 1) throw validation_error("lw_optimal_path: need n >= 1");
  if (n % 2 == 0) return uniform_chain(n);
  const double theta = path_theta(n);
  Vec p(n);
  for (int k = 0; k < n; ++k) p[k] = (k % 2 == 0) ? 1.0 - theta : theta;
  return symmetric_bd(p);
}

struct LwOptimum {
  Kernel kernel;
  double w_star;
  double tmix;
};

namespace detail_path {

// Objective of the holding-free design for non-decreasing pi, parameterized by
// the first edge rate w: w_i = (-1)^i w + a_i with a_i = pi_i - a_{i-1}.
// Returns +inf when any edge rate leaves (0, inf).
inline double lw_objective(const Pmf& pi, const Vec& h, double w) {
  const int n = pi.size() - 1;
  double a = 0.0, sign = 1.0, total = 0.0;
  for (int i = 0; i < n; ++i) {
    double wi = sign * w + a;
    if (!(wi > 0.0)) return std::numeric_limits<double>::infinity();
    total += h[i] * (1.0 - h[i]) / wi;
    a = pi(i + 1) - a;
    sign = -sign;
  }
  return total;
}

}  // namespace detail_path

// Fastest-mixing chain without interior holding for a non-decreasing pmf:
// golden-section search of the strictly convex edge-rate objective over
// w in [0, pi_0], endpoints included.
inline LwOptimum fmmc_lw(const Pmf& pi) {
  const int m = pi.size();
  if (m < 2) throw validation_error("fmmc_lw: need at least two states");
  for (int i = 0; i + 1 < m; ++i)
    if (pi(i + 1) < pi(i) - 1e-12)
      throw validation_error(detail::describe_index("fmmc_lw: pi decreases at index ", i));
  const Vec h = cdf(pi);
  auto f = [&](double w) { return detail_path::lw_objective(pi, h, w); };

  const double golden = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = pi(0);
  double x1 = b - golden * (b - a), x2 = a + golden * (b - a);
  double f1 = f(x1), f2 = f(x2);
  while (b - a > 1e-12) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - golden * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + golden * (b - a);
      f2 = f(x2);
    }
  }
  double w_star = 0.5 * (a + b);
  double best = f(w_star);
  for (double endpoint : {0.0, pi(0)})
    if (f(endpoint) < best) {
      best = f(endpoint);
      w_star = endpoint;
    }

  Vec w(m - 1);
  double acc = 0.0, sign = 1.0;
  for (int i = 0; i + 1 < m; ++i) {
    w[i] = sign * w_star + acc;
    if (w[i] < 0.0) w[i] = 0.0;  // boundary round-off
    acc = pi(i + 1) - acc;
    sign = -sign;
  }
  return LwOptimum{to_kernel(from_w(WParams{std::move(w), pi})), w_star, best};
}

struct BudgetedDesign {
  Kernel kernel;
  double tmix;
};

// Minimum mixing time over chains with stationary pi subject to the budget
// sum_k pi_k p_k = c, where 0 < c <= min_i pi_i keeps every holding
// probability nonnegative. The optimum puts p_k proportional to
// sqrt(H_k (1 - H_k)) / pi_k and achieves T = [sum_k sqrt(H_k(1-H_k))]^2 / c.
inline BudgetedDesign budgeted_min_tmix(const Pmf& pi, double c) {
  const int m = pi.size();
  if (m < 2) throw validation_error("budgeted_min_tmix: need at least two states");
  if (!(c > 0.0)) throw validation_error("budgeted_min_tmix: budget must be positive");
  double min_pi = pi(0);
  for (int i = 1; i < m; ++i) min_pi = std::min(min_pi, pi(i));
  if (c > min_pi + 1e-15) throw validation_error("budgeted_min_tmix: budget exceeds min pi");
  const Vec h = cdf(pi);
  const int n = m - 1;
  Vec root(n);
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    root[k] = std::sqrt(std::max(0.0, h[k] * (1.0 - h[k])));
    total += root[k];
  }
  Vec q = Vec::Zero(m), r(m), p = Vec::Zero(m);
  for (int i = 0; i < m; ++i) {
    if (i < n) p[i] = c * root[i] / (pi(i) * total);
    if (i > 0) q[i] = c * root[i - 1] / (pi(i) * total);
    r[i] = std::max(0.0, 1.0 - p[i] - q[i]);
  }
  double tmix = total * total / c;
  return BudgetedDesign{to_kernel(BdParams(std::move(q), std::move(r), std::move(p))), tmix};
}

}  // namespace mixcomp::chains
