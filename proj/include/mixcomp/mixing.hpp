#pragma once
// Distances to stationarity and their traces along a chain's evolution.
// Every metric here is Schur-convex as a function of the probability ratios
// rho_i/pi_i when pi is uniform, which is what turns majorization statements
// into distance statements.

#include "mixcomp/chains.hpp"
#include "mixcomp/core.hpp"
#include "mixcomp/orders.hpp"

#include <limits>

namespace mixcomp::mixing {

enum class Metric { tv, sep, l2, lp, linf, hellinger, kl_pi_rho, kl_rho_pi };

// Distance from rho to the (strictly positive) reference pmf pi.
// kl_pi_rho is +infinity when rho has a zero entry; kl_rho_pi uses 0 log 0 = 0.
inline double distance(const Pmf& rho, const Pmf& pi, Metric metric, double p = 2.0) {
  const int n = rho.size();
  if (pi.size() != n) throw validation_error("distance: pmf length mismatch");
  if (!pi.strictly_positive()) throw validation_error("distance: reference pmf must be strictly positive");
  switch (metric) {
    case Metric::tv: {
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += std::abs(rho(i) - pi(i));
      return 0.5 * s;
    }
    case Metric::sep: {
      double worst = -std::numeric_limits<double>::infinity();
      for (int i = 0; i < n; ++i) worst = std::max(worst, 1.0 - rho(i) / pi(i));
      return worst;
    }
    case Metric::l2:
      return distance(rho, pi, Metric::lp, 2.0);
    case Metric::lp: {
      if (!(p >= 1.0)) throw validation_error("distance: lp exponent must be >= 1");
      double s = 0.0;
      for (int i = 0; i < n; ++i) s += pi(i) * std::pow(std::abs(rho(i) / pi(i) - 1.0), p);
      return std::pow(s, 1.0 / p);
    }
    case Metric::linf: {
      double worst = 0.0;
      for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(rho(i) / pi(i) - 1.0));
      return worst;
    }
    case Metric::hellinger: {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        double d = std::sqrt(rho(i) / pi(i)) - 1.0;
        s += pi(i) * d * d;
      }
      return 0.5 * s;
    }
    case Metric::kl_pi_rho: {
      double s = 0.0;
      for (int i = 0; i < n; ++i) {
        if (rho(i) == 0.0) return std::numeric_limits<double>::infinity();
        s += pi(i) * std::log(pi(i) / rho(i));
      }
      return std::max(0.0, s);
    }
    case Metric::kl_rho_pi: {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        if (rho(i) > 0.0) s += rho(i) * std::log(rho(i) / pi(i));
      return std::max(0.0, s);
    }
  }
  throw validation_error("distance: unknown metric");
}

struct DistanceTraceRow {
  double tv, sep, l2, lp, linf, hellinger, kl_pi_rho, kl_rho_pi;
};

struct DistanceTrace {
  std::vector<DistanceTraceRow> rows;  // index t = 0..horizon
  double lp_exponent;
};

// All metrics at every t in 0..horizon for the chain started at init.
// The reference pmf is the kernel's stationary distribution.
inline DistanceTrace trace(const Kernel& k, const Pmf& init, int horizon, double lp_exponent = 3.0) {
  if (horizon < 0) throw validation_error("trace: negative horizon");
  const Pmf pi = stationary(k);
  DistanceTrace out;
  out.lp_exponent = lp_exponent;
  out.rows.reserve(horizon + 1);
  Vec mu = init.weights();
  for (int t = 0; t <= horizon; ++t) {
    Pmf rho{Vec(mu)};
    out.rows.push_back(DistanceTraceRow{
        distance(rho, pi, Metric::tv),
        distance(rho, pi, Metric::sep),
        distance(rho, pi, Metric::l2),
        distance(rho, pi, Metric::lp, lp_exponent),
        distance(rho, pi, Metric::linf),
        distance(rho, pi, Metric::hellinger),
        distance(rho, pi, Metric::kl_pi_rho),
        distance(rho, pi, Metric::kl_rho_pi),
    });
    if (t < horizon) mu = (mu.transpose() * k.rows()).transpose();
  }
  return out;
}

// Entry t records whether the law of the k-chain majorizes the law of the
// l-chain at time t (both started at init).
inline std::vector<bool> majorization_trace(const Kernel& k, const Kernel& l, const Pmf& init, int horizon,
                                            double tolerance = tol::kCompare) {
  if (k.size() != l.size() || init.size() != k.size())
    throw validation_error("majorization_trace: operand sizes differ");
  if (horizon < 0) throw validation_error("majorization_trace: negative horizon");
  std::vector<bool> out;
  out.reserve(horizon + 1);
  Vec mu = init.weights(), nu = init.weights();
  for (int t = 0; t <= horizon; ++t) {
    out.push_back(orders::majorizes(mu, nu, tolerance));
    if (t < horizon) {
      mu = (mu.transpose() * k.rows()).transpose();
      nu = (nu.transpose() * l.rows()).transpose();
    }
  }
  return out;
}

// The uniform chain on 0..n looks the same from every start: the rows of its
// t-step kernel are permutations of one another (multiset equality within
// 1e-12). A mirror reflection of the doubled path maps any start to any other.
inline bool start_state_multiset_invariance(int n, int t) {
  const Kernel u = chains::uniform_chain(n);
  Mat power = Mat::Identity(n + 1, n + 1);
  for (int s = 0; s < t; ++s) power = power * u.rows();
  std::vector<double> reference;
  for (int row = 0; row <= n; ++row) {
    std::vector<double> vals(n + 1);
    for (int j = 0; j <= n; ++j) vals[j] = power(row, j);
    std::sort(vals.begin(), vals.end());
    if (row == 0) {
      reference = vals;
    } else {
      for (int j = 0; j <= n; ++j)
        if (std::abs(vals[j] - reference[j]) > 1e-12) return false;
    }
  }
  return true;
}

}  // namespace mixcomp::mixing
