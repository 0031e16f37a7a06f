#pragma once
// Finite-state Markov kernels: validated value types and the basic algebra
// (stationary distributions, time reversal, evolution, mixtures, direct sums).
// All types are immutable after construction; all operations are pure.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mixcomp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Input violates a documented precondition.
struct validation_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numerical routine failed to converge or lost too much accuracy.
struct numeric_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace tol {
// Row sums and pmf sums must match 1 to this accuracy (post-construction).
inline constexpr double kSum = 1e-12;
// Entries in [-kEntryClamp, 0) are treated as round-off and zeroed; anything
// below -kEntryClamp is a hard error.
inline constexpr double kEntryClamp = 1e-12;
// Looser admission window for pmfs produced by long evolutions; the
// constructor renormalizes, restoring kSum.
inline constexpr double kPmfAdmit = 1e-9;
// ||pi K - pi||_inf for a pmf claimed stationary.
inline constexpr double kStationary = 1e-10;
// Detailed-balance residual for a kernel claimed reversible.
inline constexpr double kReversible = 1e-10;
// Default slack in ordering checks.
inline constexpr double kCompare = 1e-10;
// Eigenvalues within this of +-1 count as unit modulus (ergodicity checks).
inline constexpr double kErgodic = 1e-9;
}  // namespace tol

namespace detail {
inline std::string describe_index(const char* what, int i) {
  std::ostringstream os;
  os << what << i;
  return os.str();
}
}  // namespace detail

// Probability mass function over states 0..n-1.
// Invariants: weights nonnegative, sum within tol::kSum of 1.
class Pmf {
 public:
  explicit Pmf(Vec weights) : w_(std::move(weights)) {
    if (w_.size() == 0) throw validation_error("pmf: empty weight vector");
    double sum = 0.0;
    positive_ = true;
    for (int i = 0; i < w_.size(); ++i) {
      if (!std::isfinite(w_[i]) || w_[i] < 0.0)
        throw validation_error(detail::describe_index("pmf: negative or non-finite weight at state ", i));
      if (w_[i] == 0.0) positive_ = false;
      sum += w_[i];
    }
    if (std::abs(sum - 1.0) > tol::kPmfAdmit)
      throw validation_error("pmf: weights sum to " + std::to_string(sum) + ", expected 1");
    w_ /= sum;
  }

  int size() const { return static_cast<int>(w_.size()); }
  double operator()(int i) const { return w_[i]; }
  const Vec& weights() const { return w_; }
  bool strictly_positive() const { return positive_; }

 private:
  Vec w_;
  bool positive_;
};

// Cumulative sums H_i = pi_0 + ... + pi_i; H_{n-1} = 1 up to round-off.
inline Vec cdf(const Pmf& pi) {
  Vec h(pi.size());
  double acc = 0.0;
  for (int i = 0; i < pi.size(); ++i) {
    acc += pi(i);
    h[i] = acc;
  }
  return h;
}

inline Pmf point_mass(int n, int at) {
  if (at < 0 || at >= n) throw validation_error("point_mass: state out of range");
  Vec w = Vec::Zero(n);
  w[at] = 1.0;
  return Pmf(w);
}

inline Pmf uniform_pmf(int n) { return Pmf(Vec::Constant(n, 1.0 / n)); }

// Row-stochastic transition matrix. Entries in [-tol::kEntryClamp, 0) are
// zeroed at construction; rows must sum to 1 within tol::kSum before the clamp.
// Optionally carries a stationary pmf, validated on attachment.
class Kernel {
 public:
  explicit Kernel(Mat rows) : m_(std::move(rows)) {
    if (m_.rows() != m_.cols() || m_.rows() == 0)
      throw validation_error("kernel: matrix must be square and nonempty");
    const int n = static_cast<int>(m_.rows());
    for (int i = 0; i < n; ++i) {
      double sum = 0.0;
      for (int j = 0; j < n; ++j) {
        double e = m_(i, j);
        if (!std::isfinite(e))
          throw validation_error("kernel: non-finite entry at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        if (e < -tol::kEntryClamp)
          throw validation_error("kernel: entry " + std::to_string(e) + " at (" + std::to_string(i) + "," +
                                 std::to_string(j) + ") is negative beyond round-off");
        if (e > 1.0 + tol::kEntryClamp)
          throw validation_error("kernel: entry exceeds 1 at (" + std::to_string(i) + "," + std::to_string(j) + ")");
        sum += e;
      }
      if (std::abs(sum - 1.0) > tol::kSum)
        throw validation_error("kernel: row " + std::to_string(i) + " sums to " + std::to_string(sum));
      for (int j = 0; j < n; ++j)
        if (m_(i, j) < 0.0) m_(i, j) = 0.0;
    }
  }

  // Admits rows whose sums drifted by up to tol::kPmfAdmit (e.g. time
  // reversal under a pi known only to stationary accuracy); rescales each row.
  static Kernel from_rows_normalized(Mat rows) {
    const int n = static_cast<int>(rows.rows());
    for (int i = 0; i < n; ++i) {
      double sum = rows.row(i).sum();
      if (!std::isfinite(sum) || std::abs(sum - 1.0) > tol::kPmfAdmit)
        throw validation_error("kernel: row " + std::to_string(i) + " sums to " + std::to_string(sum));
      rows.row(i) /= sum;
    }
    return Kernel(std::move(rows));
  }

  int size() const { return static_cast<int>(m_.rows()); }
  double operator()(int i, int j) const { return m_(i, j); }
  const Mat& rows() const { return m_; }
  const std::optional<Pmf>& cached_stationary() const { return pi_; }

  Kernel with_stationary(Pmf pi) const {
    if (pi.size() != size()) throw validation_error("kernel: stationary pmf has wrong length");
    Vec resid = pi.weights().transpose() * m_;
    resid -= pi.weights();
    if (resid.lpNorm<Eigen::Infinity>() > tol::kStationary)
      throw validation_error("kernel: claimed stationary pmf is not stationary");
    Kernel k(*this);
    k.pi_ = std::move(pi);
    return k;
  }

 private:
  Mat m_;
  std::optional<Pmf> pi_;
};

// Partial order on states 0..n-1 as an explicit relation matrix.
// Invariants: reflexive, antisymmetric, transitive (all checked).
class Poset {
 public:
  Poset(int n, std::vector<uint8_t> leq) : n_(n), leq_(std::move(leq)) {
    if (n <= 0 || static_cast<int>(leq_.size()) != n * n)
      throw validation_error("poset: relation matrix has wrong shape");
    for (int i = 0; i < n; ++i)
      if (!at(i, i)) throw validation_error(detail::describe_index("poset: not reflexive at ", i));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j && at(i, j) && at(j, i))
          throw validation_error("poset: not antisymmetric at (" + std::to_string(i) + "," + std::to_string(j) + ")");
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (at(i, j))
          for (int k = 0; k < n; ++k)
            if (at(j, k) && !at(i, k))
              throw validation_error("poset: not transitive via (" + std::to_string(i) + "," + std::to_string(j) +
                                     "," + std::to_string(k) + ")");
  }

  static Poset linear(int n) {
    std::vector<uint8_t> leq(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) leq[static_cast<size_t>(i) * n + j] = 1;
    return Poset(n, std::move(leq));
  }

  static Poset antichain(int n) {
    std::vector<uint8_t> leq(static_cast<size_t>(n) * n, 0);
    for (int i = 0; i < n; ++i) leq[static_cast<size_t>(i) * n + i] = 1;
    return Poset(n, std::move(leq));
  }

  int size() const { return n_; }
  bool leq(int x, int y) const { return at(x, y); }

  // Pairs (x, y) with x < y in the order; used by monotonicity checks.
  std::vector<std::pair<int, int>> strict_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int x = 0; x < n_; ++x)
      for (int y = 0; y < n_; ++y)
        if (x != y && at(x, y)) out.emplace_back(x, y);
    return out;
  }

 private:
  bool at(int i, int j) const { return leq_[static_cast<size_t>(i) * n_ + j] != 0; }
  int n_;
  std::vector<uint8_t> leq_;
};

namespace detail {

// Strong connectivity of the support digraph (edges where K(i,j) > 0).
inline bool strongly_connected(const Mat& m) {
  const int n = static_cast<int>(m.rows());
  auto reach = [&](bool transpose) {
    std::vector<char> seen(n, 0);
    std::vector<int> stack{0};
    seen[0] = 1;
    int count = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int v = 0; v < n; ++v) {
        double e = transpose ? m(v, u) : m(u, v);
        if (e > 0.0 && !seen[v]) {
          seen[v] = 1;
          ++count;
          stack.push_back(v);
        }
      }
    }
    return count == n;
  };
  return reach(false) && reach(true);
}

// Period of an irreducible kernel: gcd of (dist(u) + 1 - dist(v)) over support
// edges u -> v, distances from state 0.
inline int period(const Mat& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> dist(n, -1);
  std::vector<int> queue{0};
  dist[0] = 0;
  for (size_t qi = 0; qi < queue.size(); ++qi) {
    int u = queue[qi];
    for (int v = 0; v < n; ++v)
      if (m(u, v) > 0.0 && dist[v] < 0) {
        dist[v] = dist[u] + 1;
        queue.push_back(v);
      }
  }
  int g = 0;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (m(u, v) > 0.0) g = std::gcd(g, std::abs(dist[u] + 1 - dist[v]));
  return g == 0 ? 1 : g;
}

inline bool is_tridiagonal(const Mat& m) {
  const int n = static_cast<int>(m.rows());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (std::abs(i - j) > 1 && m(i, j) != 0.0) return false;
  return true;
}

}  // namespace detail

inline bool is_irreducible(const Kernel& k) { return detail::strongly_connected(k.rows()); }

inline bool is_aperiodic(const Kernel& k) {
  if (!is_irreducible(k)) throw validation_error("period: kernel is reducible");
  return detail::period(k.rows()) == 1;
}

// Unique stationary pmf of an irreducible kernel. Birth-and-death (tridiagonal)
// kernels use cumulative detailed-balance products; the general case solves
// (K^T - I) x = 0 with one row replaced by the normalization constraint.
inline Pmf stationary(const Kernel& k) {
  if (k.cached_stationary()) return *k.cached_stationary();
  const Mat& m = k.rows();
  const int n = k.size();
  if (n == 1) return Pmf(Vec::Ones(1));
  if (!detail::strongly_connected(m))
    throw validation_error("stationary: kernel is reducible (no unique stationary pmf)");
  if (detail::is_tridiagonal(m)) {
    Vec w(n);
    w[0] = 1.0;
    for (int i = 0; i + 1 < n; ++i) w[i + 1] = w[i] * m(i, i + 1) / m(i + 1, i);
    w /= w.sum();
    return Pmf(w);
  }
  Mat a = m.transpose() - Mat::Identity(n, n);
  a.row(n - 1).setOnes();
  Vec rhs = Vec::Zero(n);
  rhs[n - 1] = 1.0;
  Eigen::FullPivLU<Mat> lu(a);
  if (!lu.isInvertible())
    throw numeric_error("stationary: singular normalized system for an irreducible kernel");
  Vec x = lu.solve(rhs);
  Vec resid = x.transpose() * m;
  resid -= x.transpose();
  if (resid.lpNorm<Eigen::Infinity>() > 1e-8)
    throw numeric_error("stationary: solve residual too large");
  for (int i = 0; i < n; ++i)
    if (x[i] < 0.0) x[i] = 0.0;  // round-off on an irreducible chain's strictly positive pi
  x /= x.sum();
  return Pmf(x);
}

// Reversed kernel K*(i,j) = pi(j) K(j,i) / pi(i). pi must be strictly positive
// and stationary for k; rows are rescaled to absorb the stationarity residual.
inline Kernel time_reversal(const Kernel& k, const Pmf& pi) {
  if (pi.size() != k.size()) throw validation_error("time_reversal: pmf length mismatch");
  if (!pi.strictly_positive()) throw validation_error("time_reversal: pi must be strictly positive");
  Vec resid = pi.weights().transpose() * k.rows();
  resid -= pi.weights();
  if (resid.lpNorm<Eigen::Infinity>() > tol::kStationary)
    throw validation_error("time_reversal: pi is not stationary for the kernel");
  const int n = k.size();
  Mat out(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out(i, j) = pi(j) * k(j, i) / pi(i);
  return Kernel::from_rows_normalized(std::move(out));
}

inline bool is_reversible(const Kernel& k, const Pmf& pi, double tolerance = tol::kReversible) {
  if (pi.size() != k.size()) throw validation_error("is_reversible: pmf length mismatch");
  for (int i = 0; i < k.size(); ++i)
    for (int j = 0; j < i; ++j)
      if (std::abs(pi(i) * k(i, j) - pi(j) * k(j, i)) > tolerance) return false;
  return true;
}

// Law of the chain after t steps: init K^t (row-vector convention).
inline Pmf evolve(const Pmf& init, const Kernel& k, int t) {
  if (init.size() != k.size()) throw validation_error("evolve: pmf length mismatch");
  if (t < 0) throw validation_error("evolve: negative time");
  Vec mu = init.weights();
  for (int s = 0; s < t; ++s) mu = (mu.transpose() * k.rows()).transpose();
  return Pmf(mu);
}

inline Kernel identity_kernel(int n) {
  if (n <= 0) throw validation_error("identity_kernel: empty state space");
  return Kernel(Mat::Identity(n, n));
}

inline Kernel mixture(double lambda, const Kernel& k0, const Kernel& k1) {
  if (k0.size() != k1.size()) throw validation_error("mixture: size mismatch");
  if (!(lambda >= 0.0 && lambda <= 1.0)) throw validation_error("mixture: lambda outside [0,1]");
  return Kernel(lambda * k0.rows() + (1.0 - lambda) * k1.rows());
}

inline Kernel multiply(const Kernel& a, const Kernel& b) {
  if (a.size() != b.size()) throw validation_error("multiply: size mismatch");
  return Kernel(a.rows() * b.rows());
}

inline Kernel kernel_power(const Kernel& k, int t) {
  if (t < 0) throw validation_error("kernel_power: negative exponent");
  Mat acc = Mat::Identity(k.size(), k.size());
  for (int s = 0; s < t; ++s) acc = acc * k.rows();
  return Kernel(std::move(acc));
}

// Block kernel acting as block.kernel on block.cells (global state indices).
// The cells must partition 0..n_total-1.
struct DirectSummand {
  Kernel kernel;
  std::vector<int> cells;
};

inline Kernel direct_sum(const std::vector<DirectSummand>& blocks, int n_total) {
  if (n_total <= 0) throw validation_error("direct_sum: empty state space");
  Mat out = Mat::Zero(n_total, n_total);
  std::vector<char> used(n_total, 0);
  for (const auto& b : blocks) {
    if (static_cast<int>(b.cells.size()) != b.kernel.size())
      throw validation_error("direct_sum: cell/kernel size mismatch");
    for (int local_i = 0; local_i < b.kernel.size(); ++local_i) {
      int gi = b.cells[local_i];
      if (gi < 0 || gi >= n_total) throw validation_error("direct_sum: cell index out of range");
      if (used[gi]) throw validation_error(detail::describe_index("direct_sum: overlapping cells at state ", gi));
      used[gi] = 1;
    }
  }
  for (int i = 0; i < n_total; ++i)
    if (!used[i]) throw validation_error(detail::describe_index("direct_sum: cells do not cover state ", i));
  for (const auto& b : blocks)
    for (int li = 0; li < b.kernel.size(); ++li)
      for (int lj = 0; lj < b.kernel.size(); ++lj) out(b.cells[li], b.cells[lj]) = b.kernel(li, lj);
  return Kernel(std::move(out));
}

inline Kernel direct_sum(const Kernel& k0, const std::vector<int>& cells0, const Kernel& k1,
                         const std::vector<int>& cells1) {
  return direct_sum({DirectSummand{k0, cells0}, DirectSummand{k1, cells1}},
                    static_cast<int>(cells0.size() + cells1.size()));
}

}  // namespace mixcomp
