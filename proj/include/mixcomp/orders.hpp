#pragma once
// Comparison of kernels sharing a stationary pmf: K precedes L when
// <K f, g>_pi <= <L f, g>_pi for all nonnegative non-increasing f, g.
// It is enough to check f = 1_D, g = 1_E over down-sets D, E of the order,
// which is what compare() enumerates. Also: stochastic monotonicity,
// stochastic dominance, positive correlations, and majorization.

#include "mixcomp/core.hpp"

#include <bit>
#include <limits>
#include <set>

namespace mixcomp::orders {

// Down-closed subset of a poset, stored as a bitmask (64-bit blocks).
// Masks order as integers (most significant block first), which fixes the
// deterministic enumeration order.
class DownSet {
 public:
  explicit DownSet(int n) : n_(n), bits_((n + 63) / 64, 0) {}

  static DownSet of(int n, const std::vector<int>& members) {
    DownSet d(n);
    for (int i : members) d.add(i);
    return d;
  }

  int universe() const { return n_; }
  bool contains(int i) const { return (bits_[i >> 6] >> (i & 63)) & 1u; }
  void add(int i) { bits_[i >> 6] |= uint64_t{1} << (i & 63); }

  int count() const {
    int c = 0;
    for (uint64_t b : bits_) c += std::popcount(b);
    return c;
  }

  std::vector<int> members() const {
    std::vector<int> out;
    for (int i = 0; i < n_; ++i)
      if (contains(i)) out.push_back(i);
    return out;
  }

  bool operator==(const DownSet& o) const { return bits_ == o.bits_; }
  bool operator<(const DownSet& o) const {
    for (size_t b = bits_.size(); b-- > 0;)
      if (bits_[b] != o.bits_[b]) return bits_[b] < o.bits_[b];
    return false;
  }

 private:
  int n_;
  std::vector<uint64_t> bits_;
};

inline constexpr size_t kDownSetCap = 1'000'000;

// All order ideals of the poset, from the empty set upward: each ideal grows
// by one addable element (an element whose strict lower set it contains).
// Deterministic output: ideals sorted by mask value. Throws when the family
// exceeds cap.
inline std::vector<DownSet> enumerate_down_sets(const Poset& poset, size_t cap = kDownSetCap) {
  const int n = poset.size();
  std::vector<std::vector<int>> strictly_below(n);
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < n; ++y)
      if (y != x && poset.leq(y, x)) strictly_below[x].push_back(y);

  std::set<DownSet> seen;
  seen.insert(DownSet(n));
  std::vector<DownSet> frontier{DownSet(n)};
  while (!frontier.empty()) {
    std::vector<DownSet> next;
    for (const DownSet& d : frontier) {
      for (int x = 0; x < n; ++x) {
        if (d.contains(x)) continue;
        bool addable = true;
        for (int y : strictly_below[x])
          if (!d.contains(y)) {
            addable = false;
            break;
          }
        if (!addable) continue;
        DownSet grown = d;
        grown.add(x);
        if (seen.insert(grown).second) {
          if (seen.size() > cap)
            throw validation_error("enumerate_down_sets: ideal family exceeds cap of " + std::to_string(cap));
          next.push_back(std::move(grown));
        }
      }
    }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

// K is stochastically monotone when it maps non-increasing indicators to
// non-increasing functions: for every down-set D, x <= y implies
// (K 1_D)(x) >= (K 1_D)(y) - tol.
inline bool is_monotone(const Kernel& k, const Poset& poset, double tolerance = tol::kCompare,
                        size_t cap = kDownSetCap) {
  if (poset.size() != k.size()) throw validation_error("is_monotone: poset size mismatch");
  const auto ideals = enumerate_down_sets(poset, cap);
  const auto pairs = poset.strict_pairs();
  const int n = k.size();
  Vec indicator(n), image(n);
  for (const DownSet& d : ideals) {
    for (int i = 0; i < n; ++i) indicator[i] = d.contains(i) ? 1.0 : 0.0;
    image = k.rows() * indicator;
    for (auto [x, y] : pairs)
      if (image[x] < image[y] - tolerance) return false;
  }
  return true;
}

struct ComparisonReport {
  bool holds = false;
  // max over down-set pairs (D, E) of <K 1_D, 1_E>_pi - <L 1_D, 1_E>_pi;
  // zero when K = L, nonnegative always (the empty pair ties at 0).
  double worst_violation = 0.0;
  std::vector<int> witness_d;
  std::vector<int> witness_e;
};

// Checks K precedes L in the comparison order, given the shared stationary
// pmf. Both kernels must hold pi stationary; the verdict is holds when the
// worst inner-product gap is within tol.
inline ComparisonReport compare(const Kernel& k, const Kernel& l, const Pmf& pi, const Poset& poset,
                                double tolerance = tol::kCompare, size_t cap = kDownSetCap) {
  const int n = k.size();
  if (l.size() != n || pi.size() != n || poset.size() != n)
    throw validation_error("compare: operand sizes differ");
  for (const Kernel* kern : {&k, &l}) {
    Vec resid = pi.weights().transpose() * kern->rows();
    resid -= pi.weights();
    if (resid.lpNorm<Eigen::Infinity>() > tol::kStationary)
      throw validation_error("compare: kernels have differing stationary distributions (pi not stationary)");
  }

  const auto ideals = enumerate_down_sets(poset, cap);
  const int ideal_count = static_cast<int>(ideals.size());
  constexpr int kChunk = 2048;

  Mat diff = k.rows() - l.rows();
  ComparisonReport report;
  report.worst_violation = -std::numeric_limits<double>::infinity();
  int best_d = 0, best_e = 0;

  Mat d_cols(n, kChunk), e_cols(n, kChunk);
  for (int d0 = 0; d0 < ideal_count; d0 += kChunk) {
    const int dw = std::min(kChunk, ideal_count - d0);
    for (int c = 0; c < dw; ++c)
      for (int i = 0; i < n; ++i) d_cols(i, c) = ideals[d0 + c].contains(i) ? 1.0 : 0.0;
    Mat z = diff * d_cols.leftCols(dw);  // column c holds (K - L) 1_D
    for (int e0 = 0; e0 < ideal_count; e0 += kChunk) {
      const int ew = std::min(kChunk, ideal_count - e0);
      for (int c = 0; c < ew; ++c)
        for (int i = 0; i < n; ++i) e_cols(i, c) = ideals[e0 + c].contains(i) ? pi(i) : 0.0;
      Mat vals = z.transpose() * e_cols.leftCols(ew);  // (d, e) -> inner-product gap
      for (int d = 0; d < dw; ++d)
        for (int e = 0; e < ew; ++e)
          if (vals(d, e) > report.worst_violation) {
            report.worst_violation = vals(d, e);
            best_d = d0 + d;
            best_e = e0 + e;
          }
    }
  }
  report.holds = report.worst_violation <= tolerance;
  report.witness_d = ideals[best_d].members();
  report.witness_e = ideals[best_e].members();
  return report;
}

// pi has positive correlations when pi(D intersect E) >= pi(D) pi(E) for all
// down-sets D, E; equivalent to the rank-one kernel (rows all pi) preceding
// the identity.
inline bool has_positive_correlations(const Pmf& pi, const Poset& poset, double tolerance = tol::kCompare,
                                      size_t cap = kDownSetCap) {
  if (poset.size() != pi.size()) throw validation_error("has_positive_correlations: poset size mismatch");
  const auto ideals = enumerate_down_sets(poset, cap);
  const int n = pi.size();
  std::vector<double> mass(ideals.size());
  for (size_t a = 0; a < ideals.size(); ++a) {
    double m = 0.0;
    for (int i = 0; i < n; ++i)
      if (ideals[a].contains(i)) m += pi(i);
    mass[a] = m;
  }
  for (size_t a = 0; a < ideals.size(); ++a)
    for (size_t b = 0; b < ideals.size(); ++b) {
      double inter = 0.0;
      for (int i = 0; i < n; ++i)
        if (ideals[a].contains(i) && ideals[b].contains(i)) inter += pi(i);
      if (inter < mass[a] * mass[b] - tolerance) return false;
    }
  return true;
}

// v majorizes w when, for each k, the k largest entries of v sum to at least
// the k largest entries of w (equal totals assumed; defined for pmfs).
inline bool majorizes(const Vec& v, const Vec& w, double tolerance = tol::kCompare) {
  if (v.size() != w.size()) throw validation_error("majorizes: mismatched lengths");
  std::vector<double> a(v.data(), v.data() + v.size());
  std::vector<double> b(w.data(), w.data() + w.size());
  std::sort(a.begin(), a.end(), std::greater<>());
  std::sort(b.begin(), b.end(), std::greater<>());
  double pa = 0.0, pb = 0.0;
  for (size_t i = 0; i < a.size(); ++i) {
    pa += a[i];
    pb += b[i];
    if (pa < pb - tolerance) return false;
  }
  return true;
}

inline bool majorizes(const Pmf& v, const Pmf& w, double tolerance = tol::kCompare) {
  return majorizes(v.weights(), w.weights(), tolerance);
}

// mu is stochastically larger than nu: mu(D) <= nu(D) + tol for every
// down-set D (mass sits higher in the order).
inline bool dominates(const Pmf& mu, const Pmf& nu, const Poset& poset, double tolerance = tol::kCompare,
                      size_t cap = kDownSetCap) {
  if (mu.size() != nu.size() || poset.size() != mu.size())
    throw validation_error("dominates: operand sizes differ");
  const auto ideals = enumerate_down_sets(poset, cap);
  for (const DownSet& d : ideals) {
    double mm = 0.0, mn = 0.0;
    for (int i = 0; i < mu.size(); ++i)
      if (d.contains(i)) {
        mm += mu(i);
        mn += nu(i);
      }
    if (mm > mn + tolerance) return false;
  }
  return true;
}

}  // namespace mixcomp::orders
