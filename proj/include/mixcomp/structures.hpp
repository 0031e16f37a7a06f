#pragma once
// Structured testbeds for update-scheduling comparisons: adjacent-sort site
// shuffles on small symmetric groups (ordered by strong Bruhat), and spin
// systems with heat-bath site kernels (ordered coordinatewise). Both supply
// families of reversible site kernels sharing one stationary pmf, plus the
// systematic and random scans built from them.

#include "mixcomp/core.hpp"

#include <map>
#include <random>

namespace mixcomp::structures {

// Permutations of 1..n in lexicographic order; state 0 is the identity.
// Capped at n = 5 (120 states) to keep relation matrices and down-set
// families enumerable.
class PermutationSpace {
 public:
  explicit PermutationSpace(int n) : n_(n) {
    if (n < 1 || n > 5) throw validation_error("permutation_space: n must be in 1..5");
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i + 1;
    do {
      index_.emplace(p, static_cast<int>(perms_.size()));
      perms_.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
  }

  int letters() const { return n_; }
  int states() const { return static_cast<int>(perms_.size()); }
  const std::vector<int>& perm(int state) const { return perms_[state]; }

  int index_of(const std::vector<int>& p) const {
    auto it = index_.find(p);
    if (it == index_.end()) throw validation_error("permutation_space: not a permutation of 1..n");
    return it->second;
  }

  int inversions(int state) const {
    const auto& p = perms_[state];
    int count = 0;
    for (int a = 0; a < n_; ++a)
      for (int b = a + 1; b < n_; ++b)
        if (p[a] > p[b]) ++count;
    return count;
  }

 private:
  int n_;
  std::vector<std::vector<int>> perms_;
  std::map<std::vector<int>, int> index_;
};

// Strong Bruhat order: sigma <= tau iff tau is reachable from sigma by
// swapping out-of-order position pairs (each swap strictly increases the
// inversion count). Identity is the bottom, the reversal the top.
inline Poset bruhat_poset(const PermutationSpace& space) {
  const int m = space.states();
  const int n = space.letters();
  std::vector<uint8_t> leq(static_cast<size_t>(m) * m, 0);
  for (int s = 0; s < m; ++s) {
    leq[static_cast<size_t>(s) * m + s] = 1;
    const auto& p = space.perm(s);
    for (int a = 0; a < n; ++a)
      for (int b = a + 1; b < n; ++b)
        if (p[a] < p[b]) {
          std::vector<int> q = p;
          std::swap(q[a], q[b]);
          leq[static_cast<size_t>(s) * m + space.index_of(q)] = 1;
        }
  }
  for (int k = 0; k < m; ++k)  // Warshall closure
    for (int i = 0; i < m; ++i)
      if (leq[static_cast<size_t>(i) * m + k])
        for (int j = 0; j < m; ++j)
          if (leq[static_cast<size_t>(k) * m + j]) leq[static_cast<size_t>(i) * m + j] = 1;
  return Poset(m, std::move(leq));
}

// Stationary pmf of every adjacent-sort site kernel with sort probability p:
// weight ((1-p)/p)^inversions, so p > 1/2 favors sorted permutations.
inline Pmf shuffle_stationary(const PermutationSpace& space, double p) {
  if (!(p > 0.0 && p < 1.0)) throw validation_error("shuffle_stationary: p must be in (0,1)");
  const double ratio = (1.0 - p) / p;
  Vec w(space.states());
  for (int s = 0; s < space.states(); ++s) w[s] = std::pow(ratio, space.inversions(s));
  w /= w.sum();
  return Pmf(w);
}

// One update of adjacent positions (site-1, site), site in 1..n-1: with
// probability p put the smaller letter first, else the larger. Reversible
// with respect to shuffle_stationary(p) for every site.
inline Kernel shuffle_site_kernel(const PermutationSpace& space, int site, double p) {
  if (site < 1 || site >= space.letters())
    throw validation_error("shuffle_site_kernel: site must be in 1..n-1");
  if (!(p > 0.0 && p < 1.0)) throw validation_error("shuffle_site_kernel: p must be in (0,1)");
  const int m = space.states();
  Mat rows = Mat::Zero(m, m);
  for (int s = 0; s < m; ++s) {
    std::vector<int> lo = space.perm(s), hi = space.perm(s);
    const int a = site - 1, b = site;
    if (lo[a] > lo[b]) std::swap(lo[a], lo[b]);
    if (hi[a] < hi[b]) std::swap(hi[a], hi[b]);
    rows(s, space.index_of(lo)) += p;
    rows(s, space.index_of(hi)) += 1.0 - p;
  }
  return Kernel(std::move(rows)).with_stationary(shuffle_stationary(space, p));
}

inline std::vector<Kernel> shuffle_site_kernels(const PermutationSpace& space, double p) {
  std::vector<Kernel> out;
  out.reserve(space.letters() - 1);
  for (int site = 1; site < space.letters(); ++site) out.push_back(shuffle_site_kernel(space, site, p));
  return out;
}

// Finite spin configurations: `sites` coordinates, each in 0..spins-1, packed
// mixed-radix with site 0 as the least significant digit. Edges carry the
// interaction for ising_pmf.
class SpinSpace {
 public:
  SpinSpace(int sites, int spins, std::vector<std::pair<int, int>> edges)
      : sites_(sites), spins_(spins), edges_(std::move(edges)) {
    if (sites < 1 || spins < 2) throw validation_error("spin_space: need sites >= 1 and spins >= 2");
    double count = std::pow(static_cast<double>(spins), sites);
    if (count > 1 << 20) throw validation_error("spin_space: more than 2^20 states");
    states_ = 1;
    for (int s = 0; s < sites; ++s) states_ *= spins;
    for (auto [u, v] : edges_)
      if (u < 0 || v < 0 || u >= sites || v >= sites || u == v)
        throw validation_error("spin_space: invalid edge");
  }

  // rows x cols grid with nearest-neighbor edges, sites numbered row-major.
  static SpinSpace grid(int rows, int cols, int spins = 2) {
    if (rows < 1 || cols < 1) throw validation_error("spin_space: empty grid");
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < rows; ++r)
      for (int c = 0; c < cols; ++c) {
        if (c + 1 < cols) edges.emplace_back(r * cols + c, r * cols + c + 1);
        if (r + 1 < rows) edges.emplace_back(r * cols + c, (r + 1) * cols + c);
      }
    return SpinSpace(rows * cols, spins, std::move(edges));
  }

  int sites() const { return sites_; }
  int spins() const { return spins_; }
  int states() const { return states_; }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  int value(int state, int site) const {
    int x = state;
    for (int s = 0; s < site; ++s) x /= spins_;
    return x % spins_;
  }

  // State with the digit at `site` replaced by v.
  int with_value(int state, int site, int v) const {
    int scale = 1;
    for (int s = 0; s < site; ++s) scale *= spins_;
    return state + (v - value(state, site)) * scale;
  }

 private:
  int sites_, spins_, states_;
  std::vector<std::pair<int, int>> edges_;
};

// Coordinatewise order: x <= y iff every site's value is <= in y.
inline Poset product_order(const SpinSpace& space) {
  const int m = space.states();
  std::vector<uint8_t> leq(static_cast<size_t>(m) * m, 0);
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y) {
      bool le = true;
      for (int s = 0; s < space.sites() && le; ++s) le = space.value(x, s) <= space.value(y, s);
      leq[static_cast<size_t>(x) * m + y] = le ? 1 : 0;
    }
  return Poset(m, std::move(leq));
}

// Agreement-interaction pmf: weight exp(beta * #edges whose endpoints agree).
// beta > 0 favors aligned configurations; beta < 0 anti-aligned.
inline Pmf ising_pmf(const SpinSpace& space, double beta) {
  Vec w(space.states());
  for (int x = 0; x < space.states(); ++x) {
    int agree = 0;
    for (auto [u, v] : space.edges())
      if (space.value(x, u) == space.value(x, v)) ++agree;
    w[x] = std::exp(beta * agree);
  }
  w /= w.sum();
  return Pmf(w);
}

// Heat-bath update at one site: resample that coordinate from pi conditioned
// on all others. Assembled as a direct sum over the fibers (classes of states
// agreeing off-site), each block a jump-to-conditional kernel; every fiber
// must carry positive mass for the conditional to exist.
inline Kernel spin_site_kernel(const SpinSpace& space, const Pmf& pi, int site) {
  if (site < 0 || site >= space.sites()) throw validation_error("spin_site_kernel: site out of range");
  if (pi.size() != space.states()) throw validation_error("spin_site_kernel: pmf length mismatch");
  const int r = space.spins();
  std::vector<DirectSummand> blocks;
  std::vector<char> seen(space.states(), 0);
  for (int x = 0; x < space.states(); ++x) {
    if (seen[x]) continue;
    std::vector<int> cells(r);
    Vec w(r);
    double total = 0.0;
    for (int v = 0; v < r; ++v) {
      cells[v] = space.with_value(x, site, v);
      seen[cells[v]] = 1;
      w[v] = pi(cells[v]);
      total += w[v];
    }
    if (!(total > 0.0))
      throw validation_error(detail::describe_index(
          "spin_site_kernel: zero conditional mass on the class of state ", x));
    Mat rows(r, r);
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) rows(a, b) = w[b] / total;
    blocks.push_back(DirectSummand{Kernel(std::move(rows)), std::move(cells)});
  }
  return direct_sum(blocks, space.states()).with_stationary(pi);
}

inline std::vector<Kernel> spin_site_kernels(const SpinSpace& space, const Pmf& pi) {
  std::vector<Kernel> out;
  out.reserve(space.sites());
  for (int s = 0; s < space.sites(); ++s) out.push_back(spin_site_kernel(space, pi, s));
  return out;
}

// A spin pmf is a monotone system when every site's conditional law responds
// monotonically to the conditioning: raising the off-site configuration
// (coordinatewise) pushes the conditional cdf down, for every site and every
// comparable pair of conditionings. Heat-bath kernels of a monotone system
// are monotone for the coordinatewise order.
inline bool is_monotone_system(const SpinSpace& space, const Pmf& pi) {
  const int r = space.spins();
  for (int site = 0; site < space.sites(); ++site) {
    // Fiber representatives: states whose digit at `site` is 0.
    std::vector<int> reps;
    for (int x = 0; x < space.states(); ++x)
      if (space.value(x, site) == 0) reps.push_back(x);
    auto conditional_cdf = [&](int rep) {
      Vec c(r);
      double total = 0.0;
      for (int v = 0; v < r; ++v) {
        total += pi(space.with_value(rep, site, v));
        c[v] = total;
      }
      if (!(total > 0.0)) throw validation_error("is_monotone_system: zero conditional mass");
      c /= total;
      return c;
    };
    for (int a : reps)
      for (int b : reps) {
        if (a == b) continue;
        bool le = true;
        for (int s = 0; s < space.sites() && le; ++s)
          if (s != site) le = space.value(a, s) <= space.value(b, s);
        if (!le) continue;
        const Vec ca = conditional_cdf(a), cb = conditional_cdf(b);
        for (int v = 0; v + 1 < r; ++v)
          if (cb[v] > ca[v] + 1e-12) return false;
      }
  }
  return true;
}

// One sweep updating every site once, in index order (row-vector convention:
// the law is multiplied by kernels[0] first).
inline Kernel systematic_scan(const std::vector<Kernel>& kernels) {
  if (kernels.empty()) throw validation_error("systematic_scan: no kernels");
  Kernel out = kernels[0];
  for (size_t s = 1; s < kernels.size(); ++s) out = multiply(out, kernels[s]);
  return out;
}

// One update at a site drawn from `weights` (uniform by default).
inline Kernel random_scan(const std::vector<Kernel>& kernels, const Vec& weights) {
  if (kernels.empty()) throw validation_error("random_scan: no kernels");
  if (weights.size() != static_cast<int>(kernels.size()))
    throw validation_error("random_scan: one weight per kernel required");
  double sum = 0.0;
  for (int s = 0; s < weights.size(); ++s) {
    if (weights[s] < 0.0 || !std::isfinite(weights[s]))
      throw validation_error("random_scan: weights must be nonnegative");
    sum += weights[s];
  }
  if (std::abs(sum - 1.0) > tol::kSum) throw validation_error("random_scan: weights must sum to 1");
  Mat rows = Mat::Zero(kernels[0].size(), kernels[0].size());
  for (size_t s = 0; s < kernels.size(); ++s) {
    if (kernels[s].size() != kernels[0].size()) throw validation_error("random_scan: size mismatch");
    rows += weights[static_cast<int>(s)] * kernels[s].rows();
  }
  return Kernel(std::move(rows));
}

inline Kernel random_scan(const std::vector<Kernel>& kernels) {
  return random_scan(kernels, Vec::Constant(static_cast<int>(kernels.size()), 1.0 / kernels.size()));
}

// Seeded random doubly stochastic kernel: a convex combination of `terms`
// uniformly random permutation matrices. Uniform is stationary; rows and
// columns both sum to 1.
inline Kernel doubly_stochastic_sample(int n_states, uint64_t seed, int terms = 8) {
  if (n_states < 1) throw validation_error("doubly_stochastic_sample: empty state space");
  if (terms < 1) throw validation_error("doubly_stochastic_sample: need at least one term");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unif(0.1, 1.0);
  Vec w(terms);
  for (int t = 0; t < terms; ++t) w[t] = unif(rng);
  w /= w.sum();
  Mat rows = Mat::Zero(n_states, n_states);
  std::vector<int> sigma(n_states);
  for (int t = 0; t < terms; ++t) {
    for (int i = 0; i < n_states; ++i) sigma[i] = i;
    std::shuffle(sigma.begin(), sigma.end(), rng);
    for (int i = 0; i < n_states; ++i) rows(i, sigma[i]) += w[t];
  }
  return Kernel(std::move(rows)).with_stationary(uniform_pmf(n_states));
}

}  // namespace mixcomp::structures
