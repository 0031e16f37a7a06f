#include <catch2/catch_amalgamated.hpp>

#include "mixcomp/chains.hpp"
#include "mixcomp/duality.hpp"
#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <random>

using namespace mixcomp;
using chains::BdParams;

TEST_CASE("bd parameter validation") {
  Vec q(2), r(2), p(2);
  q << 0.0, 0.3;
  r << 0.6, 0.7;
  p << 0.4, 0.0;
  CHECK_NOTHROW(BdParams(q, r, p));

  Vec bad_q(2);
  bad_q << 0.1, 0.3;  // downward rate out of the bottom state
  CHECK_THROWS_AS(BdParams(bad_q, r, p), validation_error);

  Vec bad_r(2);
  bad_r << 0.5, 0.7;  // row 0 sums to 0.9
  CHECK_THROWS_AS(BdParams(q, bad_r, p), validation_error);
}

TEST_CASE("kernel round trip and tridiagonal detection") {
  const BdParams bd = chains::biased_rw(2.0, 3);
  const BdParams back = chains::bd_from_kernel(chains::to_kernel(bd));
  CHECK((back.q - bd.q).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((back.r - bd.r).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((back.p - bd.p).lpNorm<Eigen::Infinity>() == 0.0);

  Mat dense(3, 3);
  dense << 0.2, 0.3, 0.5, 0.4, 0.4, 0.2, 0.1, 0.6, 0.3;
  CHECK_THROWS_AS(chains::bd_from_kernel(Kernel{dense}), validation_error);
}

TEST_CASE("bd stationary satisfies detailed balance") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 30; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    Vec p(n);
    // adjacent rates must satisfy p_{i-1} + p_i <= 1 for the kernel to exist
    for (int i = 0; i < n; ++i) {
      const double cap = (i == 0) ? 0.9 : 1.0 - p[i - 1] - 0.01;
      p[i] = std::uniform_real_distribution<double>(0.01, std::max(0.02, cap))(rng);
    }
    const BdParams bd = chains::bd_from_kernel(chains::symmetric_bd(p));
    const Pmf pi = chains::bd_stationary(bd);
    for (int i = 0; i + 1 <= n; ++i)
      CHECK(pi(i) * bd.p[i] == Catch::Approx(pi(i + 1) * bd.q[i + 1]).margin(1e-14));
    CHECK((pi.weights() - stationary(chains::to_kernel(bd)).weights()).lpNorm<Eigen::Infinity>() < 1e-10);
  }
}

TEST_CASE("symmetric chains have the uniform stationary pmf") {
  Vec p(3);
  p << 0.3, 0.5, 0.2;
  const Kernel k = chains::symmetric_bd(p);
  REQUIRE(k.cached_stationary().has_value());
  CHECK((*k.cached_stationary())(0) == Catch::Approx(0.25));
  CHECK(k(1, 0) == k(0, 1));  // symmetric rates

  const Kernel u = chains::uniform_chain(3);
  Vec half(3);
  half << 0.5, 0.5, 0.5;
  CHECK((u.rows() - chains::symmetric_bd(half).rows()).lpNorm<Eigen::Infinity>() == 0.0);

  Vec too_big(2);
  too_big << 0.7, 0.7;
  CHECK_THROWS_AS(chains::symmetric_bd(too_big), validation_error);
}

TEST_CASE("monotone iff no edge overshoots") {
  CHECK(chains::is_monotone(chains::biased_rw(0.5, 4)));
  CHECK(chains::is_monotone(chains::bd_from_kernel(chains::uniform_chain(4))));

  // p_0 + q_1 = 1.1 > 1: a valid chain that fails the edge criterion
  Vec q(2), r(2), p(2);
  q << 0.0, 0.55;
  r << 0.45, 0.45;
  p << 0.55, 0.0;
  CHECK_FALSE(chains::is_monotone(BdParams(q, r, p)));

  // a symmetric chain with p_i > 1/2 somewhere is never monotone
  Vec half_plus(2);
  half_plus << 0.6, 0.3;
  CHECK_FALSE(chains::is_monotone(chains::bd_from_kernel(chains::symmetric_bd(half_plus))));
}

TEST_CASE("design for a log-concave target") {
  // geometric target: the construction recovers the biased walk exactly
  for (double rho : {0.5, 2.0, 3.0}) {
    const int n = 4;
    Vec w(n + 1);
    for (int i = 0; i <= n; ++i) w[i] = std::pow(rho, i);
    const Pmf geo{w / w.sum()};
    const BdParams built = chains::fmmc_logconcave(geo);
    const BdParams walk = chains::biased_rw(rho, n);
    CHECK((built.q - walk.q).lpNorm<Eigen::Infinity>() < 1e-15);
    CHECK((built.r - walk.r).lpNorm<Eigen::Infinity>() < 1e-15);
    CHECK((built.p - walk.p).lpNorm<Eigen::Infinity>() < 1e-15);
  }

  // uniform target: recovers the uniform chain
  const BdParams flat = chains::fmmc_logconcave(uniform_pmf(4));
  CHECK((chains::to_kernel(flat).rows() - chains::uniform_chain(3).rows()).lpNorm<Eigen::Infinity>() < 1e-15);

  // the produced chain holds the target stationary and is monotone
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 3 + static_cast<int>(rng() % 4);
    // random log-concave profile: concave log-weights
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    Vec logw(n);
    double slope = unif(rng), bend = -unif(rng) * 0.3;
    logw[0] = 0.0;
    for (int i = 1; i < n; ++i) {
      logw[i] = logw[i - 1] + slope;
      slope += bend;
    }
    Vec w = logw.array().exp();
    const Pmf target{w / w.sum()};
    const BdParams bd = chains::fmmc_logconcave(target);
    CHECK((chains::bd_stationary(bd).weights() - target.weights()).lpNorm<Eigen::Infinity>() < 1e-12);
    CHECK(chains::is_monotone(bd));
    // every edge saturates: p_i + q_{i+1} = 1
    for (int i = 0; i + 1 < n; ++i) CHECK(bd.p[i] + bd.q[i + 1] == Catch::Approx(1.0).margin(1e-12));
  }

  Vec dip(3);
  dip << 0.4, 0.1, 0.5;  // 0.1^2 < 0.4 * 0.5
  CHECK_THROWS_AS(chains::fmmc_logconcave(Pmf{dip}), validation_error);
}

TEST_CASE("biased walk") {
  const BdParams bd = chains::biased_rw(2.0, 2);
  CHECK(bd.p[0] == Catch::Approx(2.0 / 3.0));
  CHECK(bd.q[1] == Catch::Approx(1.0 / 3.0));
  CHECK(bd.r[0] == Catch::Approx(1.0 / 3.0));
  CHECK(bd.r[2] == Catch::Approx(2.0 / 3.0));
  const Pmf pi = chains::bd_stationary(bd);
  CHECK(pi(2) / pi(1) == Catch::Approx(2.0));
  CHECK(pi(1) / pi(0) == Catch::Approx(2.0));

  // rho = 1 degenerates to the uniform chain
  CHECK((chains::to_kernel(chains::biased_rw(1.0, 3)).rows() - chains::uniform_chain(3).rows())
            .lpNorm<Eigen::Infinity>() == 0.0);
  CHECK_THROWS_AS(chains::biased_rw(-1.0, 3), validation_error);
}

TEST_CASE("edge-rate parameterization") {
  const Pmf pi = uniform_pmf(3);
  Vec w(2);
  w << 1.0 / 6.0, 1.0 / 6.0;
  const BdParams bd = chains::from_w({w, pi});
  CHECK((chains::to_kernel(bd).rows() - chains::uniform_chain(2).rows()).lpNorm<Eigen::Infinity>() < 1e-15);

  // a zero rate disconnects the path
  Vec cut(2);
  cut << 0.0, 1.0 / 6.0;
  CHECK_FALSE(chains::is_irreducible(chains::from_w({cut, pi})));

  Vec over(2);
  over << 0.3, 0.3;  // 0.6 > pi_1 = 1/3
  CHECK_THROWS_AS(chains::from_w({over, pi}), validation_error);
}

TEST_CASE("alternating probability closed forms agree") {
  // n = 3: rank sums 6 and 4, theta = 1/(1 + sqrt(3/2))
  CHECK(chains::detail_path::even_rank_sum(3) == Catch::Approx(6.0));
  CHECK(chains::detail_path::odd_rank_sum(3) == Catch::Approx(4.0));
  CHECK(chains::path_theta(3) == Catch::Approx(1.0 / (1.0 + std::sqrt(1.5))).epsilon(1e-14));

  for (int n : {1, 3, 5, 7, 9, 21}) {
    CHECK(chains::path_theta(n) == Catch::Approx(chains::path_theta_quadratic(n)).margin(1e-14));
  }
  CHECK(chains::path_theta(1) == 0.0);
  CHECK_THROWS_AS(chains::path_theta(4), validation_error);
}

TEST_CASE("optimal symmetric path designs") {
  // even: the uniform chain
  CHECK((chains::lw_optimal_path(4).rows() - chains::uniform_chain(4).rows()).lpNorm<Eigen::Infinity>() == 0.0);

  // odd: alternating 1-theta, theta, 1-theta
  const double theta = chains::path_theta(3);
  const Kernel k = chains::lw_optimal_path(3);
  CHECK(k(0, 1) == Catch::Approx(1.0 - theta));
  CHECK(k(1, 2) == Catch::Approx(theta));
  CHECK(k(2, 3) == Catch::Approx(1.0 - theta));
}

TEST_CASE("holding-free design by edge-rate search") {
  // uniform 3-state target: optimum is the uniform chain, w* = 1/6, T = 8/3
  const auto opt = chains::fmmc_lw(uniform_pmf(3));
  CHECK(opt.tmix == Catch::Approx(8.0 / 3.0).margin(1e-9));
  CHECK(std::abs(opt.w_star - 1.0 / 6.0) < 1e-6);
  CHECK(opt.tmix ==
        Catch::Approx(duality::tmix_closed(chains::bd_from_kernel(opt.kernel), uniform_pmf(3)).value)
            .margin(1e-9));

  // non-decreasing targets: the search result beats nearby perturbations
  Vec w(4);
  w << 0.1, 0.2, 0.3, 0.4;
  const Pmf pi{w};
  const auto best = chains::fmmc_lw(pi);
  const Vec h = cdf(pi);
  for (double delta : {-1e-4, 1e-4}) {
    const double nearby = chains::detail_path::lw_objective(pi, h, best.w_star + delta);
    CHECK(best.tmix <= nearby + 1e-12);
  }
}

TEST_CASE("budgeted design") {
  // uniform target, budget 1/(n+1): n^2(n+2)/6 is the value of the flat and
  // parabolic rate profiles; the sqrt profile ties it at n=2 and beats it after
  {
    const auto design = chains::budgeted_min_tmix(uniform_pmf(3), 1.0 / 3.0);
    CHECK(design.tmix == Catch::Approx(2.0 * 2.0 * 4.0 / 6.0).margin(1e-9));
  }
  for (int n : {3, 6}) {
    const auto design = chains::budgeted_min_tmix(uniform_pmf(n + 1), 1.0 / (n + 1));
    CHECK(design.tmix < n * n * (n + 2.0) / 6.0 - 1e-6);
  }

  // frozen golden: 5 uniform states, budget 0.2 gives (40 + 16 sqrt 6)/5
  const auto design = chains::budgeted_min_tmix(uniform_pmf(5), 0.2);
  CHECK(design.tmix == Catch::Approx((40.0 + 16.0 * std::sqrt(6.0)) / 5.0).margin(1e-9));
  CHECK(design.tmix ==
        Catch::Approx(duality::tmix_closed(chains::bd_from_kernel(design.kernel), uniform_pmf(5)).value)
            .margin(1e-9));

  CHECK_THROWS_AS(chains::budgeted_min_tmix(uniform_pmf(3), 0.0), validation_error);
}
