#include <catch2/catch_amalgamated.hpp>

#include "mixcomp/core.hpp"
#include "support/oracles.hpp"

#include <random>

using namespace mixcomp;

TEST_CASE("pmf validates and normalizes") {
  Vec w(3);
  w << 0.4, 0.4, 0.2;
  const Pmf pi{w};
  CHECK(pi.size() == 3);
  CHECK(pi(0) == 0.4);
  CHECK(pi.strictly_positive());

  // weights within the admit tolerance are rescaled to an exact pmf
  Vec drifted(2);
  drifted << 0.5 + 2e-10, 0.5;
  const Pmf fixed{drifted};
  CHECK(fixed(0) + fixed(1) == 1.0);

  Vec far(2);
  far << 0.7, 0.7;
  CHECK_THROWS_AS(Pmf(far), validation_error);
  Vec neg(2);
  neg << 1.2, -0.2;
  CHECK_THROWS_AS(Pmf(neg), validation_error);
  CHECK_THROWS_AS(Pmf(Vec()), validation_error);

  Vec zero(3);
  zero << 0.5, 0.0, 0.5;
  CHECK_FALSE(Pmf(zero).strictly_positive());
}

TEST_CASE("cdf, point mass, uniform pmf") {
  const Pmf pi = uniform_pmf(4);
  const Vec h = cdf(pi);
  CHECK(h[0] == Catch::Approx(0.25));
  CHECK(h[2] == Catch::Approx(0.75));
  CHECK(h[3] == Catch::Approx(1.0));

  const Pmf delta = point_mass(3, 1);
  CHECK(delta(0) == 0.0);
  CHECK(delta(1) == 1.0);
  CHECK_THROWS_AS(point_mass(3, 3), validation_error);
}

TEST_CASE("kernel constructor enforces stochastic rows") {
  Mat good(2, 2);
  good << 0.25, 0.75, 0.5, 0.5;
  CHECK_NOTHROW(Kernel{good});

  Mat bad_sum(2, 2);
  bad_sum << 0.7, 0.7, 0.5, 0.5;
  CHECK_THROWS_AS(Kernel{bad_sum}, validation_error);

  Mat negative(2, 2);
  negative << 1.1, -0.1, 0.5, 0.5;
  CHECK_THROWS_AS(Kernel{negative}, validation_error);

  // round-off negatives are clamped to exact zero
  Mat tiny(2, 2);
  tiny << 1.0 + 5e-13, -5e-13, 0.5, 0.5;
  const Kernel k{tiny};
  CHECK(k(0, 1) == 0.0);

  Mat drifted(2, 2);
  drifted << 0.6, 0.4 + 3e-10, 0.5, 0.5;
  CHECK_THROWS_AS(Kernel{drifted}, validation_error);
  const Kernel renorm = Kernel::from_rows_normalized(drifted);
  CHECK(renorm(0, 0) + renorm(0, 1) == Catch::Approx(1.0).margin(1e-15));
}

TEST_CASE("with_stationary rejects a non-stationary pmf") {
  Mat m(2, 2);
  m << 0.9, 0.1, 0.3, 0.7;  // stationary (0.75, 0.25)
  const Kernel k{m};
  Vec w(2);
  w << 0.75, 0.25;
  const Kernel tagged = k.with_stationary(Pmf{w});
  REQUIRE(tagged.cached_stationary().has_value());
  CHECK((*tagged.cached_stationary())(0) == 0.75);
  CHECK_THROWS_AS(k.with_stationary(uniform_pmf(2)), validation_error);
  CHECK_THROWS_AS(k.with_stationary(uniform_pmf(3)), validation_error);
}

TEST_CASE("poset invariants are checked") {
  // missing reflexivity
  CHECK_THROWS_AS(Poset(2, {0, 0, 0, 1}), validation_error);
  // 2-cycle breaks antisymmetry
  CHECK_THROWS_AS(Poset(2, {1, 1, 1, 1}), validation_error);
  // 0<=1, 1<=2 without 0<=2 breaks transitivity
  CHECK_THROWS_AS(Poset(3, {1, 1, 0, 0, 1, 1, 0, 0, 1}), validation_error);

  const Poset chain = Poset::linear(3);
  CHECK(chain.leq(0, 2));
  CHECK_FALSE(chain.leq(2, 0));
  CHECK(chain.strict_pairs().size() == 3);
  CHECK(Poset::antichain(4).strict_pairs().empty());
}

TEST_CASE("irreducibility and aperiodicity") {
  Mat cycle(2, 2);
  cycle << 0.0, 1.0, 1.0, 0.0;
  const Kernel flip{cycle};
  CHECK(is_irreducible(flip));
  CHECK_FALSE(is_aperiodic(flip));

  CHECK_FALSE(is_irreducible(identity_kernel(2)));

  Mat lazy(2, 2);
  lazy << 0.5, 0.5, 0.5, 0.5;
  CHECK(is_aperiodic(Kernel{lazy}));
}

TEST_CASE("stationary pmf matches power iteration") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng() % 5);
    const Pmf target = oracles::random_pmf(rng, n);
    const Kernel k = oracles::metropolis_path(target);
    const Pmf pi = stationary(k);
    CHECK((pi.weights() - target.weights()).lpNorm<Eigen::Infinity>() < 1e-9);
    CHECK((pi.weights() - oracles::naive_stationary(k)).lpNorm<Eigen::Infinity>() < 1e-9);
  }

  // dense (non-tridiagonal) path through the linear solver
  Mat m(3, 3);
  m << 0.2, 0.3, 0.5, 0.4, 0.4, 0.2, 0.1, 0.6, 0.3;
  const Kernel k{m};
  const Pmf pi = stationary(k);
  CHECK((pi.weights() - oracles::naive_stationary(k)).lpNorm<Eigen::Infinity>() < 1e-10);
  Vec resid = pi.weights().transpose() * k.rows();
  CHECK((resid - pi.weights()).lpNorm<Eigen::Infinity>() < 1e-12);

  CHECK_THROWS_AS(stationary(identity_kernel(2)), validation_error);
}

TEST_CASE("time reversal and reversibility") {
  Mat rot(3, 3);
  rot << 0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0;
  const Kernel cycle{rot};
  const Pmf pi = uniform_pmf(3);
  CHECK_FALSE(is_reversible(cycle, pi));
  const Kernel back = time_reversal(cycle, pi);
  CHECK(back(1, 0) == Catch::Approx(1.0));  // reversed cycle
  CHECK(back(0, 2) == Catch::Approx(1.0));

  Mat sym(2, 2);
  sym << 0.8, 0.2, 0.2, 0.8;
  const Kernel k{sym};
  CHECK(is_reversible(k, uniform_pmf(2)));
  const Kernel same = time_reversal(k, uniform_pmf(2));
  CHECK((same.rows() - k.rows()).lpNorm<Eigen::Infinity>() < 1e-15);
}

TEST_CASE("evolve applies the kernel t times") {
  Mat m(3, 3);
  m << 0.5, 0.5, 0.0, 0.5, 0.0, 0.5, 0.0, 0.5, 0.5;
  const Kernel k{m};
  const Pmf one = evolve(point_mass(3, 0), k, 1);
  CHECK(one(0) == Catch::Approx(0.5));
  CHECK(one(1) == Catch::Approx(0.5));
  CHECK(one(2) == 0.0);
  const Pmf zero = evolve(point_mass(3, 0), k, 0);
  CHECK(zero(0) == 1.0);
  CHECK_THROWS_AS(evolve(point_mass(3, 0), k, -1), validation_error);
  CHECK_THROWS_AS(evolve(point_mass(2, 0), k, 1), validation_error);
}

TEST_CASE("kernel algebra identities") {
  Mat m(2, 2);
  m << 0.9, 0.1, 0.4, 0.6;
  const Kernel k{m};
  const Kernel id = identity_kernel(2);

  CHECK((mixture(1.0, k, id).rows() - k.rows()).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((mixture(0.0, k, id).rows() - id.rows()).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK_THROWS_AS(mixture(1.5, k, id), validation_error);

  CHECK((multiply(k, id).rows() - k.rows()).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((kernel_power(k, 0).rows() - id.rows()).lpNorm<Eigen::Infinity>() == 0.0);
  CHECK((kernel_power(k, 2).rows() - multiply(k, k).rows()).lpNorm<Eigen::Infinity>() < 1e-15);
}

TEST_CASE("direct sum places blocks on their cells") {
  Mat swap(2, 2);
  swap << 0.0, 1.0, 1.0, 0.0;
  const Kernel block{swap};
  const Kernel single = identity_kernel(1);

  const Kernel k = direct_sum(block, {0, 2}, single, {1});
  CHECK(k(0, 2) == 1.0);
  CHECK(k(2, 0) == 1.0);
  CHECK(k(1, 1) == 1.0);
  CHECK(k(0, 1) == 0.0);

  CHECK_THROWS_AS(direct_sum(block, {0, 1}, single, {1}), validation_error);  // overlap
  CHECK_THROWS_AS(direct_sum({DirectSummand{block, {0, 1}}}, 3), validation_error);  // uncovered
}
