#include <catch2/catch_amalgamated.hpp>

#include "mixcomp/orders.hpp"
#include "mixcomp/structures.hpp"

#include <cmath>

using namespace mixcomp;
using structures::PermutationSpace;
using structures::SpinSpace;

TEST_CASE("permutation space indexing") {
  const PermutationSpace space(3);
  CHECK(space.states() == 6);
  CHECK(space.letters() == 3);
  CHECK(space.perm(0) == std::vector<int>{1, 2, 3});  // identity first
  CHECK(space.inversions(0) == 0);
  CHECK(space.inversions(space.index_of({3, 2, 1})) == 3);
  CHECK(space.index_of(space.perm(4)) == 4);
  CHECK_THROWS_AS(space.index_of({1, 1, 2}), validation_error);
  CHECK_THROWS_AS(PermutationSpace(6), validation_error);
}

TEST_CASE("swap order ideal counts") {
  // frozen: 9 down-sets for 3 letters, 250 for 4
  CHECK(orders::enumerate_down_sets(structures::bruhat_poset(PermutationSpace(3))).size() == 9);
  CHECK(orders::enumerate_down_sets(structures::bruhat_poset(PermutationSpace(4))).size() == 250);

  // identity is the bottom, the reversal the top
  const PermutationSpace space(4);
  const Poset order = structures::bruhat_poset(space);
  const int top = space.index_of({4, 3, 2, 1});
  for (int s = 0; s < space.states(); ++s) {
    CHECK(order.leq(0, s));
    CHECK(order.leq(s, top));
  }
}

TEST_CASE("sorting stationary pmf") {
  const PermutationSpace space(3);
  const Pmf flat = structures::shuffle_stationary(space, 0.5);
  for (int s = 0; s < 6; ++s) CHECK(flat(s) == Catch::Approx(1.0 / 6.0));

  const double p = 0.7, ratio = 0.3 / 0.7;
  const Pmf pi = structures::shuffle_stationary(space, p);
  for (int s = 0; s < 6; ++s)
    CHECK(pi(s) / pi(0) == Catch::Approx(std::pow(ratio, space.inversions(s))));
  CHECK_THROWS_AS(structures::shuffle_stationary(space, 1.0), validation_error);
}

TEST_CASE("adjacent sort kernels") {
  const PermutationSpace space(3);
  // construction self-checks reversibility: with_stationary would throw
  const Kernel k = structures::shuffle_site_kernel(space, 1, 0.7);
  REQUIRE(k.cached_stationary().has_value());

  // from the identity, site 1 either keeps (1,2,3) or swaps to (2,1,3)
  const int swapped = space.index_of({2, 1, 3});
  CHECK(k(0, 0) == Catch::Approx(0.7));
  CHECK(k(0, swapped) == Catch::Approx(0.3));

  CHECK(structures::shuffle_site_kernels(space, 0.7).size() == 2);
  CHECK_THROWS_AS(structures::shuffle_site_kernel(space, 3, 0.7), validation_error);
}

TEST_CASE("sort updates sit below holding still") {
  const PermutationSpace space(3);
  const Poset order = structures::bruhat_poset(space);
  for (double p : {0.3, 0.6}) {
    const Pmf pi = structures::shuffle_stationary(space, p);
    const Kernel hold = identity_kernel(space.states()).with_stationary(pi);
    for (int site = 1; site < 3; ++site) {
      const auto rep = orders::compare(structures::shuffle_site_kernel(space, site, p), hold, pi, order);
      CHECK(rep.holds);
    }
  }
}

TEST_CASE("sweeping sites in order mixes no slower than picking at random") {
  const PermutationSpace space(3);
  const double p = 0.3;
  const Pmf pi = structures::shuffle_stationary(space, p);
  const auto sites = structures::shuffle_site_kernels(space, p);
  const Kernel sweep = structures::systematic_scan(sites);
  const Kernel pick = structures::random_scan(sites);
  CHECK(orders::compare(sweep, pick, pi, structures::bruhat_poset(space)).holds);
}

TEST_CASE("spin space packing") {
  const SpinSpace space = SpinSpace::grid(2, 2);
  CHECK(space.sites() == 4);
  CHECK(space.states() == 16);

  // site 0 is the least significant digit
  const int s = 0b0110;  // sites 1 and 2 up
  CHECK(space.value(s, 0) == 0);
  CHECK(space.value(s, 1) == 1);
  CHECK(space.value(s, 2) == 1);
  CHECK(space.value(s, 3) == 0);
  CHECK(space.with_value(s, 0, 1) == 0b0111);
  CHECK(space.with_value(s, 1, 0) == 0b0100);

  // frozen: 168 down-sets of the coordinatewise order on 16 states
  CHECK(orders::enumerate_down_sets(structures::product_order(space)).size() == 168);
}

TEST_CASE("pair interaction pmf") {
  const SpinSpace space = SpinSpace::grid(2, 2);
  const Pmf flat = structures::ising_pmf(space, 0.0);
  for (int s = 0; s < 16; ++s) CHECK(flat(s) == Catch::Approx(1.0 / 16.0));

  const Pmf pi = structures::ising_pmf(space, 0.7);
  // global flip symmetry, and aligned states are the most likely
  for (int s = 0; s < 16; ++s) CHECK(pi(s) == Catch::Approx(pi(15 - s)).margin(1e-15));
  for (int s = 1; s < 15; ++s) CHECK(pi(0) > pi(s));
}

TEST_CASE("single-site conditional update is a projection") {
  const SpinSpace space = SpinSpace::grid(2, 2);
  const Pmf pi = structures::ising_pmf(space, 0.5);
  const auto kernels = structures::spin_site_kernels(space, pi);
  REQUIRE(kernels.size() == 4);
  for (const Kernel& k : kernels) {
    REQUIRE(k.cached_stationary().has_value());  // self-checked at build
    CHECK((kernel_power(k, 2).rows() - k.rows()).lpNorm<Eigen::Infinity>() < 1e-12);
  }
}

TEST_CASE("attractive interactions are monotone, repulsive are not") {
  const SpinSpace space = SpinSpace::grid(2, 2);
  CHECK(structures::is_monotone_system(space, structures::ising_pmf(space, 0.5)));
  CHECK(structures::is_monotone_system(space, structures::ising_pmf(space, 0.0)));
  CHECK_FALSE(structures::is_monotone_system(space, structures::ising_pmf(space, -1.0)));
}

TEST_CASE("site updates below holding, sweeps below random picks") {
  const SpinSpace space = SpinSpace::grid(2, 2);
  const Poset order = structures::product_order(space);
  const Pmf pi = structures::ising_pmf(space, 0.5);
  const auto sites = structures::spin_site_kernels(space, pi);
  const Kernel hold = identity_kernel(16).with_stationary(pi);
  for (const Kernel& k : sites) CHECK(orders::compare(k, hold, pi, order).holds);
  CHECK(orders::compare(structures::systematic_scan(sites), structures::random_scan(sites), pi, order).holds);
}

TEST_CASE("four random picks are dominated by a diluted sweep") {
  // experimental reverse bound: Krand^4 is below the mixture putting weight
  // (1/4)^4 on the full sweep and the rest on holding
  const SpinSpace space = SpinSpace::grid(2, 2);
  for (double beta : {0.5, 1.0}) {
    const Pmf pi = structures::ising_pmf(space, beta);
    const auto sites = structures::spin_site_kernels(space, pi);
    const Kernel rand4 = kernel_power(structures::random_scan(sites), 4);
    const Kernel diluted =
        mixture(1.0 / 256.0, structures::systematic_scan(sites), identity_kernel(16));
    CHECK(orders::compare(rand4, diluted, pi, structures::product_order(space)).holds);
  }
}

TEST_CASE("random scan weights") {
  const SpinSpace space = SpinSpace::grid(2, 2);
  const Pmf pi = structures::ising_pmf(space, 0.5);
  const auto sites = structures::spin_site_kernels(space, pi);

  // uniform random scan is the plain average
  Mat avg = Mat::Zero(16, 16);
  for (const Kernel& k : sites) avg += k.rows() / 4.0;
  CHECK((structures::random_scan(sites).rows() - avg).lpNorm<Eigen::Infinity>() < 1e-15);

  Vec w(4);
  w << 1.0, 0.0, 0.0, 0.0;
  CHECK((structures::random_scan(sites, w).rows() - sites[0].rows()).lpNorm<Eigen::Infinity>() == 0.0);
  Vec bad(3);
  bad << 0.5, 0.3, 0.2;
  CHECK_THROWS_AS(structures::random_scan(sites, bad), validation_error);
}

TEST_CASE("doubly stochastic draws average permutations") {
  for (uint64_t seed : {1u, 2u, 3u}) {
    const Kernel k = structures::doubly_stochastic_sample(6, seed, 4);
    REQUIRE(k.cached_stationary().has_value());
    for (int j = 0; j < 6; ++j) {
      double col = 0.0;
      for (int i = 0; i < 6; ++i) col += k(i, j);
      CHECK(col == Catch::Approx(1.0).margin(1e-12));
    }
    CHECK(orders::compare(k, identity_kernel(6).with_stationary(uniform_pmf(6)), uniform_pmf(6),
                          Poset::linear(6))
              .holds);
  }
  // reproducible
  const Kernel a = structures::doubly_stochastic_sample(5, 77, 3);
  const Kernel b = structures::doubly_stochastic_sample(5, 77, 3);
  CHECK((a.rows() - b.rows()).lpNorm<Eigen::Infinity>() == 0.0);
}
