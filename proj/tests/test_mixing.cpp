#include <catch2/catch_amalgamated.hpp>

#include "mixcomp/chains.hpp"
#include "mixcomp/mixing.hpp"

#include <algorithm>
#include <cmath>

using namespace mixcomp;
using mixing::Metric;

namespace {

Pmf pair(double a) {
  Vec w(2);
  w << a, 1.0 - a;
  return Pmf{w};
}

}  // namespace

TEST_CASE("distances on hand-checked pairs") {
  const Pmf delta = point_mass(2, 0);
  const Pmf pi = uniform_pmf(2);

  CHECK(mixing::distance(delta, pi, Metric::tv) == Catch::Approx(0.5));
  CHECK(mixing::distance(delta, pi, Metric::sep) == Catch::Approx(1.0));
  CHECK(mixing::distance(delta, pi, Metric::l2) == Catch::Approx(1.0));
  CHECK(mixing::distance(delta, pi, Metric::linf) == Catch::Approx(1.0));
  CHECK(mixing::distance(delta, pi, Metric::lp, 2.0) ==
        Catch::Approx(mixing::distance(delta, pi, Metric::l2)));
  CHECK(mixing::distance(delta, pi, Metric::hellinger) == Catch::Approx(1.0 - std::sqrt(0.5)));
  CHECK(std::isinf(mixing::distance(delta, pi, Metric::kl_pi_rho)));
  CHECK(mixing::distance(delta, pi, Metric::kl_rho_pi) == Catch::Approx(std::log(2.0)));
  // the reference pmf must be strictly positive
  CHECK_THROWS_AS(mixing::distance(pi, delta, Metric::tv), validation_error);

  // tv is half the l1 distance
  const Pmf rho = pair(0.7);
  CHECK(mixing::distance(rho, pair(0.4), Metric::tv) == Catch::Approx(0.3));
  // separation sees only the worst undershoot
  CHECK(mixing::distance(pair(0.75), pair(0.5), Metric::sep) == Catch::Approx(0.5));
}

TEST_CASE("every metric vanishes at stationarity") {
  Vec w(3);
  w << 0.2, 0.3, 0.5;
  const Pmf pi{w};
  for (Metric m : {Metric::tv, Metric::sep, Metric::l2, Metric::lp, Metric::linf, Metric::hellinger,
                   Metric::kl_pi_rho, Metric::kl_rho_pi}) {
    CHECK(mixing::distance(pi, pi, m) == Catch::Approx(0.0).margin(1e-14));
  }
}

TEST_CASE("lp norms grow toward linf") {
  const Pmf rho = pair(0.9);
  const Pmf pi = pair(0.75);
  const double l2 = mixing::distance(rho, pi, Metric::l2);
  const double l8 = mixing::distance(rho, pi, Metric::lp, 8.0);
  const double linf = mixing::distance(rho, pi, Metric::linf);
  CHECK(l2 <= l8);  // power means increase with the exponent
  CHECK(l8 <= linf + 1e-14);
  CHECK(linf == Catch::Approx(0.6));  // |0.1/0.25 - 1|
  CHECK(mixing::distance(rho, pi, Metric::lp, 1000.0) == Catch::Approx(linf).epsilon(1e-2));
  CHECK_THROWS_AS(mixing::distance(rho, pi, Metric::lp, 0.5), validation_error);
}

TEST_CASE("trace of the three-state uniform chain") {
  const Kernel k = chains::uniform_chain(2);
  const auto trace = mixing::trace(k, point_mass(3, 0), 2);
  REQUIRE(trace.rows.size() == 3);
  CHECK(trace.rows[0].tv == Catch::Approx(2.0 / 3.0));
  CHECK(trace.rows[1].tv == Catch::Approx(1.0 / 3.0));
  CHECK(trace.rows[2].tv == Catch::Approx(1.0 / 6.0));
  CHECK(trace.rows[0].sep == Catch::Approx(1.0));
  CHECK(trace.rows[1].sep == Catch::Approx(1.0));
  CHECK(trace.rows[2].sep == Catch::Approx(0.25));

  // stationary start: identically zero, and horizon 0 means a single row
  const auto flat = mixing::trace(k, uniform_pmf(3), 0);
  REQUIRE(flat.rows.size() == 1);
  CHECK(flat.rows[0].tv == Catch::Approx(0.0).margin(1e-14));
  CHECK(flat.rows[0].sep == Catch::Approx(0.0).margin(1e-12));
}

TEST_CASE("distance traces are non-increasing for a monotone chain") {
  Vec p(3);
  p << 0.4, 0.3, 0.2;
  const Kernel k = chains::symmetric_bd(p);
  const auto trace = mixing::trace(k, point_mass(4, 0), 50);
  for (size_t t = 1; t < trace.rows.size(); ++t) {
    CHECK(trace.rows[t].tv <= trace.rows[t - 1].tv + 1e-12);
    CHECK(trace.rows[t].sep <= trace.rows[t - 1].sep + 1e-12);
    CHECK(trace.rows[t].l2 <= trace.rows[t - 1].l2 + 1e-12);
  }
  CHECK(trace.rows[50].tv < 1e-3);
}

TEST_CASE("majorization trace certifies the pointwise ordering") {
  Vec slow_p(2);
  slow_p << 0.3, 0.3;
  const Kernel fast = chains::uniform_chain(2);
  const Kernel slow = chains::symmetric_bd(slow_p);

  // the slower chain's law majorizes the faster chain's at every time
  const auto holds = mixing::majorization_trace(slow, fast, point_mass(3, 0), 100);
  REQUIRE(holds.size() == 101);
  for (bool h : holds) CHECK(h);

  // ties agree everywhere; the reverse ordering breaks at some time
  for (bool h : mixing::majorization_trace(fast, fast, point_mass(3, 0), 20)) CHECK(h);
  const auto reversed = mixing::majorization_trace(fast, slow, point_mass(3, 0), 100);
  CHECK(std::find(reversed.begin(), reversed.end(), false) != reversed.end());
}

TEST_CASE("time-t laws from different starts share the multiset of entries") {
  for (int n : {2, 3, 5}) {
    for (int t : {1, 2, 4}) {
      CHECK(mixing::start_state_multiset_invariance(n, t));
    }
  }
}
