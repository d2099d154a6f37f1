#include "loopsoup/freegas.hpp"

#include <doctest.h>

#include <boost/math/special_functions/zeta.hpp>

#include <cmath>
#include <numbers>
#include <vector>

using namespace loopsoup;

namespace {
constexpr double kPi = std::numbers::pi;
}

TEST_CASE("free_rate closed forms") {
  // Normalization point 4 pi beta = 1.
  CHECK(free_rate(1, 1.0 / (4.0 * kPi), 2) == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(free_rate(1, 1.0, 3) ==
        doctest::Approx(std::exp(-1.5 * std::log(4.0 * kPi))).epsilon(1e-14));
  CHECK(free_rate(4, 1.0, 3) ==
        doctest::Approx(0.25 * std::exp(-1.5 * std::log(16.0 * kPi))).epsilon(1e-14));
  // Strictly decreasing in k.
  double prev = free_rate(1, 0.7, 3);
  for (int k = 2; k <= 40; ++k) {
    const double cur = free_rate(k, 0.7, 3);
    CHECK(cur < prev);
    prev = cur;
  }
  CHECK_THROWS_AS(free_rate(0, 1.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(free_rate(1, -1.0, 3), std::invalid_argument);
}

TEST_CASE("zeta_partial against closed forms and boost") {
  CHECK(zeta_partial(2.0, 1e-12) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-12));
  CHECK(zeta_partial(4.0, 1e-12) ==
        doctest::Approx(kPi * kPi * kPi * kPi / 90.0).epsilon(1e-12));
  for (double s : {1.5, 2.5, 3.5, 1.0001, 7.0}) {
    CHECK(zeta_partial(s, 1e-13) == doctest::Approx(boost::math::zeta(s)).epsilon(1e-11));
  }
  CHECK_THROWS_AS(zeta_partial(1.0, 1e-10), std::domain_error);
  CHECK_THROWS_AS(zeta_partial(0.5, 1e-10), std::domain_error);
}

TEST_CASE("rho_c and qbar") {
  CHECK(rho_c(1.0 / (4.0 * kPi), 3) ==
        doctest::Approx(boost::math::zeta(1.5)).epsilon(1e-12));
  CHECK(std::isinf(rho_c(1.0, 2)));
  CHECK(std::isinf(rho_c(1.0, 1)));
  CHECK(qbar(1.0 / (4.0 * kPi), 2) == doctest::Approx(kPi * kPi / 6.0).epsilon(1e-12));
  CHECK(qbar(1.0, 3) ==
        doctest::Approx(std::exp(-1.5 * std::log(4.0 * kPi)) * boost::math::zeta(2.5))
            .epsilon(1e-12));

  SUBCASE("dual routes agree to 1e-10") {
    for (double beta : {0.3, 1.0, 2.7}) {
      for (int d : {1, 2, 3, 4, 5}) {
        CHECK(std::abs(qbar(beta, d) - qbar_direct(beta, d, 1e-13)) < 1e-10);
      }
    }
  }
}

TEST_CASE("polylog_exp branches are consistent") {
  // Exact closed form at s=1: Li_1(e^a) = -log(1 - e^a). The points either
  // side of -0.01 pin both internal branches at the crossover.
  for (double a : {-0.5, -0.0100001, -0.0099999, -1e-7}) {
    CHECK(polylog_exp(1.0, a) ==
          doctest::Approx(-std::log(-std::expm1(a))).epsilon(1e-10));
  }
  // Direct-sum branch vs series branch near the crossover.
  const double s = 1.5;
  const double direct_side = polylog_exp(s, -1e-4);
  const double series_side = polylog_exp(s, -1e-8);
  CHECK(direct_side < boost::math::zeta(s));
  CHECK(series_side < boost::math::zeta(s));
  CHECK(series_side > direct_side);  // increasing in alpha
  // Square-root singularity: zeta(3/2) - Li_{3/2}(e^a) ~ 2 sqrt(pi |a|).
  const double defect = boost::math::zeta(s) - series_side;
  CHECK(defect == doctest::Approx(2.0 * std::sqrt(kPi * 1e-8)).epsilon(1e-3));
  CHECK(polylog_exp(s, 0.0) == doctest::Approx(boost::math::zeta(s)).epsilon(1e-12));
  // Continuity across the internal branch crossover at alpha = -0.01. The
  // gap is dominated by the true derivative Li_{s-1}, about 9e2 * 2e-9 at
  // s = 0.5; a branch inconsistency would show up orders above that.
  for (double sx : {0.5, 1.0, 1.5, 2.5}) {
    const double left = polylog_exp(sx, -0.01 - 1e-9);
    const double right = polylog_exp(sx, -0.01 + 1e-9);
    CHECK(std::abs(left - right) < 1e-5);
    CHECK(left < right);
  }
}

TEST_CASE("solve_alpha on the density grid") {
  const double beta = 1.0;
  const int d = 3;
  const double rc = rho_c(beta, d);

  SUBCASE("rho = 0") {
    auto sol = solve_alpha(0.0, beta, d);
    CHECK(std::isinf(sol.alpha));
    CHECK(sol.alpha < 0.0);
    CHECK(sol.entropy == doctest::Approx(qbar(beta, d)).epsilon(1e-14));
    for (double mk : sol.m) CHECK(mk == 0.0);
  }
  SUBCASE("rho = rho_c is the boundary case") {
    auto sol = solve_alpha(rc, beta, d);
    CHECK(sol.alpha == 0.0);
    CHECK(sol.interlacement_density == 0.0);
    for (std::size_t i = 0; i < sol.m.size(); ++i) {
      CHECK(sol.m[i] ==
            doctest::Approx(free_rate(static_cast<int>(i) + 1, beta, d)).epsilon(1e-14));
    }
  }
  SUBCASE("subcritical residual, checked by independent truncated sum") {
    auto sol = solve_alpha(rc / 2.0, beta, d, 1e-12);
    CHECK(sol.alpha < 0.0);
    double mass = 0.0;
    for (int k = 1; k <= 4000; ++k) {
      mass += k * free_rate(k, beta, d) * std::exp(sol.alpha * k);
    }
    CHECK(std::abs(mass - rc / 2.0) < 1e-10);
  }
  SUBCASE("supercritical routes excess to interlacements") {
    auto sol = solve_alpha(2.0 * rc, beta, d);
    CHECK(sol.alpha == 0.0);
    CHECK(sol.interlacement_density == doctest::Approx(rc).epsilon(1e-12));
    CHECK(sol.entropy == 0.0);
  }
  SUBCASE("alpha is nondecreasing in rho") {
    double prev = -1e300;
    for (int i = 1; i <= 40; ++i) {
      auto sol = solve_alpha(rc * i / 40.0, beta, d);
      CHECK(sol.alpha >= prev - 1e-13);
      CHECK(sol.alpha <= 0.0);
      prev = sol.alpha;
    }
  }
  SUBCASE("d=2 has no condensation: alpha stays strictly negative") {
    // alpha ~ -exp(-4 pi rho) here, so rho = 30 already drives alpha to
    // 1e-164; much beyond that leaves double range entirely.
    for (double rho : {0.1, 1.0, 10.0, 30.0}) {
      auto sol = solve_alpha(rho, beta, 2, 1e-12);
      CHECK(sol.alpha < 0.0);
      CHECK(sol.residual < 1e-10);
      CHECK(sol.interlacement_density == 0.0);
    }
  }
  SUBCASE("negative rho rejected") {
    CHECK_THROWS_AS(solve_alpha(-0.1, beta, d), std::invalid_argument);
  }
}

TEST_CASE("entropy_sequence") {
  CHECK(entropy_sequence(std::vector{1.0, 2.0}, std::vector{1.0, 2.0}) == 0.0);
  CHECK(entropy_sequence(std::vector{0.0, 0.0}, std::vector{0.3, 0.7}) ==
        doctest::Approx(1.0));
  CHECK(entropy_sequence(std::vector{0.5}, std::vector{1.0}) ==
        doctest::Approx(1.0 - 0.5 + 0.5 * std::log(0.5)).epsilon(1e-14));
  CHECK(std::isinf(entropy_sequence(std::vector{0.1}, std::vector{0.0})));
  CHECK_THROWS_AS(entropy_sequence(std::vector{-0.1}, std::vector{1.0}),
                  std::invalid_argument);
}

TEST_CASE("chibar properties") {
  const double beta = 1.0;
  const int d = 3;
  const double rc = rho_c(beta, d);

  SUBCASE("chibar(0) equals qbar exactly") {
    auto sol = chibar_free(0.0, beta, d);
    CHECK(sol.chibar == sol.qbar);  // bitwise
    CHECK(sol.beta_f == doctest::Approx(0.0));
  }
  SUBCASE("convex on a grid, zero beyond rho_c") {
    const int n = 100;
    std::vector<double> chi(n + 1);
    for (int i = 0; i <= n; ++i) {
      chi[static_cast<std::size_t>(i)] = chibar_free(2.0 * rc * i / n, beta, d).chibar;
    }
    for (int i = 1; i < n; ++i) {
      const double second = chi[static_cast<std::size_t>(i + 1)] -
                            2.0 * chi[static_cast<std::size_t>(i)] +
                            chi[static_cast<std::size_t>(i - 1)];
      CHECK(second >= -1e-9);
    }
    CHECK(chi[75] == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(chi[100] == doctest::Approx(0.0).epsilon(1e-12));
  }
  SUBCASE("forward difference at zero diverges to -infinity") {
    // Slope at step h behaves like log h, so it decreases monotonically
    // across every resolvable decade; below h ~ 1e-13 the difference
    // chibar - qbar drops under the ulp of qbar and the scan must stop.
    const double q = qbar(beta, d);
    double first_slope = 0.0;
    double prev_slope = 0.0;
    for (double h : {1e-2, 1e-4, 1e-6, 1e-8, 1e-10, 1e-12}) {
      const double slope = (chibar_free(h * rc, beta, d).chibar - q) / (h * rc);
      CHECK(slope < prev_slope);
      prev_slope = slope;
      if (first_slope == 0.0) first_slope = slope;
    }
    CHECK(prev_slope < -25.0);
    CHECK(prev_slope / first_slope > 5.0);  // keeps steepening, no plateau
  }
}

TEST_CASE("discrete relative entropy and its dual bound") {
  const std::vector<double> mu{0.9, 0.1};
  const std::vector<double> nu{0.5, 0.5};
  const double direct = rel_entropy_discrete(mu, nu);
  CHECK(direct ==
        doctest::Approx(0.9 * std::log(1.8) + 0.1 * std::log(0.2)).epsilon(1e-14));
  CHECK(rel_entropy_discrete(nu, nu) == 0.0);

  SUBCASE("dual bound with f = 0 is zero and never exceeds direct") {
    std::vector<std::vector<double>> fs{{0.0, 0.0},
                                        {0.3, -0.2},
                                        {1.0, -1.0},
                                        {std::log(1.8), std::log(0.2)}};
    const double bound = dual_lower_bound(mu, nu, fs);
    CHECK(bound <= direct + 1e-12);
    CHECK(bound == doctest::Approx(direct).epsilon(1e-12));  // optimizer included
    const double zero_only = dual_lower_bound(mu, nu, {{0.0, 0.0}});
    CHECK(zero_only == doctest::Approx(0.0));
  }
  SUBCASE("mu not absolutely continuous gives infinity") {
    CHECK(std::isinf(rel_entropy_discrete(std::vector{0.5, 0.5}, std::vector{1.0, 0.0})));
  }
}
