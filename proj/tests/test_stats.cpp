#include "loopsoup/stats.hpp"

#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

using namespace loopsoup;

TEST_CASE("chi2_sf matches closed forms") {
  // dof=2: survival is exactly exp(-x/2).
  CHECK(stats::chi2_sf(2.0, 2.0) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(stats::chi2_sf(7.0, 2.0) == doctest::Approx(std::exp(-3.5)).epsilon(1e-12));
  // dof=1: survival is erfc(sqrt(x/2)).
  CHECK(stats::chi2_sf(3.0, 1.0) == doctest::Approx(std::erfc(std::sqrt(1.5))).epsilon(1e-12));
  // Classic 5% critical value for dof=1.
  CHECK(stats::chi2_sf(3.8414588206941254, 1.0) == doctest::Approx(0.05).epsilon(1e-9));
  CHECK(stats::chi2_sf(0.0, 5.0) == 1.0);
}

TEST_CASE("poisson pmf") {
  CHECK(stats::poisson_pmf(3, 2.5) ==
        doctest::Approx(std::exp(-2.5) * 2.5 * 2.5 * 2.5 / 6.0).epsilon(1e-12));
  CHECK(stats::poisson_pmf(0, 0.0) == 1.0);
  CHECK(stats::poisson_pmf(1, 0.0) == 0.0);
  double mass = 0.0;
  for (int n = 0; n < 200; ++n) mass += stats::poisson_pmf(n, 7.3);
  CHECK(mass == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("kolmogorov survival anchors") {
  CHECK(stats::kolmogorov_sf(0.0) == 1.0);
  // Median of the Kolmogorov distribution.
  CHECK(stats::kolmogorov_sf(0.82757355) == doctest::Approx(0.5).epsilon(1e-4));
  // Classic 5% point.
  CHECK(stats::kolmogorov_sf(1.3580986) == doctest::Approx(0.05).epsilon(1e-3));
  CHECK(stats::kolmogorov_sf(3.0) < 1e-7);
}

TEST_CASE("two-sample KS accepts same law, rejects shifted law") {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n01(0.0, 1.0);
  std::vector<double> a(4000), b(4000), c(4000);
  for (auto& x : a) x = n01(rng);
  for (auto& x : b) x = n01(rng);
  for (auto& x : c) x = n01(rng) + 0.25;
  auto same = stats::ks_two_sample(a, b);
  CHECK(same.p > 0.001);
  auto diff = stats::ks_two_sample(a, c);
  CHECK(diff.p < 1e-6);
}

TEST_CASE("poisson chi-square accepts Poisson counts, rejects overdispersed counts") {
  std::mt19937_64 rng(99);
  const double lambda = 4.2;
  std::poisson_distribution<std::int64_t> pois(lambda);
  std::vector<std::int64_t> good(20000);
  for (auto& c : good) c = pois(rng);
  auto ok = stats::poisson_chi2(good, lambda);
  CHECK(ok.p > 0.001);

  // Mixture of two Poisson means with the same average: overdispersed.
  std::poisson_distribution<std::int64_t> lo(1.2), hi(7.2);
  std::vector<std::int64_t> bad(20000);
  std::bernoulli_distribution flip(0.5);
  for (auto& c : bad) c = flip(rng) ? lo(rng) : hi(rng);
  auto reject = stats::poisson_chi2(bad, lambda);
  CHECK(reject.p < 1e-8);

  CHECK(stats::dispersion_pvalue_known_mean(good, lambda) > 0.001);
  CHECK(stats::dispersion_pvalue_known_mean(bad, lambda) < 1e-8);
}

TEST_CASE("autocorrelation time: iid vs AR(1)") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> n01(0.0, 1.0);
  std::vector<double> iid(50000);
  for (auto& x : iid) x = n01(rng);
  CHECK(stats::integrated_autocorr_time(iid) == doctest::Approx(1.0).epsilon(0.15));

  const double phi = 0.9;
  std::vector<double> ar(200000);
  double prev = 0.0;
  for (auto& x : ar) {
    prev = phi * prev + n01(rng);
    x = prev;
  }
  // tau = (1+phi)/(1-phi) = 19 for AR(1).
  CHECK(stats::integrated_autocorr_time(ar) == doctest::Approx(19.0).epsilon(0.3));
}

TEST_CASE("ESS of a constant series equals the sample count") {
  std::vector<double> xs(1000, 3.14);
  CHECK(stats::effective_sample_size(xs) == doctest::Approx(1000.0));
}
