#include "loopsoup/stats.hpp"

#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace loopsoup::stats {

double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean: empty sample");
  double s = 0.0;
  for (double x : xs) s += x;
  return s / static_cast<double>(xs.size());
}

double variance(std::span<const double> xs) {
  if (xs.size() < 2) throw std::invalid_argument("variance: need at least two points");
  const double m = mean(xs);
  double s = 0.0;
  for (double x : xs) s += (x - m) * (x - m);
  return s / static_cast<double>(xs.size() - 1);
}

double chi2_sf(double x, double dof) {
  if (dof <= 0.0) throw std::invalid_argument("chi2_sf: dof must be positive");
  if (x <= 0.0) return 1.0;
  return boost::math::gamma_q(dof / 2.0, x / 2.0);
}

double poisson_log_pmf(std::int64_t n, double lambda) {
  if (n < 0) return -std::numeric_limits<double>::infinity();
  if (lambda < 0.0) throw std::invalid_argument("poisson_log_pmf: lambda < 0");
  if (lambda == 0.0) return n == 0 ? 0.0 : -std::numeric_limits<double>::infinity();
  const double dn = static_cast<double>(n);
  return dn * std::log(lambda) - lambda - std::lgamma(dn + 1.0);
}

double poisson_pmf(std::int64_t n, double lambda) { return std::exp(poisson_log_pmf(n, lambda)); }

double kolmogorov_sf(double t) {
  if (t <= 0.0) return 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 100; ++j) {
    const double term = std::exp(-2.0 * j * j * t * t);
    sum += (j % 2 == 1) ? term : -term;
    if (term < 1e-16) break;
  }
  return std::clamp(2.0 * sum, 0.0, 1.0);
}

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  if (a.empty() || b.empty()) throw std::invalid_argument("ks_two_sample: empty sample");
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  const double na = static_cast<double>(a.size());
  const double nb = static_cast<double>(b.size());
  std::size_t i = 0, j = 0;
  double d = 0.0;
  while (i < a.size() && j < b.size()) {
    const double x = std::min(a[i], b[j]);
    while (i < a.size() && a[i] <= x) ++i;
    while (j < b.size() && b[j] <= x) ++j;
    d = std::max(d, std::abs(static_cast<double>(i) / na - static_cast<double>(j) / nb));
  }
  const double ne = std::sqrt(na * nb / (na + nb));
  KsResult r;
  r.d = d;
  r.p = kolmogorov_sf((ne + 0.12 + 0.11 / ne) * d);
  return r;
}

Chi2Result chi2_gof(std::vector<double> observed, std::vector<double> expected,
                    int estimated_params, double min_expected) {
  if (observed.size() != expected.size() || observed.empty()) {
    throw std::invalid_argument("chi2_gof: size mismatch");
  }
  // Pool from the right end, then from the left, until expected >= min_expected.
  auto pool_tail = [&](bool right) {
    while (expected.size() > 1) {
      const std::size_t k = right ? expected.size() - 1 : 0;
      const std::size_t into = right ? expected.size() - 2 : 1;
      if (expected[k] >= min_expected) break;
      expected[into] += expected[k];
      observed[into] += observed[k];
      expected.erase(expected.begin() + static_cast<std::ptrdiff_t>(k));
      observed.erase(observed.begin() + static_cast<std::ptrdiff_t>(k));
    }
  };
  pool_tail(true);
  pool_tail(false);

  Chi2Result r;
  r.dof = static_cast<int>(observed.size()) - 1 - estimated_params;
  if (r.dof < 1) {
    r.stat = 0.0;
    r.p = 1.0;
    r.dof = 0;
    return r;
  }
  double stat = 0.0;
  for (std::size_t k = 0; k < observed.size(); ++k) {
    const double diff = observed[k] - expected[k];
    stat += diff * diff / expected[k];
  }
  r.stat = stat;
  r.p = chi2_sf(stat, static_cast<double>(r.dof));
  return r;
}

Chi2Result poisson_chi2(std::span<const std::int64_t> counts, double lambda,
                        double min_expected) {
  if (counts.empty()) throw std::invalid_argument("poisson_chi2: empty sample");
  std::int64_t max_count = 0;
  for (auto c : counts) max_count = std::max(max_count, c);
  const double n = static_cast<double>(counts.size());

  std::vector<double> observed(static_cast<std::size_t>(max_count) + 2, 0.0);
  std::vector<double> expected(observed.size(), 0.0);
  for (auto c : counts) observed[static_cast<std::size_t>(c)] += 1.0;
  double mass = 0.0;
  for (std::int64_t k = 0; k <= max_count; ++k) {
    const double p = poisson_pmf(k, lambda);
    expected[static_cast<std::size_t>(k)] = n * p;
    mass += p;
  }
  expected.back() = n * std::max(0.0, 1.0 - mass);  // tail bin > max_count
  return chi2_gof(std::move(observed), std::move(expected), 0, min_expected);
}

double dispersion_pvalue_known_mean(std::span<const std::int64_t> counts, double mean) {
  if (counts.empty()) throw std::invalid_argument("dispersion: empty sample");
  if (mean <= 0.0) throw std::invalid_argument("dispersion: mean must be positive");
  double stat = 0.0;
  for (auto c : counts) {
    const double diff = static_cast<double>(c) - mean;
    stat += diff * diff / mean;
  }
  const double dof = static_cast<double>(counts.size());
  const double upper = chi2_sf(stat, dof);
  return 2.0 * std::min(upper, 1.0 - upper);
}

double integrated_autocorr_time(std::span<const double> xs, double c) {
  const std::size_t n = xs.size();
  if (n < 2) return 1.0;
  const double m = mean(xs);
  std::vector<double> centered(n);
  for (std::size_t i = 0; i < n; ++i) centered[i] = xs[i] - m;
  double c0 = 0.0;
  for (double x : centered) c0 += x * x;
  c0 /= static_cast<double>(n);
  // Numerically constant series: rounding noise in the mean must not register.
  if (c0 < 1e-24 * std::max(1.0, m * m)) return 1.0;

  double tau = 1.0;
  const std::size_t max_lag = n / 2;
  for (std::size_t t = 1; t <= max_lag; ++t) {
    double ct = 0.0;
    for (std::size_t i = 0; i + t < n; ++i) ct += centered[i] * centered[i + t];
    ct /= static_cast<double>(n);
    tau += 2.0 * ct / c0;
    if (static_cast<double>(t) >= c * tau) break;  // Sokal window
  }
  return std::max(tau, 1.0);
}

double effective_sample_size(std::span<const double> xs, double c) {
  if (xs.empty()) return 0.0;
  return static_cast<double>(xs.size()) / integrated_autocorr_time(xs, c);
}

}  // namespace loopsoup::stats
