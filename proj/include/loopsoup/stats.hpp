#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace loopsoup::stats {

double mean(std::span<const double> xs);
double variance(std::span<const double> xs);  // unbiased, needs n >= 2

// Survival function of the chi-square distribution with dof degrees of freedom.
double chi2_sf(double x, double dof);

double poisson_pmf(std::int64_t n, double lambda);
double poisson_log_pmf(std::int64_t n, double lambda);

// Survival function of the Kolmogorov distribution, P(K > t).
double kolmogorov_sf(double t);

struct KsResult {
  double d = 0.0;
  double p = 1.0;
};

KsResult ks_two_sample(std::vector<double> a, std::vector<double> b);

struct Chi2Result {
  double stat = 0.0;
  double p = 1.0;
  int dof = 0;
};

// Goodness of fit against expected bin counts; adjacent bins are pooled from
// both ends until every expected count reaches min_expected.
Chi2Result chi2_gof(std::vector<double> observed, std::vector<double> expected,
                    int estimated_params = 0, double min_expected = 5.0);

// Chi-square test of iid counts against a Poisson law with the given mean:
// bins the counts, computes expected bin masses from the pmf.
Chi2Result poisson_chi2(std::span<const std::int64_t> counts, double lambda,
                        double min_expected = 5.0);

// Index-of-dispersion test at a known mean: sum (x - mean)^2 / mean is
// approximately chi-square with n dof under the Poisson null. Two-sided p.
double dispersion_pvalue_known_mean(std::span<const std::int64_t> counts, double mean);

// Integrated autocorrelation time by Sokal's self-consistent window
// (smallest W with W >= c * tau_hat(W)). Returns >= 1.
double integrated_autocorr_time(std::span<const double> xs, double c = 5.0);

double effective_sample_size(std::span<const double> xs, double c = 5.0);

}  // namespace loopsoup::stats
