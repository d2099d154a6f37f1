#pragma once

#include "loopsoup/geometry.hpp"
#include "loopsoup/paths.hpp"
#include "loopsoup/types.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace loopsoup {

enum class BoundaryCondition { periodic, dirichlet0, particle };

BoundaryCondition parse_bc(const std::string& label);
std::string bc_label(BoundaryCondition bc);

// Per-length Poisson intensity truncated at k_max. per_length_rates holds the
// free-space rates lambda_k = |box| q_k; boundary conditions are realized by
// thinning inside sample_soup, so the sampled per-length counts are Poisson
// with the bc-corrected parameter without that parameter being tabulated.
// rate_tail is the truncated loop mass sum_{k>k_max} |box| q_k, density_tail
// the truncated particle density sum_{k>k_max} k q_k (infinite for d <= 2).
struct SoupIntensity {
  double beta = 1.0;
  int d = 3;
  CenteredBox box;
  BoundaryCondition bc = BoundaryCondition::periodic;
  int k_max = 1;
  std::vector<double> per_length_rates;
  double rate_tail = 0.0;
  double density_tail = 0.0;
};

SoupIntensity make_intensity(double beta, int d, const CenteredBox& box,
                             BoundaryCondition bc, int k_max);

struct RateEstimate {
  double value = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
};

// Boundary-corrected per-length Poisson parameter. particle: |box| q_k times
// the Monte-Carlo acceptance of the k-1 interior pinned-walk particles
// against the box (exact |box| q_1 for k = 1). dirichlet0: acceptance of the
// whole discretized path at the given grid resolution. periodic: |box| q_k
// exactly (anchors are uniform and shapes unconstrained; winding sectors are
// not sampled).
RateEstimate estimate_rate_bc(int k, const CenteredBox& box, BoundaryCondition bc,
                              double beta, std::int64_t mc_samples, Rng& rng,
                              int substeps = 16);

// Whether a loop carries positive density under the bc: anchor inside for
// periodic, every particle inside for particle, every discretized point
// inside for dirichlet0.
bool admissible(const Loop& loop, const CenteredBox& box, BoundaryCondition bc);

// One draw of the soup: for each k <= k_max, Poisson(lambda_k) proposals with
// uniform anchors and free bridge shapes, thinned by the bc constraint.
LoopConfiguration sample_soup(const SoupIntensity& intensity, int substeps, Rng& rng);

// Log of the intensity density factor entering MCMC acceptance ratios:
// log lambda_k - log |box| plus the bc indicator (0 or -infinity). Throws
// when the loop is longer than k_max.
double log_density_loop(const Loop& loop, const SoupIntensity& intensity);

}  // namespace loopsoup
