#include "loopsoup/loop_soup.hpp"

#include "loopsoup/freegas.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace loopsoup {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// sum_{k > k0} k^{-s} for s > 1: direct sum plus midpoint integral remainder.
double power_tail(double s, int k0) {
  double sum = 0.0;
  const int terms = 1 << 16;
  for (int k = k0 + terms; k > k0; --k) sum += std::pow(static_cast<double>(k), -s);
  const double edge = static_cast<double>(k0 + terms) + 0.5;
  return sum + std::pow(edge, 1.0 - s) / (s - 1.0);
}

Vec uniform_in(const CenteredBox& box, Rng& rng) {
  std::uniform_real_distribution<double> u(-box.radius, box.radius);
  Vec x(box.dim);
  for (int c = 0; c < box.dim; ++c) x[c] = u(rng);
  return x;
}

bool interior_particles_inside(const Mat& walk, const CenteredBox& box) {
  for (int i = 1; i + 1 < walk.cols(); ++i) {
    if (!box.contains(walk.col(i))) return false;
  }
  return true;
}

bool whole_path_inside(const Loop& loop, const CenteredBox& box) {
  for (const auto& leg : loop.legs) {
    for (int i = 0; i < leg.points.cols(); ++i) {
      if (!box.contains(leg.points.col(i))) return false;
    }
  }
  return true;
}

bool all_particles_inside(const Loop& loop, const CenteredBox& box) {
  for (const auto& leg : loop.legs) {
    if (!box.contains(leg.start())) return false;
  }
  return true;
}

}  // namespace

BoundaryCondition parse_bc(const std::string& label) {
  if (label == "periodic") return BoundaryCondition::periodic;
  if (label == "dirichlet0") return BoundaryCondition::dirichlet0;
  if (label == "particle") return BoundaryCondition::particle;
  throw std::invalid_argument("unknown boundary condition: " + label);
}

std::string bc_label(BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::periodic: return "periodic";
    case BoundaryCondition::dirichlet0: return "dirichlet0";
    case BoundaryCondition::particle: return "particle";
  }
  throw std::logic_error("invalid boundary condition");
}

SoupIntensity make_intensity(double beta, int d, const CenteredBox& box,
                             BoundaryCondition bc, int k_max) {
  if (k_max < 1) throw std::invalid_argument("k_max must be >= 1");
  if (box.dim != d) throw std::invalid_argument("box dimension mismatch");
  SoupIntensity intensity;
  intensity.beta = beta;
  intensity.d = d;
  intensity.box = box;
  intensity.bc = bc;
  intensity.k_max = k_max;
  intensity.per_length_rates.resize(k_max);
  const double vol = box.volume();
  for (int k = 1; k <= k_max; ++k) {
    intensity.per_length_rates[k - 1] = vol * free_rate(k, beta, d);
  }
  const double c = std::exp(-0.5 * d * std::log(4.0 * std::numbers::pi * beta));
  intensity.rate_tail = vol * c * power_tail(1.0 + 0.5 * d, k_max);
  intensity.density_tail = (d >= 3) ? c * power_tail(0.5 * d, k_max) : kInf;
  return intensity;
}

RateEstimate estimate_rate_bc(int k, const CenteredBox& box, BoundaryCondition bc,
                              double beta, std::int64_t mc_samples, Rng& rng,
                              int substeps) {
  if (k < 1) throw std::invalid_argument("k must be >= 1");
  if (mc_samples < 1) throw std::invalid_argument("mc_samples must be >= 1");
  const double base = box.volume() * free_rate(k, beta, box.dim);
  RateEstimate est;
  if (bc == BoundaryCondition::periodic || (bc == BoundaryCondition::particle && k == 1)) {
    est.value = base;
    est.std_error = 0.0;
    est.samples = 0;
    return est;
  }
  std::int64_t accepted = 0;
  for (std::int64_t i = 0; i < mc_samples; ++i) {
    const Vec x = uniform_in(box, rng);
    bool ok = false;
    if (bc == BoundaryCondition::particle) {
      ok = interior_particles_inside(sample_walk_bridge(x, x, k, beta, rng), box);
    } else {
      ok = whole_path_inside(sample_loop(x, k, beta, substeps, rng), box);
    }
    if (ok) ++accepted;
  }
  const double p = static_cast<double>(accepted) / static_cast<double>(mc_samples);
  est.value = base * p;
  est.std_error = base * std::sqrt(p * (1.0 - p) / static_cast<double>(mc_samples));
  est.samples = mc_samples;
  return est;
}

bool admissible(const Loop& loop, const CenteredBox& box, BoundaryCondition bc) {
  switch (bc) {
    case BoundaryCondition::periodic: return box.contains(loop.anchor);
    case BoundaryCondition::particle: return all_particles_inside(loop, box);
    case BoundaryCondition::dirichlet0: return whole_path_inside(loop, box);
  }
  throw std::logic_error("invalid boundary condition");
}

LoopConfiguration sample_soup(const SoupIntensity& intensity, int substeps, Rng& rng) {
  if (static_cast<int>(intensity.per_length_rates.size()) != intensity.k_max) {
    throw std::invalid_argument("intensity rate table length mismatch");
  }
  LoopConfiguration out;
  for (int k = 1; k <= intensity.k_max; ++k) {
    const double lambda = intensity.per_length_rates[k - 1];
    if (lambda <= 0.0) continue;
    std::poisson_distribution<std::int64_t> law(lambda);
    const std::int64_t n = law(rng);
    for (std::int64_t i = 0; i < n; ++i) {
      const Vec anchor = uniform_in(intensity.box, rng);
      switch (intensity.bc) {
        case BoundaryCondition::periodic:
          out.loops.push_back(sample_loop(anchor, k, intensity.beta, substeps, rng));
          break;
        case BoundaryCondition::particle: {
          // Thin on the particle skeleton before paying for leg shapes: the
          // accepted skeletons are exactly the conditioned pinned walks, and
          // legs given particles are plain bridges.
          const Mat walk = sample_walk_bridge(anchor, anchor, k, intensity.beta, rng);
          if (!interior_particles_inside(walk, intensity.box)) break;
          out.loops.push_back(loop_from_particles(walk.leftCols(k), intensity.beta,
                                                  substeps, rng));
          break;
        }
        case BoundaryCondition::dirichlet0: {
          Loop loop = sample_loop(anchor, k, intensity.beta, substeps, rng);
          if (whole_path_inside(loop, intensity.box)) out.loops.push_back(std::move(loop));
          break;
        }
      }
    }
  }
  return out;
}

double log_density_loop(const Loop& loop, const SoupIntensity& intensity) {
  const int k = loop.length();
  if (k < 1 || k > intensity.k_max) {
    throw std::invalid_argument("loop length outside the intensity truncation");
  }
  if (!admissible(loop, intensity.box, intensity.bc)) return -kInf;
  return std::log(intensity.per_length_rates[k - 1]) - std::log(intensity.box.volume());
}

}  // namespace loopsoup
