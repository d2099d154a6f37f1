#include "loopsoup/paths.hpp"

#include <cmath>
#include <stdexcept>

namespace loopsoup {

Leg sample_bridge(const Vec& x, const Vec& y, double duration, int substeps, Rng& rng) {
  if (duration <= 0.0) throw std::invalid_argument("sample_bridge: duration must be positive");
  if (substeps < 1) throw std::invalid_argument("sample_bridge: substeps must be >= 1");
  if (x.size() != y.size()) throw std::invalid_argument("sample_bridge: dimension mismatch");

  const int d = static_cast<int>(x.size());
  const double dt = duration / substeps;
  std::normal_distribution<double> n01(0.0, 1.0);

  Leg leg;
  leg.beta = duration;
  leg.points.resize(d, substeps + 1);
  leg.points.col(0) = x;
  for (int j = 1; j < substeps; ++j) {
    const double remaining = duration - (j - 1) * dt;
    const double sigma = std::sqrt(2.0 * dt * (remaining - dt) / remaining);
    const Vec& prev = leg.points.col(j - 1);
    for (int i = 0; i < d; ++i) {
      const double mean = prev[i] + (y[i] - prev[i]) * dt / remaining;
      leg.points(i, j) = mean + sigma * n01(rng);
    }
  }
  leg.points.col(substeps) = y;
  return leg;
}

double spread(const Leg& leg) {
  double best = 0.0;
  const auto origin = leg.points.col(0);
  for (int j = 1; j < leg.points.cols(); ++j) {
    best = std::max(best, (leg.points.col(j) - origin).norm());
  }
  return best;
}

double max_leg_spread(const Loop& loop) {
  double best = 0.0;
  for (const auto& leg : loop.legs) best = std::max(best, spread(leg));
  return best;
}

double max_leg_spread(const LoopConfiguration& config) {
  double best = 0.0;
  for (const auto& loop : config.loops) best = std::max(best, max_leg_spread(loop));
  return best;
}

Mat particles(const Loop& loop) {
  const int k = loop.length();
  Mat pts(loop.anchor.size(), k);
  for (int i = 0; i < k; ++i) pts.col(i) = loop.legs[static_cast<std::size_t>(i)].points.col(0);
  return pts;
}

Mat particles(const Shred& shred) {
  const int l = shred.length();
  Mat pts(shred.legs.front().dim(), l);
  for (int i = 0; i < l; ++i) pts.col(i) = shred.legs[static_cast<std::size_t>(i)].points.col(0);
  return pts;
}

Mat particles(const InterlacementFragment& fragment) {
  const int n = fragment.particle_count();
  Mat pts(fragment.legs.front().dim(), n + 1);
  for (int i = 0; i < n; ++i) pts.col(i) = fragment.legs[static_cast<std::size_t>(i)].points.col(0);
  pts.col(n) = fragment.legs.back().end();
  return pts;
}

Mat sample_walk_bridge(const Vec& x0, const Vec& x1, int steps, double beta, Rng& rng) {
  if (steps < 1) throw std::invalid_argument("sample_walk_bridge: steps must be >= 1");
  if (beta <= 0.0) throw std::invalid_argument("sample_walk_bridge: beta must be positive");
  const int d = static_cast<int>(x0.size());
  std::normal_distribution<double> n01(0.0, 1.0);

  Mat pts(d, steps + 1);
  pts.col(0) = x0;
  for (int j = 1; j < steps; ++j) {
    const int remaining = steps - (j - 1);
    const double sigma = std::sqrt(2.0 * beta * (remaining - 1) / static_cast<double>(remaining));
    const Vec& prev = pts.col(j - 1);
    for (int i = 0; i < d; ++i) {
      const double mean = prev[i] + (x1[i] - prev[i]) / remaining;
      pts(i, j) = mean + sigma * n01(rng);
    }
  }
  pts.col(steps) = x1;
  return pts;
}

Loop loop_from_particles(const Mat& pts, double beta, int substeps, Rng& rng) {
  const int k = static_cast<int>(pts.cols());
  Loop loop;
  loop.anchor = pts.col(0);
  loop.legs.reserve(static_cast<std::size_t>(k));
  for (int j = 0; j < k; ++j) {
    const Vec from = pts.col(j);
    const Vec to = pts.col((j + 1) % k);
    loop.legs.push_back(sample_bridge(from, to, beta, substeps, rng));
  }
  return loop;
}

Loop sample_loop(const Vec& x, int k, double beta, int substeps, Rng& rng) {
  if (k < 1) throw std::invalid_argument("sample_loop: k must be >= 1");
  Mat pts = sample_walk_bridge(x, x, k, beta, rng);
  return loop_from_particles(pts.leftCols(k), beta, substeps, rng);
}

namespace {

bool exact_eq(const Vec& a, const Vec& b) {
  return a.size() == b.size() && (a.array() == b.array()).all();
}

}  // namespace

bool valid_loop(const Loop& loop) {
  if (loop.legs.empty()) return false;
  const int k = loop.length();
  if (!exact_eq(loop.legs.front().points.col(0), loop.anchor)) return false;
  for (int j = 0; j < k; ++j) {
    const auto& cur = loop.legs[static_cast<std::size_t>(j)];
    const auto& next = loop.legs[static_cast<std::size_t>((j + 1) % k)];
    if (!exact_eq(cur.end(), next.start())) return false;
  }
  return true;
}

bool valid_shred(const Shred& shred) {
  if (shred.legs.empty()) return false;
  for (std::size_t j = 0; j + 1 < shred.legs.size(); ++j) {
    if (!exact_eq(shred.legs[j].end(), shred.legs[j + 1].start())) return false;
  }
  for (const auto& leg : shred.legs) {
    if (!shred.host_box.contains(leg.start())) return false;
  }
  return !shred.host_box.contains(shred.terminal());
}

namespace {

Leg shift_leg(const Leg& leg, const Shift& by) {
  Leg out = leg;
  out.points.colwise() -= by.vector;
  return out;
}

}  // namespace

Loop shift_config(const Loop& loop, const Shift& by) {
  Loop out;
  out.anchor = loop.anchor - by.vector;
  out.legs.reserve(loop.legs.size());
  for (const auto& leg : loop.legs) out.legs.push_back(shift_leg(leg, by));
  return out;
}

LoopConfiguration shift_config(const LoopConfiguration& config, const Shift& by) {
  LoopConfiguration out;
  out.loops.reserve(config.loops.size());
  for (const auto& loop : config.loops) out.loops.push_back(shift_config(loop, by));
  return out;
}

Shred shift_config(const Shred& shred, const Shift& by) {
  Shred out;
  out.host_box = shred.host_box;
  out.legs.reserve(shred.legs.size());
  for (const auto& leg : shred.legs) out.legs.push_back(shift_leg(leg, by));
  return out;
}

InterlacementFragment shift_config(const InterlacementFragment& fragment, const Shift& by) {
  InterlacementFragment out = fragment;
  for (auto& leg : out.legs) leg.points.colwise() -= by.vector;
  return out;
}

std::int64_t total_particles(const LoopConfiguration& config) {
  std::int64_t n = 0;
  for (const auto& loop : config.loops) n += loop.length();
  return n;
}

}  // namespace loopsoup
