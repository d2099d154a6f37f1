#pragma once

#include "loopsoup/geometry.hpp"
#include "loopsoup/types.hpp"

#include <vector>

namespace loopsoup {

// One unit-time piece of a path: f on [0, beta], stored at substeps+1
// equally spaced times. points.col(0) is the leg's particle.
struct Leg {
  Mat points;  // d x (substeps+1)
  double beta = 1.0;

  int dim() const { return static_cast<int>(points.rows()); }
  int substeps() const { return static_cast<int>(points.cols()) - 1; }
  Vec start() const { return points.col(0); }
  Vec end() const { return points.col(points.cols() - 1); }
};

// Closed path of k legs; legs join exactly and the last leg returns to the
// anchor, so the k leg starts are the particles.
struct Loop {
  std::vector<Leg> legs;
  Vec anchor;

  int length() const { return static_cast<int>(legs.size()); }
};

// Maximal run of consecutive particles of some path inside host_box, plus
// the one terminal leg exiting it: l legs, l particles inside, terminal
// point outside.
struct Shred {
  std::vector<Leg> legs;
  CenteredBox host_box;

  int length() const { return static_cast<int>(legs.size()); }
  Vec terminal() const { return legs.back().end(); }
};

// Finite record of a bi-infinite trajectory near a window: legs cover the
// particles x_{-B}, ..., x_0, ..., x_F with x_0 the first window visit
// (canonical representative of the shift-by-beta equivalence class).
// The backward part never visits the window.
struct InterlacementFragment {
  std::vector<Leg> legs;
  int backward_steps = 0;  // B
  CenteredBox window;
  bool backward_escaped = true;
  bool forward_escaped = true;

  int particle_count() const { return static_cast<int>(legs.size()); }
};

struct LoopConfiguration {
  std::vector<Loop> loops;

  std::size_t size() const { return loops.size(); }
  bool empty() const { return loops.empty(); }
};

// Brownian bridge from x to y over the given duration, generator Delta
// (per-coordinate variance 2t), sampled sequentially: each interior point is
// the conditioned Gaussian given the current point and the pinned endpoint.
// Endpoints are stored exactly.
Leg sample_bridge(const Vec& x, const Vec& y, double duration, int substeps, Rng& rng);

// max_t |f(t) - f(0)| evaluated on the discretization grid.
double spread(const Leg& leg);

double max_leg_spread(const Loop& loop);
double max_leg_spread(const LoopConfiguration& config);

// The k particles (leg starts) in cyclic order from the anchor; d x k.
Mat particles(const Loop& loop);

// Particles of a shred (leg starts, all inside the host box); d x l.
Mat particles(const Shred& shred);

// Particles x_{-B..F} of a fragment; d x (particle_count()+1) including the
// final leg's endpoint.
Mat particles(const InterlacementFragment& fragment);

// Positions of a Gaussian random walk (step variance 2*beta per coordinate)
// of `steps` steps pinned to start at x0 and end at x1; d x (steps+1), both
// endpoints exact.
Mat sample_walk_bridge(const Vec& x0, const Vec& x1, int steps, double beta, Rng& rng);

// Closed Brownian loop with k particles anchored at x: interior particles
// from the pinned Gaussian walk, legs filled in by sample_bridge.
Loop sample_loop(const Vec& x, int k, double beta, int substeps, Rng& rng);

// Assemble a loop from given particles (d x k, first column the anchor),
// sampling every leg shape.
Loop loop_from_particles(const Mat& pts, double beta, int substeps, Rng& rng);

// Exact structural checks (floating-point identity, no tolerance).
bool valid_loop(const Loop& loop);
bool valid_shred(const Shred& shred);

LoopConfiguration shift_config(const LoopConfiguration& config, const Shift& by);
Loop shift_config(const Loop& loop, const Shift& by);
Shred shift_config(const Shred& shred, const Shift& by);
InterlacementFragment shift_config(const InterlacementFragment& fragment, const Shift& by);

std::int64_t total_particles(const LoopConfiguration& config);

}  // namespace loopsoup
