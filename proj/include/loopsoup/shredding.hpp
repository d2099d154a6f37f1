#pragma once

#include "loopsoup/geometry.hpp"
#include "loopsoup/paths.hpp"

#include <cstdint>
#include <vector>

namespace loopsoup {

struct ShredConfiguration {
  std::vector<Shred> shreds;
  CenteredBox host_box;

  std::size_t size() const { return shreds.size(); }
  bool empty() const { return shreds.empty(); }
  std::int64_t particle_count() const;
};

// (entry site in W, particle count, exit site outside W) of one shred.
struct BoundaryTriple {
  Vec entry;
  int length = 0;
  Vec exit;
};

struct BoundaryShredConfiguration {
  std::vector<BoundaryTriple> triples;
  CenteredBox host_box;

  std::int64_t particle_count() const;
};

struct CondensateCounters {
  std::int64_t n_ell = 0;          // all particles
  std::int64_t n_r_crossing = 0;   // particles in R-crossing loops
  std::int64_t n_not_crossing = 0;
  std::int64_t n_long = 0;         // particles in loops of length > cutoff
  std::int64_t n_short = 0;
  std::vector<std::int64_t> particles_per_length;  // index k-1: particles in k-loops
};

struct EmpiricalCell {
  Vec center;
  LoopConfiguration loop_part;
  ShredConfiguration shred_part;
};

// Per-cell origin-shifted (restricted loops, shreds) snapshots, each carrying
// weight 1/#cells.
struct EmpiricalSubboxMeasure {
  CenteredBox cell_box;
  std::vector<EmpiricalCell> cells;

  double weight() const { return cells.empty() ? 0.0 : 1.0 / cells.size(); }
};

// Keeps exactly the loops whose every particle lies in w.
LoopConfiguration restrict_loops(const LoopConfiguration& config, const CenteredBox& w);

// Maximal runs of consecutive particles inside w, each extended by the one
// leg exiting w. Loops are treated cyclically (a run may wrap through the
// anchor); a loop with every particle inside w has no exit leg and throws —
// the configuration-level operator routes such loops to the loop part.
// Fragments and shreds are linear; a trailing run whose final leg ends
// inside w throws for the same reason.
std::vector<Shred> shred_path(const Loop& loop, const CenteredBox& w);
std::vector<Shred> shred_path(const InterlacementFragment& fragment, const CenteredBox& w);
std::vector<Shred> shred_path(const Shred& shred, const CenteredBox& w);

// Union of shred_path over every loop that has a particle outside w (the
// crossing loops) and every fragment. Together with restrict_loops this
// accounts for each in-w particle of the configuration exactly once.
ShredConfiguration shred_config(const LoopConfiguration& config,
                                const std::vector<InterlacementFragment>& fragments,
                                const CenteredBox& w);

// Whether projecting to w_tilde and then to w reproduces the direct
// projection to w, coordinate-exactly, on both the loop part and the shred
// multiset. Throws unless w is contained in w_tilde.
bool consistency_check(const LoopConfiguration& config,
                       const std::vector<InterlacementFragment>& fragments,
                       const CenteredBox& w, const CenteredBox& w_tilde);

BoundaryShredConfiguration boundary_shreds(const ShredConfiguration& sc);

// Particle counters at cell radius R from the grid: R-crossing means having
// particles in at least two cells of the 2R Z^d lattice (the infinite
// lattice, so particles outside the macrobox still resolve), long means loop
// length > long_cutoff.
CondensateCounters condensate_counters(const LoopConfiguration& config,
                                       const SubboxGrid& grid, int long_cutoff);

EmpiricalSubboxMeasure empirical_measure(const LoopConfiguration& config,
                                         const SubboxGrid& grid);

}  // namespace loopsoup
