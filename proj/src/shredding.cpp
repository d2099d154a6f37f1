#include "loopsoup/shredding.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace loopsoup {

namespace {

bool all_particles_in(const Loop& loop, const CenteredBox& w) {
  for (const auto& leg : loop.legs) {
    if (!w.contains(leg.start())) return false;
  }
  return true;
}

// Runs over a linear leg sequence whose particles are the leg starts and
// whose final point is the last leg's end.
std::vector<Shred> runs_linear(const std::vector<Leg>& legs, const CenteredBox& w) {
  std::vector<Shred> out;
  const int n = static_cast<int>(legs.size());
  int i = 0;
  while (i < n) {
    if (!w.contains(legs[i].start())) {
      ++i;
      continue;
    }
    int j = i;
    while (j + 1 < n && w.contains(legs[j + 1].start())) ++j;
    if (j == n - 1 && w.contains(legs[n - 1].end())) {
      throw std::invalid_argument("path ends inside the box: no exit leg for its last run");
    }
    Shred s;
    s.host_box = w;
    s.legs.assign(legs.begin() + i, legs.begin() + j + 1);
    out.push_back(std::move(s));
    i = j + 1;
  }
  return out;
}

// Canonical flattening for coordinate-exact multiset comparison.
std::vector<double> flatten(const Shred& s) {
  std::vector<double> key;
  key.push_back(static_cast<double>(s.length()));
  for (const auto& leg : s.legs) {
    key.push_back(leg.beta);
    for (int c = 0; c < leg.points.size(); ++c) key.push_back(leg.points.data()[c]);
  }
  return key;
}

std::vector<double> flatten(const Loop& loop) {
  std::vector<double> key;
  key.push_back(static_cast<double>(loop.length()));
  for (int c = 0; c < loop.anchor.size(); ++c) key.push_back(loop.anchor[c]);
  for (const auto& leg : loop.legs) {
    key.push_back(leg.beta);
    for (int c = 0; c < leg.points.size(); ++c) key.push_back(leg.points.data()[c]);
  }
  return key;
}

template <typename T>
bool same_multiset(const std::vector<T>& a, const std::vector<T>& b) {
  if (a.size() != b.size()) return false;
  std::vector<std::vector<double>> ka, kb;
  ka.reserve(a.size());
  kb.reserve(b.size());
  for (const auto& x : a) ka.push_back(flatten(x));
  for (const auto& x : b) kb.push_back(flatten(x));
  std::sort(ka.begin(), ka.end());
  std::sort(kb.begin(), kb.end());
  return ka == kb;
}

}  // namespace

std::int64_t ShredConfiguration::particle_count() const {
  std::int64_t n = 0;
  for (const auto& s : shreds) n += s.length();
  return n;
}

std::int64_t BoundaryShredConfiguration::particle_count() const {
  std::int64_t n = 0;
  for (const auto& t : triples) n += t.length;
  return n;
}

LoopConfiguration restrict_loops(const LoopConfiguration& config, const CenteredBox& w) {
  LoopConfiguration out;
  for (const auto& loop : config.loops) {
    if (all_particles_in(loop, w)) out.loops.push_back(loop);
  }
  return out;
}

std::vector<Shred> shred_path(const Loop& loop, const CenteredBox& w) {
  const int k = loop.length();
  int first_out = -1;
  for (int i = 0; i < k; ++i) {
    if (!w.contains(loop.legs[i].start())) {
      first_out = i;
      break;
    }
  }
  if (first_out < 0) {
    throw std::invalid_argument("every particle inside the box: loop is not shreddable");
  }
  std::vector<Shred> out;
  int o = 0;
  while (o < k) {
    const int idx = (first_out + o) % k;
    if (!w.contains(loop.legs[idx].start())) {
      ++o;
      continue;
    }
    int len = 1;
    while (w.contains(loop.legs[(first_out + o + len) % k].start())) ++len;
    Shred s;
    s.host_box = w;
    for (int t = 0; t < len; ++t) s.legs.push_back(loop.legs[(idx + t) % k]);
    out.push_back(std::move(s));
    o += len;
  }
  return out;
}

std::vector<Shred> shred_path(const InterlacementFragment& fragment, const CenteredBox& w) {
  return runs_linear(fragment.legs, w);
}

std::vector<Shred> shred_path(const Shred& shred, const CenteredBox& w) {
  return runs_linear(shred.legs, w);
}

ShredConfiguration shred_config(const LoopConfiguration& config,
                                const std::vector<InterlacementFragment>& fragments,
                                const CenteredBox& w) {
  ShredConfiguration out;
  out.host_box = w;
  for (const auto& loop : config.loops) {
    if (all_particles_in(loop, w)) continue;
    auto shreds = shred_path(loop, w);
    out.shreds.insert(out.shreds.end(), std::make_move_iterator(shreds.begin()),
                      std::make_move_iterator(shreds.end()));
  }
  for (const auto& fragment : fragments) {
    auto shreds = shred_path(fragment, w);
    out.shreds.insert(out.shreds.end(), std::make_move_iterator(shreds.begin()),
                      std::make_move_iterator(shreds.end()));
  }
  return out;
}

bool consistency_check(const LoopConfiguration& config,
                       const std::vector<InterlacementFragment>& fragments,
                       const CenteredBox& w, const CenteredBox& w_tilde) {
  if (w.dim != w_tilde.dim || w.radius > w_tilde.radius) {
    throw std::invalid_argument("consistency_check requires w contained in w_tilde");
  }
  const LoopConfiguration direct_loops = restrict_loops(config, w);
  const ShredConfiguration direct_shreds = shred_config(config, fragments, w);

  const LoopConfiguration mid_loops = restrict_loops(config, w_tilde);
  const ShredConfiguration mid_shreds = shred_config(config, fragments, w_tilde);

  const LoopConfiguration composed_loops = restrict_loops(mid_loops, w);
  ShredConfiguration composed_shreds;
  composed_shreds.host_box = w;
  for (const auto& loop : mid_loops.loops) {
    if (all_particles_in(loop, w)) continue;
    auto shreds = shred_path(loop, w);
    composed_shreds.shreds.insert(composed_shreds.shreds.end(),
                                  std::make_move_iterator(shreds.begin()),
                                  std::make_move_iterator(shreds.end()));
  }
  for (const auto& shred : mid_shreds.shreds) {
    auto shreds = shred_path(shred, w);
    composed_shreds.shreds.insert(composed_shreds.shreds.end(),
                                  std::make_move_iterator(shreds.begin()),
                                  std::make_move_iterator(shreds.end()));
  }

  return same_multiset(direct_loops.loops, composed_loops.loops) &&
         same_multiset(direct_shreds.shreds, composed_shreds.shreds);
}

BoundaryShredConfiguration boundary_shreds(const ShredConfiguration& sc) {
  BoundaryShredConfiguration out;
  out.host_box = sc.host_box;
  out.triples.reserve(sc.shreds.size());
  for (const auto& s : sc.shreds) {
    out.triples.push_back({s.legs.front().start(), s.length(), s.terminal()});
  }
  return out;
}

CondensateCounters condensate_counters(const LoopConfiguration& config,
                                       const SubboxGrid& grid, int long_cutoff) {
  CondensateCounters out;
  const double r = grid.cell_radius;
  auto lattice_cell = [&](const Vec& x) {
    IVec j(x.size());
    for (int c = 0; c < x.size(); ++c) {
      j[c] = static_cast<int>(std::floor((x[c] + r) / (2.0 * r)));
    }
    return j;
  };
  for (const auto& loop : config.loops) {
    const int k = loop.length();
    const IVec home = lattice_cell(loop.legs.front().start());
    bool crossing = false;
    for (int i = 1; i < k && !crossing; ++i) {
      if (lattice_cell(loop.legs[i].start()) != home) crossing = true;
    }
    out.n_ell += k;
    (crossing ? out.n_r_crossing : out.n_not_crossing) += k;
    (k > long_cutoff ? out.n_long : out.n_short) += k;
    if (static_cast<int>(out.particles_per_length.size()) < k) {
      out.particles_per_length.resize(k, 0);
    }
    out.particles_per_length[k - 1] += k;
  }
  return out;
}

EmpiricalSubboxMeasure empirical_measure(const LoopConfiguration& config,
                                         const SubboxGrid& grid) {
  EmpiricalSubboxMeasure out;
  out.cell_box = grid.cell_box();
  out.cells.reserve(grid.centers.size());
  for (const auto& z : grid.centers) {
    EmpiricalCell cell;
    cell.center = z;
    const LoopConfiguration shifted = shift_config(config, Shift{z});
    cell.loop_part = restrict_loops(shifted, out.cell_box);
    cell.shred_part = shred_config(shifted, {}, out.cell_box);
    out.cells.push_back(std::move(cell));
  }
  return out;
}

}  // namespace loopsoup
