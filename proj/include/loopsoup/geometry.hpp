#pragma once

#include "loopsoup/types.hpp"

#include <optional>
#include <vector>

namespace loopsoup {

// Axis-aligned cube [-R, R)^d centered at the origin. The half-open
// convention makes every boundary-membership question (box containment,
// cell assignment, shred entry/exit) decidable without ties.
struct CenteredBox {
  double radius = 1.0;
  int dim = 3;

  bool contains(const Vec& x) const {
    for (int i = 0; i < dim; ++i) {
      if (x[i] < -radius || x[i] >= radius) return false;
    }
    return true;
  }

  double side() const { return 2.0 * radius; }
  double volume() const;
  double diameter() const;  // Euclidean diameter 2R*sqrt(d)

  // Euclidean distance from x to the closed cube.
  double distance_to(const Vec& x) const;

  CenteredBox scaled(double factor) const { return {radius * factor, dim}; }
};

bool operator==(const CenteredBox& a, const CenteredBox& b);

// theta_x: y -> y - x. Shifts compose additively; theta_x(x) = 0.
struct Shift {
  Vec vector;
};

inline Vec apply_shift(const Vec& y, const Shift& by) { return y - by.vector; }

// Partition of the macrobox [-R_macro, R_macro)^d into cells z + [-R, R)^d
// with z in 2R Z^d. Requires R_macro an odd integer multiple of R so the
// origin cell is centered and the cells tile the macrobox exactly.
struct SubboxGrid {
  CenteredBox macro;
  double cell_radius = 1.0;
  int cells_per_side = 1;  // odd
  std::vector<Vec> centers;

  CenteredBox cell_box() const { return {cell_radius, macro.dim}; }
  int cell_count() const;
};

SubboxGrid build_grid(double macro_radius, double cell_radius, int d);

// Integer lattice coordinates j of the cell containing the point
// (center z = 2R*j), or nullopt when the point is outside the macrobox.
std::optional<IVec> subbox_index_of(const Vec& point, const SubboxGrid& grid);

// Center z of the containing cell, or nullopt outside the macrobox.
std::optional<Vec> subbox_of(const Vec& point, const SubboxGrid& grid);

// Flat id in [0, cells_per_side^d) for lattice coordinates j; the inverse
// of the ordering used for SubboxGrid::centers.
int flat_cell_id(const SubboxGrid& grid, const IVec& j);

}  // namespace loopsoup
