#include "loopsoup/geometry.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace loopsoup {

double CenteredBox::volume() const { return std::pow(side(), dim); }

double CenteredBox::diameter() const { return side() * std::sqrt(static_cast<double>(dim)); }

double CenteredBox::distance_to(const Vec& x) const {
  double sq = 0.0;
  for (int i = 0; i < dim; ++i) {
    const double excess = std::abs(x[i]) - radius;
    if (excess > 0.0) sq += excess * excess;
  }
  return std::sqrt(sq);
}

bool operator==(const CenteredBox& a, const CenteredBox& b) {
  return a.radius == b.radius && a.dim == b.dim;
}

int SubboxGrid::cell_count() const {
  int n = 1;
  for (int i = 0; i < macro.dim; ++i) n *= cells_per_side;
  return n;
}

SubboxGrid build_grid(double macro_radius, double cell_radius, int d) {
  if (d < 1) throw std::invalid_argument("build_grid: dimension must be >= 1");
  if (cell_radius <= 0.0 || macro_radius <= 0.0) {
    throw std::invalid_argument("build_grid: radii must be positive");
  }
  const double ratio = macro_radius / cell_radius;
  const double rounded = std::round(ratio);
  if (std::abs(ratio - rounded) > 1e-9 * std::max(1.0, ratio)) {
    throw std::invalid_argument(
        "build_grid: macro radius " + std::to_string(macro_radius) +
        " is not an integer multiple of cell radius " + std::to_string(cell_radius));
  }
  const long m = static_cast<long>(rounded);
  if (m % 2 == 0) {
    throw std::invalid_argument(
        "build_grid: macro/cell radius ratio must be odd so the origin cell is centered (got " +
        std::to_string(m) + ")");
  }

  SubboxGrid grid;
  grid.macro = CenteredBox{macro_radius, d};
  grid.cell_radius = cell_radius;
  grid.cells_per_side = static_cast<int>(m);

  const int half = grid.cells_per_side / 2;
  const int total = grid.cell_count();
  grid.centers.reserve(total);
  IVec j = IVec::Constant(d, -half);
  for (int count = 0; count < total; ++count) {
    Vec z(d);
    for (int i = 0; i < d; ++i) z[i] = 2.0 * cell_radius * j[i];
    grid.centers.push_back(std::move(z));
    for (int i = 0; i < d; ++i) {
      if (j[i] < half) {
        ++j[i];
        break;
      }
      j[i] = -half;
    }
  }
  return grid;
}

std::optional<IVec> subbox_index_of(const Vec& point, const SubboxGrid& grid) {
  if (!grid.macro.contains(point)) return std::nullopt;
  const int d = grid.macro.dim;
  const double r = grid.cell_radius;
  IVec j(d);
  const int half = grid.cells_per_side / 2;
  for (int i = 0; i < d; ++i) {
    // p in [2rj - r, 2rj + r)  <=>  j = floor((p + r) / 2r)
    long idx = static_cast<long>(std::floor((point[i] + r) / (2.0 * r)));
    // Containment already holds; guard the floating-point edge at the wall.
    if (idx > half) idx = half;
    if (idx < -half) idx = -half;
    j[i] = static_cast<int>(idx);
  }
  return j;
}

std::optional<Vec> subbox_of(const Vec& point, const SubboxGrid& grid) {
  auto j = subbox_index_of(point, grid);
  if (!j) return std::nullopt;
  Vec z(grid.macro.dim);
  for (int i = 0; i < grid.macro.dim; ++i) z[i] = 2.0 * grid.cell_radius * (*j)[i];
  return z;
}

int flat_cell_id(const SubboxGrid& grid, const IVec& j) {
  const int half = grid.cells_per_side / 2;
  int id = 0;
  for (int i = grid.macro.dim - 1; i >= 0; --i) {
    id = id * grid.cells_per_side + (j[i] + half);
  }
  return id;
}

}  // namespace loopsoup
