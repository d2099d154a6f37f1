#include "loopsoup/geometry.hpp"

#include <doctest.h>

#include <random>
#include <set>

using namespace loopsoup;

namespace {

Vec make_vec(std::initializer_list<double> xs) {
  Vec v(static_cast<int>(xs.size()));
  int i = 0;
  for (double x : xs) v[i++] = x;
  return v;
}

}  // namespace

TEST_CASE("box containment is half-open") {
  CenteredBox box{1.0, 2};
  CHECK(box.contains(make_vec({0.0, 0.0})));
  CHECK(box.contains(make_vec({-1.0, -1.0})));
  CHECK(!box.contains(make_vec({1.0, 0.0})));
  CHECK(!box.contains(make_vec({0.0, 1.0})));
  CHECK(box.volume() == doctest::Approx(4.0));
}

TEST_CASE("build_grid counts and tiling") {
  SUBCASE("3x3 grid in 2d") {
    auto grid = build_grid(3.0, 1.0, 2);
    CHECK(grid.centers.size() == 9);
    CHECK(grid.cells_per_side == 3);
    double vol = 0.0;
    for (const auto& z : grid.centers) {
      (void)z;
      vol += grid.cell_box().volume();
    }
    CHECK(vol == doctest::Approx(grid.macro.volume()));
  }
  SUBCASE("single cell in 3d") {
    auto grid = build_grid(1.0, 1.0, 3);
    CHECK(grid.centers.size() == 1);
    CHECK(grid.centers[0].norm() == 0.0);
  }
  SUBCASE("non-commensurate radii rejected") {
    CHECK_THROWS_AS(build_grid(2.5, 1.0, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_grid(2.0, 1.0, 2), std::invalid_argument);  // even multiple
  }
}

TEST_CASE("subbox_of basics") {
  auto grid = build_grid(3.0, 1.0, 3);
  SUBCASE("origin maps to origin cell") {
    auto z = subbox_of(make_vec({0.0, 0.0, 0.0}), grid);
    REQUIRE(z.has_value());
    CHECK(z->norm() == 0.0);
  }
  SUBCASE("half-open boundary assigns the right-hand cell") {
    auto z = subbox_of(make_vec({1.0, 0.0, 0.0}), grid);
    REQUIRE(z.has_value());
    CHECK((*z)[0] == doctest::Approx(2.0));
    CHECK((*z)[1] == 0.0);
  }
  SUBCASE("outside the macrobox yields none") {
    CHECK(!subbox_of(make_vec({3.0, 0.0, 0.0}), grid).has_value());
    CHECK(subbox_of(make_vec({-3.0, 0.0, 0.0}), grid).has_value());
  }
}

TEST_CASE("uniform points always land in exactly one containing cell") {
  auto grid = build_grid(5.0, 1.0, 3);
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> u(-5.0, 5.0);
  for (int trial = 0; trial < 10000; ++trial) {
    Vec p(3);
    for (int i = 0; i < 3; ++i) p[i] = u(rng);
    if (!grid.macro.contains(p)) continue;
    auto z = subbox_of(p, grid);
    REQUIRE(z.has_value());

    // Brute-force membership scan over every cell.
    int containing = 0;
    Vec found(3);
    for (const auto& center : grid.centers) {
      bool inside = true;
      for (int i = 0; i < 3; ++i) {
        const double rel = p[i] - center[i];
        if (rel < -1.0 || rel >= 1.0) {
          inside = false;
          break;
        }
      }
      if (inside) {
        ++containing;
        found = center;
      }
    }
    REQUIRE(containing == 1);
    CHECK((found - *z).norm() == 0.0);
  }
}

TEST_CASE("flat_cell_id indexes the centers list") {
  auto grid = build_grid(3.0, 1.0, 2);
  std::set<int> seen;
  for (int a = -1; a <= 1; ++a) {
    for (int b = -1; b <= 1; ++b) {
      IVec j(2);
      j << a, b;
      const int id = flat_cell_id(grid, j);
      REQUIRE(id >= 0);
      REQUIRE(id < static_cast<int>(grid.centers.size()));
      CHECK(grid.centers[static_cast<std::size_t>(id)][0] == doctest::Approx(2.0 * a));
      CHECK(grid.centers[static_cast<std::size_t>(id)][1] == doctest::Approx(2.0 * b));
      seen.insert(id);
    }
  }
  CHECK(seen.size() == 9);
}

TEST_CASE("shift is additive and invertible") {
  Shift s{make_vec({1.0, -2.0})};
  Vec y = make_vec({0.5, 0.5});
  Vec shifted = apply_shift(y, s);
  CHECK(shifted[0] == doctest::Approx(-0.5));
  CHECK(shifted[1] == doctest::Approx(2.5));
  CHECK((apply_shift(s.vector, s)).norm() == 0.0);
  Shift back{-s.vector};
  CHECK((apply_shift(apply_shift(y, s), back) - y).norm() == 0.0);
}

TEST_CASE("distance to box") {
  CenteredBox box{1.0, 2};
  CHECK(box.distance_to(make_vec({0.0, 0.0})) == 0.0);
  CHECK(box.distance_to(make_vec({2.0, 0.0})) == doctest::Approx(1.0));
  CHECK(box.distance_to(make_vec({2.0, 2.0})) == doctest::Approx(std::sqrt(2.0)));
}
