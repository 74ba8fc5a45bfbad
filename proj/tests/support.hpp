#pragma once

// Fixtures and brute-force oracles shared by the unit and acceptance tests.
// Oracles here deliberately avoid the library's lattice helpers.

#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "vxr/grid.hpp"
#include "vxr/shape.hpp"

namespace vxt {

using namespace vxr;

inline GridSpec square_grid(int dim, int n, double h, double lo) {
  const std::array<int, 3> ext{n, n, n};
  const std::array<double, 3> org{lo, lo, lo};
  return GridSpec::make(dim, std::span<const int>(ext.data(), dim), h,
                        std::span<const double>(org.data(), dim));
}

inline VoxelSet disk(double cx, double cy, double R, const GridSpec& g) {
  return rasterize(Shape::ball({cx, cy, 0.0}, R, 2), g);
}

inline VoxelSet box2(double x0, double y0, double x1, double y1, const GridSpec& g) {
  return rasterize(Shape::box({x0, y0, 0.0}, {x1, y1, 0.0}, 2), g);
}

/// Bernoulli occupancy with a few solid rectangles stamped on top.
inline VoxelSet random_set(const GridSpec& g, std::mt19937_64& rng, double density = 0.3) {
  std::vector<std::uint8_t> occ(g.size(), 0);
  std::bernoulli_distribution coin(density);
  for (auto& o : occ) o = coin(rng) ? 1 : 0;
  std::uniform_int_distribution<int> pick(0, 3);
  const int blocks = pick(rng);
  for (int b = 0; b < blocks; ++b) {
    Index lo{0, 0, 0}, hi{0, 0, 0};
    for (int a = 0; a < g.dim; ++a) {
      std::uniform_int_distribution<int> at(0, g.extent[a] - 1);
      lo[a] = at(rng);
      hi[a] = std::min(g.extent[a] - 1, lo[a] + pick(rng) + 2);
    }
    Index i{0, 0, 0};
    for (i[2] = lo[2]; i[2] <= hi[2]; ++i[2])
      for (i[1] = lo[1]; i[1] <= hi[1]; ++i[1])
        for (i[0] = lo[0]; i[0] <= hi[0]; ++i[0]) occ[g.linear(i)] = 1;
  }
  return VoxelSet(g, std::move(occ));
}

/// Occupied voxels within r of voxel centre p: integer offsets in voxel units
/// against (r/h)^2.
inline std::int64_t brute_ball_count(const VoxelSet& vs, double r, const Index& p) {
  const GridSpec& g = vs.grid();
  const double t = r / g.spacing;
  const double lim = t * t;
  std::int64_t n = 0;
  for (std::size_t lin = 0; lin < g.size(); ++lin) {
    if (!vs[lin]) continue;
    const Index i = g.unravel(lin);
    double s = 0.0;
    for (int a = 0; a < 3; ++a) s += static_cast<double>((i[a] - p[a]) * (i[a] - p[a]));
    if (s <= lim) ++n;
  }
  return n;
}

/// Occupied voxels whose centre is within r of an arbitrary world point x.
inline std::int64_t brute_point_count(const VoxelSet& vs, double r, const Point& x) {
  const GridSpec& g = vs.grid();
  std::int64_t n = 0;
  for (std::size_t lin = 0; lin < g.size(); ++lin) {
    if (!vs[lin]) continue;
    const Point c = g.center(g.unravel(lin));
    double s = 0.0;
    for (int a = 0; a < g.dim; ++a) s += (c[a] - x[a]) * (c[a] - x[a]);
    if (s <= r * r) ++n;
  }
  return n;
}

inline double brute_distance(const VoxelSet& a, const VoxelSet& b) {
  const GridSpec& g = a.grid();
  double best = INFINITY;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!a[i]) continue;
    const Point p = g.center(g.unravel(i));
    for (std::size_t j = 0; j < g.size(); ++j) {
      if (!b[j]) continue;
      const Point q = g.center(g.unravel(j));
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += (p[k] - q[k]) * (p[k] - q[k]);
      best = std::min(best, std::sqrt(s));
    }
  }
  return best;
}

inline std::filesystem::path scratch_dir(const std::string& name) {
#ifdef VXR_TEST_TMP
  const std::filesystem::path base(VXR_TEST_TMP);
#else
  const std::filesystem::path base = std::filesystem::temp_directory_path() / "vxr_tests";
#endif
  const auto dir = base / name;
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace vxt
