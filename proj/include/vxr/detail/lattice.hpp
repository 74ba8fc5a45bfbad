#pragma once

// Exact lattice predicates shared by the invariant kernels. All ball tests
// compare an exact integer squared distance (in half-voxel units) against a
// single double threshold, so every code path that uses them agrees bit for bit.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "vxr/grid.hpp"

namespace vxr::detail {

/// (r / h)^2, the squared kernel radius in voxel units.
inline double radius_sq_voxels(double r, double h) {
  const double t = r / h;
  return t * t;
}

/// Maps a world point onto the half-voxel lattice when it lies on it (to
/// within 1e-7 half-voxels); nullopt otherwise.
inline std::optional<HalfIndex> snap_to_lattice(const GridSpec& g, const Point& x) {
  HalfIndex q{1, 1, 1};
  for (int a = 0; a < g.dim; ++a) {
    const double u = 2.0 * (x[a] - g.origin[a]) / g.spacing;
    const double r = std::nearbyint(u);
    if (std::abs(u - r) > 1e-7) return std::nullopt;
    q[a] = static_cast<std::int64_t>(r);
  }
  return q;
}

/// Squared distance, in half-voxel units, from voxel centre i to lattice point q.
inline std::int64_t half_sq_dist(const Index& i, const HalfIndex& q) {
  std::int64_t s = 0;
  for (int a = 0; a < 3; ++a) {
    const std::int64_t d = 2LL * i[a] + 1 - q[a];
    s += d * d;
  }
  return s;
}

/// Hash key for a half-voxel lattice point; 21 bits per axis with a bias,
/// enough for grids up to 2^19 voxels per side.
inline std::uint64_t lattice_key(const HalfIndex& q) {
  constexpr std::int64_t bias = 1 << 20;
  return (static_cast<std::uint64_t>(q[0] + bias) << 42) |
         (static_cast<std::uint64_t>(q[1] + bias) << 21) | static_cast<std::uint64_t>(q[2] + bias);
}

struct Span {
  std::int64_t lo = 0;
  std::int64_t hi = -1;  // inclusive; empty when hi < lo
  bool empty() const { return hi < lo; }
};

/// Integers i with (2i + 1 - q0)^2 + rest <= limit (or < limit when strict).
inline Span row_span(std::int64_t q0, std::int64_t rest, double limit, bool strict = false) {
  auto ok = [&](std::int64_t i) {
    const std::int64_t d = 2 * i + 1 - q0;
    const double s = static_cast<double>(d * d + rest);
    return strict ? s < limit : s <= limit;
  };
  const double budget = limit - static_cast<double>(rest);
  if (budget < 0.0) return {};
  const double w = std::sqrt(budget);
  const double c = 0.5 * (static_cast<double>(q0) - 1.0);
  auto lo = static_cast<std::int64_t>(std::ceil(c - 0.5 * w));
  auto hi = static_cast<std::int64_t>(std::floor(c + 0.5 * w));
  // Repair rounding at both ends against the exact predicate.
  while (ok(lo - 1)) --lo;
  while (lo <= hi && !ok(lo)) ++lo;
  while (ok(hi + 1)) ++hi;
  while (hi >= lo && !ok(hi)) --hi;
  if (hi < lo) {
    // Budget rounding can hide a lone centre voxel.
    const std::int64_t mid = static_cast<std::int64_t>(std::nearbyint(c));
    for (std::int64_t i : {mid - 1, mid, mid + 1})
      if (ok(i)) {
        lo = hi = i;
        while (ok(lo - 1)) --lo;
        while (ok(hi + 1)) ++hi;
        return {lo, hi};
      }
    return {};
  }
  return {lo, hi};
}

/// Prefix sums of occupancy along axis-0 lines.
class LinePrefix {
 public:
  explicit LinePrefix(const VoxelSet& vs) : grid_(vs.grid()) {
    const std::size_t n0 = grid_.extent[0];
    const std::size_t lines = grid_.size() / n0;
    prefix_.assign(lines * (n0 + 1), 0);
    for (std::size_t l = 0; l < lines; ++l) {
      std::int32_t* p = &prefix_[l * (n0 + 1)];
      for (std::size_t i = 0; i < n0; ++i) p[i + 1] = p[i] + (vs[l * n0 + i] ? 1 : 0);
    }
  }

  /// Occupied count in [lo, hi] of line (j, k), clipped to the grid.
  std::int64_t count(int j, int k, std::int64_t lo, std::int64_t hi) const {
    if (j < 0 || j >= grid_.extent[1] || k < 0 || k >= grid_.extent[2]) return 0;
    const std::int64_t n0 = grid_.extent[0];
    lo = std::max<std::int64_t>(lo, 0);
    hi = std::min<std::int64_t>(hi, n0 - 1);
    if (hi < lo) return 0;
    const std::int32_t* p = &prefix_[(static_cast<std::size_t>(k) * grid_.extent[1] + j) * (n0 + 1)];
    return p[hi + 1] - p[lo];
  }
  std::int64_t count(int j, int k, const Span& s) const {
    return s.empty() ? 0 : count(j, k, s.lo, s.hi);
  }

  /// Raw prefix row of length n0 + 1 for an in-grid line.
  const std::int32_t* line(int j, int k) const {
    return &prefix_[(static_cast<std::size_t>(k) * grid_.extent[1] + j) * (grid_.extent[0] + 1)];
  }

  const GridSpec& grid() const { return grid_; }

 private:
  GridSpec grid_;
  std::vector<std::int32_t> prefix_;
};

/// Range of line indices along `axis` that a ball of squared half-voxel
/// radius `limit` centred at q can reach.
inline std::pair<int, int> axis_reach(const GridSpec& g, const HalfIndex& q, int axis, double limit) {
  if (axis >= g.dim) return {0, 0};
  const Span s = row_span(q[axis], 0, limit);
  if (s.empty()) return {0, -1};
  const auto lo = std::max<std::int64_t>(s.lo, 0);
  const auto hi = std::min<std::int64_t>(s.hi, g.extent[axis] - 1);
  return {static_cast<int>(lo), static_cast<int>(hi)};
}

/// Occupied voxel count inside the closed ball {S <= limit} around q (or the
/// open ball when strict), via line spans.
inline std::int64_t ball_count(const LinePrefix& lp, const HalfIndex& q, double limit,
                               bool strict = false) {
  const GridSpec& g = lp.grid();
  std::int64_t total = 0;
  const auto [k0, k1] = axis_reach(g, q, 2, limit);
  const auto [j0, j1] = axis_reach(g, q, 1, limit);
  for (int k = k0; k <= k1; ++k) {
    const std::int64_t dk = 2LL * k + 1 - q[2];
    for (int j = j0; j <= j1; ++j) {
      const std::int64_t dj = 2LL * j + 1 - q[1];
      total += lp.count(j, k, row_span(q[0], dj * dj + dk * dk, limit, strict));
    }
  }
  return total;
}

}  // namespace vxr::detail
