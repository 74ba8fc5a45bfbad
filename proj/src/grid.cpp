#include "vxr/grid.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <string>

#include "vxr/error.hpp"

namespace vxr {

GridSpec GridSpec::make(int dim, std::span<const int> extent, double spacing,
                        std::span<const double> origin) {
  if (dim != 2 && dim != 3)
    throw ParameterError("grid: dimension must be 2 or 3 (got " + std::to_string(dim) + ")");
  if (static_cast<int>(extent.size()) != dim || static_cast<int>(origin.size()) != dim)
    throw ParameterError("grid: extent and origin need exactly " + std::to_string(dim) +
                         " entries");
  GridSpec g;
  g.dim = dim;
  for (int a = 0; a < dim; ++a) {
    g.extent[a] = extent[a];
    g.origin[a] = origin[a];
  }
  g.spacing = spacing;
  g.validate();
  return g;
}

GridSpec GridSpec::centered(int dim, double half_width, double spacing) {
  if (!(half_width > 0.0) || !(spacing > 0.0))
    throw ParameterError("grid: half width and spacing must be positive");
  const int n = static_cast<int>(std::lround(2.0 * half_width / spacing));
  std::array<int, 3> ext{n, n, n};
  std::array<double, 3> org{};
  org.fill(-0.5 * n * spacing);
  return make(dim, std::span<const int>(ext.data(), dim), spacing,
              std::span<const double>(org.data(), dim));
}

void GridSpec::validate() const {
  if (dim != 2 && dim != 3)
    throw ParameterError("grid: dimension must be 2 or 3 (got " + std::to_string(dim) + ")");
  if (!(spacing > 0.0) || !std::isfinite(spacing))
    throw ParameterError("grid: spacing must be a positive finite number");
  for (int a = 0; a < 3; ++a) {
    if (a < dim) {
      if (extent[a] < 1)
        throw ParameterError("grid: extent along axis " + std::to_string(a + 1) +
                             " must be >= 1");
      if (!std::isfinite(origin[a])) throw ParameterError("grid: origin must be finite");
    } else if (extent[a] != 1) {
      throw ParameterError("grid: unused axes must have extent 1");
    }
  }
}

Point GridSpec::center(const Index& i) const {
  Point p{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) p[a] = coordinate(a, i[a]);
  return p;
}

Point GridSpec::half_point(const HalfIndex& q) const {
  Point p{0.0, 0.0, 0.0};
  for (int a = 0; a < dim; ++a) p[a] = origin[a] + static_cast<double>(q[a]) * 0.5 * spacing;
  return p;
}

double GridSpec::cell_volume() const {
  return dim == 2 ? spacing * spacing : spacing * spacing * spacing;
}

double GridSpec::face_area() const { return dim == 2 ? spacing : spacing * spacing; }

VoxelSet::VoxelSet(const GridSpec& grid) : grid_(grid), occ_(grid.size(), 0) {
  grid_.validate();
}

VoxelSet::VoxelSet(const GridSpec& grid, std::vector<std::uint8_t> occupancy)
    : grid_(grid), occ_(std::move(occupancy)) {
  grid_.validate();
  if (occ_.size() != grid_.size())
    throw ParameterError("voxel set: occupancy size does not match grid");
  for (auto& v : occ_) v = v ? 1 : 0;
}

std::size_t VoxelSet::count() const {
  return static_cast<std::size_t>(std::count(occ_.begin(), occ_.end(), std::uint8_t{1}));
}

double measure(const VoxelSet& vs) {
  return static_cast<double>(vs.count()) * vs.grid().cell_volume();
}

namespace {

template <typename Fn>
void for_each_boundary_face(const VoxelSet& vs, Fn&& fn) {
  const GridSpec& g = vs.grid();
  const std::size_t n = g.size();
  for (std::size_t lin = 0; lin < n; ++lin) {
    if (!vs[lin]) continue;
    const Index i = g.unravel(lin);
    for (int a = 0; a < g.dim; ++a) {
      for (int s : {-1, 1}) {
        Index j = i;
        j[a] += s;
        if (!vs.at(j)) fn(i, j, a, s);
      }
    }
  }
}

bool is_surface_voxel(const VoxelSet& vs, const Index& i) {
  for (int a = 0; a < vs.grid().dim; ++a) {
    for (int s : {-1, 1}) {
      Index j = i;
      j[a] += s;
      if (!vs.at(j)) return true;
    }
  }
  return false;
}

std::int64_t sq_dist(const Index& a, const Index& b) {
  std::int64_t s = 0;
  for (int k = 0; k < 3; ++k) {
    const std::int64_t d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

void require_same_grid(const VoxelSet& a, const VoxelSet& b, const char* op) {
  if (!(a.grid() == b.grid()))
    throw PreconditionError(std::string(op) + ": inputs must share the same grid");
}

}  // namespace

std::vector<BoundarySample> boundary_samples(const VoxelSet& vs) {
  const GridSpec& g = vs.grid();
  std::vector<BoundarySample> out;
  for_each_boundary_face(vs, [&](const Index& i, const Index& j, int axis, int sign) {
    BoundarySample b;
    b.axis = axis;
    b.sign = sign;
    b.occupied = i;
    b.empty = j;
    b.lattice = g.half_index(i);
    b.lattice[axis] += sign;
    b.point = g.half_point(b.lattice);
    out.push_back(b);
  });
  return out;
}

std::size_t boundary_face_count(const VoxelSet& vs) {
  std::size_t n = 0;
  for_each_boundary_face(vs, [&](const Index&, const Index&, int, int) { ++n; });
  return n;
}

std::vector<int> label_components(const VoxelSet& vs, int* label_count) {
  const GridSpec& g = vs.grid();
  std::vector<int> label(g.size(), -1);
  int next = 0;
  std::vector<std::size_t> stack;
  for (std::size_t seed = 0; seed < g.size(); ++seed) {
    if (!vs[seed] || label[seed] >= 0) continue;
    label[seed] = next;
    stack.push_back(seed);
    while (!stack.empty()) {
      const std::size_t cur = stack.back();
      stack.pop_back();
      const Index i = g.unravel(cur);
      for (int a = 0; a < g.dim; ++a) {
        for (int s : {-1, 1}) {
          Index j = i;
          j[a] += s;
          if (!g.contains(j)) continue;
          const std::size_t lj = g.linear(j);
          if (vs[lj] && label[lj] < 0) {
            label[lj] = next;
            stack.push_back(lj);
          }
        }
      }
    }
    ++next;
  }
  if (label_count != nullptr) *label_count = next;
  return label;
}

std::vector<VoxelSet> connected_components(const VoxelSet& vs) {
  int n = 0;
  const std::vector<int> label = label_components(vs, &n);
  std::vector<VoxelSet> comps(n, VoxelSet(vs.grid()));
  for (std::size_t lin = 0; lin < label.size(); ++lin)
    if (label[lin] >= 0) comps[label[lin]].set(lin, true);
  // Labels are assigned in scan order, so a stable sort keeps the
  // lexicographically-smallest-voxel tie break.
  std::vector<std::size_t> sizes(n);
  for (int c = 0; c < n; ++c) sizes[c] = comps[c].count();
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int a, int b) { return sizes[a] > sizes[b]; });
  std::vector<VoxelSet> sorted;
  sorted.reserve(n);
  for (int c : order) sorted.push_back(std::move(comps[c]));
  return sorted;
}

double component_distance(const VoxelSet& a, const VoxelSet& b) {
  require_same_grid(a, b, "component_distance");
  if (a.is_empty() || b.is_empty())
    throw PreconditionError("component_distance: both sets must be non-empty");
  const GridSpec& g = a.grid();
  // A closest pair always consists of surface voxels: stepping an interior
  // voxel toward its partner along any axis with nonzero offset shortens the pair.
  std::vector<Index> pa, pb;
  for (std::size_t lin = 0; lin < g.size(); ++lin) {
    if (a[lin] && b[lin]) return 0.0;
    if (a[lin]) {
      const Index i = g.unravel(lin);
      if (is_surface_voxel(a, i)) pa.push_back(i);
    }
    if (b[lin]) {
      const Index i = g.unravel(lin);
      if (is_surface_voxel(b, i)) pb.push_back(i);
    }
  }
  std::sort(pb.begin(), pb.end());  // by axis 0 first
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  for (const Index& p : pa) {
    auto it = std::lower_bound(pb.begin(), pb.end(), p,
                               [](const Index& x, const Index& y) { return x[0] < y[0]; });
    for (auto fwd = it; fwd != pb.end(); ++fwd) {
      const std::int64_t dx = (*fwd)[0] - p[0];
      if (dx * dx >= best) break;
      best = std::min(best, sq_dist(p, *fwd));
    }
    for (auto bwd = it; bwd != pb.begin();) {
      --bwd;
      const std::int64_t dx = p[0] - (*bwd)[0];
      if (dx * dx >= best) break;
      best = std::min(best, sq_dist(p, *bwd));
    }
  }
  return std::sqrt(static_cast<double>(best)) * g.spacing;
}

double diameter(const VoxelSet& vs) {
  if (vs.is_empty()) throw PreconditionError("diameter: set must be non-empty");
  const GridSpec& g = vs.grid();
  // A farthest pair consists of voxels that are first or last in their line
  // along axis 0: otherwise stepping away from the partner lengthens the pair.
  std::vector<Index> cand;
  const int n0 = g.extent[0];
  for (std::size_t line = 0; line < g.size() / n0; ++line) {
    const std::size_t base = line * n0;
    int first = -1, last = -1;
    for (int i = 0; i < n0; ++i) {
      if (vs[base + i]) {
        if (first < 0) first = i;
        last = i;
      }
    }
    if (first < 0) continue;
    const Index bi = g.unravel(base);
    cand.push_back({first, bi[1], bi[2]});
    if (last != first) cand.push_back({last, bi[1], bi[2]});
  }
  std::int64_t best = 0;
  for (std::size_t p = 0; p < cand.size(); ++p)
    for (std::size_t q = p + 1; q < cand.size(); ++q)
      best = std::max(best, sq_dist(cand[p], cand[q]));
  return std::sqrt(static_cast<double>(best)) * g.spacing;
}

bool touches_border(const VoxelSet& vs) {
  const GridSpec& g = vs.grid();
  for (std::size_t lin = 0; lin < g.size(); ++lin) {
    if (!vs[lin]) continue;
    const Index i = g.unravel(lin);
    for (int a = 0; a < g.dim; ++a)
      if (i[a] == 0 || i[a] == g.extent[a] - 1) return true;
  }
  return false;
}

namespace {
template <typename Op>
VoxelSet combine(const VoxelSet& a, const VoxelSet& b, const char* name, Op op) {
  require_same_grid(a, b, name);
  std::vector<std::uint8_t> out(a.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(a[i], b[i]) ? 1 : 0;
  return VoxelSet(a.grid(), std::move(out));
}
}  // namespace

VoxelSet set_union(const VoxelSet& a, const VoxelSet& b) {
  return combine(a, b, "set_union", [](bool x, bool y) { return x || y; });
}
VoxelSet set_intersection(const VoxelSet& a, const VoxelSet& b) {
  return combine(a, b, "set_intersection", [](bool x, bool y) { return x && y; });
}
VoxelSet set_difference(const VoxelSet& a, const VoxelSet& b) {
  return combine(a, b, "set_difference", [](bool x, bool y) { return x && !y; });
}

std::size_t symmetric_difference_count(const VoxelSet& a, const VoxelSet& b) {
  require_same_grid(a, b, "symmetric_difference_count");
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i) n += (a[i] != b[i]) ? 1 : 0;
  return n;
}

}  // namespace vxr
