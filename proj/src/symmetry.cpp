#include "vxr/symmetry.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "vxr/detail/lattice.hpp"
#include "vxr/error.hpp"
#include "vxr/log.hpp"
#include "vxr/parallel.hpp"

namespace vxr {

using detail::lattice_key;

namespace {

std::int64_t floor_div2(std::int64_t a) { return a >= 0 ? a / 2 : -((-a + 1) / 2); }

/// Linear index of the first voxel of every line along `axis`, in linear order.
std::vector<std::size_t> column_bases(const GridSpec& g, int axis) {
  std::vector<std::size_t> out;
  out.reserve(g.size() / g.extent[axis]);
  for (std::size_t lin = 0; lin < g.size(); ++lin)
    if (g.unravel(lin)[axis] == 0) out.push_back(lin);
  return out;
}

struct Column {
  const VoxelSet* vs;
  std::size_t base;
  std::size_t stride;
  std::int64_t n;

  bool operator()(std::int64_t i) const {
    return i >= 0 && i < n && (*vs)[base + static_cast<std::size_t>(i) * stride];
  }
};

/// Length of the occupied run through index a, scanning downward only.
std::int64_t run_down(const Column& c, std::int64_t a) {
  std::int64_t l = 0;
  while (c(a - l)) ++l;
  return l;
}

/// Length of the maximal occupied run containing index a.
std::int64_t run_through(const Column& c, std::int64_t a) {
  if (!c(a)) return 0;
  std::int64_t lo = a, hi = a;
  while (c(lo - 1)) --lo;
  while (c(hi + 1)) ++hi;
  return hi - lo + 1;
}

struct ColumnInclusion {
  std::int64_t miss = 0;
  std::int64_t defect = 0;
};

/// Inclusion check of one column for a plane at m with the retained part below.
ColumnInclusion column_inclusion(const Column& c, std::int64_t m) {
  ColumnInclusion r;
  const std::int64_t a = floor_div2(m - 1);
  const std::int64_t top = std::min(a, c.n - 1);
  std::int64_t cap = 0;
  for (std::int64_t i = 0; i <= top; ++i) {
    if (!c(i)) continue;
    ++cap;
    if (!c(m - 1 - i)) ++r.miss;
  }
  r.defect = 2 * (cap - run_down(c, a));
  return r;
}

VoxelSet flip_axis(const VoxelSet& vs, int axis) {
  const GridSpec& g = vs.grid();
  VoxelSet out(g);
  for (std::size_t lin = 0; lin < g.size(); ++lin) {
    if (!vs[lin]) continue;
    Index i = g.unravel(lin);
    i[axis] = g.extent[axis] - 1 - i[axis];
    out.set(i, true);
  }
  return out;
}

struct Box {
  Index lo{0, 0, 0};
  Index hi{0, 0, 0};
};

Box bounding_box(const VoxelSet& vs) {
  const GridSpec& g = vs.grid();
  Box b;
  b.lo = {g.extent[0], g.extent[1], g.extent[2]};
  b.hi = {-1, -1, -1};
  for (std::size_t lin = 0; lin < g.size(); ++lin) {
    if (!vs[lin]) continue;
    const Index i = g.unravel(lin);
    for (int a = 0; a < 3; ++a) {
      b.lo[a] = std::min(b.lo[a], i[a]);
      b.hi[a] = std::max(b.hi[a], i[a]);
    }
  }
  return b;
}

VoxelSet crop(const VoxelSet& vs, const Box& b) {
  const GridSpec& g = vs.grid();
  GridSpec c = g;
  for (int a = 0; a < 3; ++a) c.extent[a] = b.hi[a] - b.lo[a] + 1;
  for (int a = 0; a < g.dim; ++a) c.origin[a] = g.origin[a] + b.lo[a] * g.spacing;
  VoxelSet out(c);
  for (std::size_t lin = 0; lin < c.size(); ++lin) {
    const Index i = c.unravel(lin);
    out.set(lin, vs[g.linear({i[0] + b.lo[0], i[1] + b.lo[1], i[2] + b.lo[2]})]);
  }
  return out;
}

InclusionCheck inclusion_counts(const VoxelSet& vs, int axis, std::int64_t m) {
  const GridSpec& g = vs.grid();
  const std::vector<std::size_t> bases = column_bases(g, axis);
  std::vector<ColumnInclusion> per(bases.size());
  parallel_for(bases.size(), [&](std::size_t c) {
    per[c] = column_inclusion({&vs, bases[c], g.stride(axis), g.extent[axis]}, m);
  });
  std::int64_t miss = 0, defect = 0;
  for (const ColumnInclusion& p : per) {
    miss += p.miss;
    defect += p.defect;
  }
  const double cell = g.cell_volume();
  InclusionCheck r;
  r.outside_measure = static_cast<double>(miss) * cell;
  r.steiner_defect = static_cast<double>(defect) * cell;
  r.violation = static_cast<double>(miss + defect) * cell;
  return r;
}

}  // namespace

Hyperplane Hyperplane::quantize(const GridSpec& g, int axis, double t) {
  if (axis < 0 || axis >= g.dim) throw ParameterError("hyperplane: axis out of range");
  if (!std::isfinite(t)) throw ParameterError("hyperplane: offset must be finite");
  return {axis, static_cast<std::int64_t>(std::llround(2.0 * (t - g.origin[axis]) / g.spacing))};
}

std::string to_string(ContactType c) {
  switch (c) {
    case ContactType::none: return "none";
    case ContactType::away: return "away";
    case ContactType::close: return "close";
    case ContactType::away_and_close: return "away_and_close";
    case ContactType::swept_out: return "swept_out";
  }
  return "none";
}

std::string to_string(Orientation o) { return o == Orientation::positive ? "+" : "-"; }

double default_inclusion_tolerance(const GridSpec& g) { return g.cell_volume(); }
double default_contact_tolerance(const GridSpec& g) { return std::sqrt(static_cast<double>(g.dim)) * g.spacing; }

Reflection reflect(const VoxelSet& vs, const Hyperplane& plane) {
  const GridSpec& g = vs.grid();
  if (plane.axis < 0 || plane.axis >= g.dim) throw ParameterError("reflect: axis out of range");
  Reflection r{VoxelSet(g), 0.0};
  std::size_t dropped = 0;
  for (std::size_t lin = 0; lin < g.size(); ++lin) {
    if (!vs[lin]) continue;
    Index i = g.unravel(lin);
    const std::int64_t j = plane.mirror(i[plane.axis]);
    if (j < 0 || j >= g.extent[plane.axis]) {
      ++dropped;
      continue;
    }
    i[plane.axis] = static_cast<int>(j);
    r.set.set(i, true);
  }
  r.dropped_measure = static_cast<double>(dropped) * g.cell_volume();
  return r;
}

VoxelSet steiner_symmetrize(const VoxelSet& vs, int axis) {
  const GridSpec& g = vs.grid();
  if (axis < 0 || axis >= g.dim) throw ParameterError("steiner_symmetrize: axis out of range");
  VoxelSet out(g);
  const std::size_t stride = g.stride(axis);
  const int n = g.extent[axis];
  for (std::size_t base : column_bases(g, axis)) {
    int c = 0;
    for (int i = 0; i < n; ++i) c += vs[base + i * stride] ? 1 : 0;
    const int start = (n - c) / 2;
    for (int i = start; i < start + c; ++i) out.set(base + i * stride, true);
  }
  return out;
}

SymmetryDefect is_steiner_symmetric(const VoxelSet& vs, const Hyperplane& plane, double tol) {
  const GridSpec& g = vs.grid();
  if (plane.axis < 0 || plane.axis >= g.dim)
    throw ParameterError("is_steiner_symmetric: axis out of range");
  std::int64_t mirror = 0, runs = 0;
  const std::int64_t a = floor_div2(plane.m - 1);
  for (std::size_t base : column_bases(g, plane.axis)) {
    const Column c{&vs, base, g.stride(plane.axis), g.extent[plane.axis]};
    std::int64_t count = 0;
    for (std::int64_t i = 0; i < c.n; ++i) {
      if (c(i)) ++count;
      if (c(i) != c(plane.mirror(i))) ++mirror;
    }
    if (count > 0) runs += count - run_through(c, a);
  }
  SymmetryDefect d;
  d.mirror_defect = static_cast<double>(mirror) * g.cell_volume();
  d.run_defect = static_cast<double>(runs) * g.cell_volume();
  d.defect = d.mirror_defect + d.run_defect;
  d.symmetric = d.defect <= tol;
  return d;
}

InclusionCheck symmetric_inclusion_check(const VoxelSet& vs, const Hyperplane& plane, double tol,
                                         Orientation orientation) {
  const GridSpec& g = vs.grid();
  if (plane.axis < 0 || plane.axis >= g.dim)
    throw ParameterError("symmetric_inclusion_check: axis out of range");
  InclusionCheck r;
  if (orientation == Orientation::positive) {
    r = inclusion_counts(vs, plane.axis, plane.m);
  } else {
    r = inclusion_counts(flip_axis(vs, plane.axis), plane.axis, 2LL * g.extent[plane.axis] - plane.m);
  }
  r.holds = r.violation <= tol;
  return r;
}

// ---------------------------------------------------------------- moving planes

namespace {

/// Maps lattice/voxel coordinates of the cropped, possibly flipped work set
/// back to the caller's grid.
struct WorkFrame {
  GridSpec full;
  Box box;
  int axis;
  bool flip;
  std::int64_t n;  // work extent along axis

  HalfIndex to_full(HalfIndex q) const {
    if (flip) q[axis] = 2 * n - q[axis];
    for (int a = 0; a < full.dim; ++a) q[a] += 2LL * box.lo[a];
    return q;
  }
  Index to_full(Index i) const {
    if (flip) i[axis] = static_cast<int>(n - 1 - i[axis]);
    for (int a = 0; a < 3; ++a) i[a] += box.lo[a];
    return i;
  }
  std::int64_t plane_to_full(std::int64_t m) const {
    return (flip ? 2 * n - m : m) + 2LL * box.lo[axis];
  }
};

/// Lattice offsets within distance `tol` (in world units).
std::vector<HalfIndex> offsets_within(const GridSpec& g, double tol) {
  const double lim = std::pow(2.0 * tol / g.spacing, 2);
  const auto reach = static_cast<std::int64_t>(std::floor(std::sqrt(lim)));
  const std::int64_t rz = g.dim == 3 ? reach : 0;
  std::vector<HalfIndex> out;
  for (std::int64_t z = -rz; z <= rz; ++z)
    for (std::int64_t y = -reach; y <= reach; ++y)
      for (std::int64_t x = -reach; x <= reach; ++x)
        if (static_cast<double>(x * x + y * y + z * z) <= lim) out.push_back({x, y, z});
  return out;
}

}  // namespace

MovingPlanesResult moving_planes(const VoxelSet& vs, int axis, Orientation orientation,
                                 std::optional<double> tol_incl, std::optional<double> tol_contact) {
  const GridSpec& g = vs.grid();
  if (axis < 0 || axis >= g.dim) throw ParameterError("moving_planes: axis out of range");
  if (vs.is_empty()) throw PreconditionError("moving_planes: set is empty");
  MovingPlanesResult res;
  res.axis = axis;
  res.orientation = orientation;
  res.tol_incl = tol_incl.value_or(default_inclusion_tolerance(g));
  res.tol_contact = tol_contact.value_or(default_contact_tolerance(g));
  if (!(res.tol_incl >= 0.0) || !(res.tol_contact > 0.0))
    throw ParameterError("moving_planes: tolerances must be non-negative (contact > 0)");

  const Box box = bounding_box(vs);
  const bool flip = orientation == Orientation::negative;
  VoxelSet work = crop(vs, box);
  if (flip) work = flip_axis(work, axis);
  const GridSpec& wg = work.grid();
  const WorkFrame frame{g, box, axis, flip, wg.extent[axis]};
  const double h = g.spacing;
  const double cell = g.cell_volume();

  // Sweep from the outer face of the support, half a voxel per step.
  const std::int64_t end = 2 * frame.n;
  std::int64_t m = 0;
  bool failed = false;
  for (std::int64_t step = 0; step <= end; ++step) {
    const InclusionCheck c = inclusion_counts(work, axis, step);
    res.trace.push_back({Hyperplane{axis, frame.plane_to_full(step)}.offset(g), c.violation});
    if (c.violation > res.tol_incl) {
      failed = true;
      break;
    }
    m = step;
  }
  if (failed && m < 1)
    throw ContactAtStart("moving_planes: inclusion fails at the first offset meeting the set (axis " +
                         std::to_string(axis) + ", orientation " + to_string(orientation) + ")");
  res.plane = Hyperplane{axis, frame.plane_to_full(m)};
  res.T = res.plane.offset(g);
  log::debug("moving_planes: axis " + std::to_string(axis) + " " + to_string(orientation) +
             " stops at T = " + std::to_string(res.T));

  // Ω_T ∪ R_T in work coordinates.
  VoxelSet reflected(wg), sym_region(wg);
  const Hyperplane wplane{axis, m};
  for (std::size_t lin = 0; lin < wg.size(); ++lin) {
    if (!work[lin]) continue;
    Index i = wg.unravel(lin);
    if (2LL * i[axis] + 1 > m) continue;
    sym_region.set(lin, true);
    const std::int64_t j = wplane.mirror(i[axis]);
    if (j < frame.n) {
      i[axis] = static_cast<int>(j);
      reflected.set(i, true);
      sym_region.set(i, true);
    }
  }

  const auto omega_samples = boundary_samples(work);
  std::unordered_set<std::uint64_t> omega_keys;
  omega_keys.reserve(2 * omega_samples.size());
  for (const BoundarySample& s : omega_samples) omega_keys.insert(lattice_key(s.lattice));
  auto plane_distance = [&](const HalfIndex& q) {
    return 0.5 * h * static_cast<double>(std::llabs(q[axis] - m));
  };

  // Away contacts: ∂R_T meets ∂Ω away from H_T.
  const double off_plane = std::max(res.tol_contact, 0.5 * h);
  const std::vector<HalfIndex> near = offsets_within(wg, res.tol_contact);
  std::vector<Index> seeds_from;
  for (const BoundarySample& s : boundary_samples(reflected)) {
    if (!(plane_distance(s.lattice) > off_plane)) continue;
    bool touch = false;
    for (const HalfIndex& o : near) {
      if (omega_keys.count(lattice_key({s.lattice[0] + o[0], s.lattice[1] + o[1], s.lattice[2] + o[2]}))) {
        touch = true;
        break;
      }
    }
    if (!touch) continue;
    res.away_points.push_back(g.half_point(frame.to_full(s.lattice)));
    seeds_from.push_back(s.occupied);
  }

  // Close contacts: two boundary samples of Ω on one normal line, both near H_T.
  std::unordered_map<std::uint64_t, std::vector<std::size_t>> lines;
  for (std::size_t idx = 0; idx < omega_samples.size(); ++idx) {
    const BoundarySample& s = omega_samples[idx];
    if (plane_distance(s.lattice) > res.tol_contact) continue;
    HalfIndex key = s.lattice;
    key[axis] = 0;
    lines[lattice_key(key)].push_back(idx);
  }
  std::vector<std::size_t> close_idx;
  for (const auto& [key, members] : lines)
    if (members.size() >= 2) close_idx.insert(close_idx.end(), members.begin(), members.end());
  std::sort(close_idx.begin(), close_idx.end());
  for (std::size_t idx : close_idx)
    res.close_points.push_back(g.half_point(frame.to_full(omega_samples[idx].lattice)));

  if (!failed)
    res.contact = ContactType::swept_out;
  else if (!res.away_points.empty() && !res.close_points.empty())
    res.contact = ContactType::away_and_close;
  else if (!res.away_points.empty())
    res.contact = ContactType::away;
  else if (!res.close_points.empty())
    res.contact = ContactType::close;
  else
    res.contact = ContactType::none;

  // Ω^s: Ω voxels on the columns through matched contact pairs, grown to
  // face-connected components of Ω ∩ (Ω_T ∪ R_T).
  VoxelSet sym_work(wg);
  std::deque<std::size_t> queue;
  auto push = [&](const Index& i) {
    if (!wg.contains(i)) return;
    const std::size_t lin = wg.linear(i);
    if (!work[lin] || !sym_region[lin] || sym_work[lin]) return;
    sym_work.set(lin, true);
    queue.push_back(lin);
  };
  for (const Index& u : seeds_from) {
    Index i = u;
    const std::int64_t lo = wplane.mirror(u[axis]);
    for (std::int64_t k = std::max<std::int64_t>(lo, 0); k <= u[axis]; ++k) {
      i[axis] = static_cast<int>(k);
      push(i);
    }
  }
  while (!queue.empty()) {
    const Index i = wg.unravel(queue.front());
    queue.pop_front();
    for (int a = 0; a < wg.dim; ++a)
      for (int s : {-1, 1}) {
        Index j = i;
        j[a] += s;
        push(j);
      }
  }

  res.sym = VoxelSet(g);
  res.nonsym = VoxelSet(g);
  for (std::size_t lin = 0; lin < wg.size(); ++lin) {
    if (!work[lin]) continue;
    const std::size_t full = g.linear(frame.to_full(wg.unravel(lin)));
    (sym_work[lin] ? res.sym : res.nonsym).set(full, true);
  }
  log::debug("moving_planes: |sym| = " + std::to_string(res.sym.count() * cell) +
             ", |nonsym| = " + std::to_string(res.nonsym.count() * cell));
  return res;
}

Decomposition decompose_symmetric(const VoxelSet& vs, const MovingPlanesResult& result) {
  const GridSpec& g = vs.grid();
  if (!(result.sym.grid() == g) || !(result.nonsym.grid() == g))
    throw ConsistencyError("decompose_symmetric: result masks live on a different grid");
  for (std::size_t lin = 0; lin < g.size(); ++lin) {
    const bool s = result.sym[lin], n = result.nonsym[lin];
    if ((s && n) || (s || n) != vs[lin])
      throw ConsistencyError("decompose_symmetric: masks do not partition the input at voxel " +
                             std::to_string(lin));
  }
  Decomposition d{result.sym, result.nonsym, 0.0};
  const int axis = result.plane.axis;
  std::size_t bad = 0;
  for (std::size_t lin = 0; lin < g.size(); ++lin) {
    if (!result.sym[lin]) continue;
    const Index i = g.unravel(lin);
    for (int a = 0; a < g.dim; ++a)
      for (int s : {-1, 1}) {
        Index j = i;
        j[a] += s;
        if (!g.contains(j) || !result.nonsym[g.linear(j)]) continue;
        HalfIndex q = g.half_index(i);
        q[a] += s;
        const double dist = 0.5 * g.spacing * static_cast<double>(std::llabs(q[axis] - result.plane.m));
        if (dist > result.tol_contact) ++bad;
      }
  }
  d.interface_violation = static_cast<double>(bad) * g.face_area();
  return d;
}

}  // namespace vxr
