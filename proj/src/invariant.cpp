#include "vxr/invariant.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <string>
#include <unordered_map>

#include "vxr/analytic.hpp"
#include "vxr/detail/lattice.hpp"
#include "vxr/error.hpp"
#include "vxr/log.hpp"
#include "vxr/parallel.hpp"

namespace vxr {

using detail::half_sq_dist;
using detail::lattice_key;
using detail::LinePrefix;
using detail::radius_sq_voxels;
using detail::row_span;
using detail::snap_to_lattice;

namespace {

void require_positive_radius(double r, const char* op) {
  if (!(r > 0.0) || !std::isfinite(r))
    throw ParameterError(std::string(op) + ": radius must be a positive finite number");
}

/// Voxel-index box covering every centre within sqrt(limit) half-voxels of q.
struct IndexBox {
  Index lo{0, 0, 0};
  Index hi{0, 0, 0};
};

IndexBox reach_box(const GridSpec& g, const std::array<double, 3>& q, double limit) {
  IndexBox b;
  const double w = std::sqrt(limit);
  for (int a = 0; a < g.dim; ++a) {
    b.lo[a] = std::max(0, static_cast<int>(std::floor(0.5 * (q[a] - 1.0 - w))) - 1);
    b.hi[a] = std::min(g.extent[a] - 1, static_cast<int>(std::ceil(0.5 * (q[a] - 1.0 + w))) + 1);
  }
  return b;
}

std::array<double, 3> continuous_half(const GridSpec& g, const Point& x) {
  std::array<double, 3> u{1.0, 1.0, 1.0};
  for (int a = 0; a < g.dim; ++a) u[a] = 2.0 * (x[a] - g.origin[a]) / g.spacing;
  return u;
}

template <typename Pred>
std::int64_t brute_count(const VoxelSet& vs, const std::array<double, 3>& q, double reach,
                         Pred&& pred) {
  const GridSpec& g = vs.grid();
  const IndexBox box = reach_box(g, q, reach);
  std::int64_t n = 0;
  Index i{0, 0, 0};
  for (i[2] = box.lo[2]; i[2] <= box.hi[2]; ++i[2])
    for (i[1] = box.lo[1]; i[1] <= box.hi[1]; ++i[1])
      for (i[0] = box.lo[0]; i[0] <= box.hi[0]; ++i[0])
        if (vs[g.linear(i)] && pred(i)) ++n;
  return n;
}

std::array<double, 3> as_double(const HalfIndex& q) {
  return {static_cast<double>(q[0]), static_cast<double>(q[1]), static_cast<double>(q[2])};
}

double continuous_sq(const Index& i, const std::array<double, 3>& u) {
  double s = 0.0;
  for (int a = 0; a < 3; ++a) {
    const double d = 2.0 * i[a] + 1.0 - u[a];
    s += d * d;
  }
  return s;
}

/// One row of the discrete ball: offsets (dx, dj, dk) with |dx| <= half_width.
struct KernelRow {
  int dj;
  int dk;
  int half_width;
};

std::vector<KernelRow> kernel_rows(double rr, int dim) {
  std::vector<KernelRow> rows;
  const int reach = static_cast<int>(std::floor(std::sqrt(rr))) + 1;
  const int kr = dim == 3 ? reach : 0;
  for (int dk = -kr; dk <= kr; ++dk) {
    for (int dj = -reach; dj <= reach; ++dj) {
      const std::int64_t rest = static_cast<std::int64_t>(dj) * dj + static_cast<std::int64_t>(dk) * dk;
      if (static_cast<double>(rest) > rr) continue;
      int w = static_cast<int>(std::floor(std::sqrt(std::max(0.0, rr - static_cast<double>(rest)))));
      while (static_cast<double>(static_cast<std::int64_t>(w + 1) * (w + 1) + rest) <= rr) ++w;
      while (w >= 0 && static_cast<double>(static_cast<std::int64_t>(w) * w + rest) > rr) --w;
      if (w >= 0) rows.push_back({dj, dk, w});
    }
  }
  return rows;
}

}  // namespace

// ---------------------------------------------------------------- Kernel

Kernel Kernel::indicator_ball(double r) { return Kernel(Kind::indicator_ball, r, 0.0, 0.0); }
Kernel Kernel::gaussian(double sigma, double cutoff) {
  return Kernel(Kind::gaussian, sigma, cutoff, 0.0);
}
Kernel Kernel::truncated_power(double s, double r_min, double r_max) {
  return Kernel(Kind::truncated_power, s, r_min, r_max);
}

double Kernel::cutoff() const {
  switch (kind_) {
    case Kind::indicator_ball: return a_;
    case Kind::gaussian: return b_;
    case Kind::truncated_power: return c_;
  }
  return 0.0;
}

double Kernel::operator()(double dist, int dim) const {
  if (dist > cutoff()) return 0.0;
  switch (kind_) {
    case Kind::indicator_ball: return 1.0;
    case Kind::gaussian: return std::exp(-dist * dist / (2.0 * a_ * a_));
    case Kind::truncated_power: return std::pow(std::max(dist, b_), -(dim + 2.0 * a_));
  }
  return 0.0;
}

void Kernel::validate(const GridSpec& grid) const {
  auto bad = [](const char* why) { throw ParameterError(std::string("kernel: ") + why); };
  if (!std::isfinite(a_) || !std::isfinite(b_) || !std::isfinite(c_)) bad("parameters must be finite");
  switch (kind_) {
    case Kind::indicator_ball:
      if (!(a_ > 0.0)) bad("indicator_ball radius must be > 0");
      break;
    case Kind::gaussian:
      if (!(a_ > 0.0)) bad("gaussian sigma must be > 0");
      if (!(b_ > 0.0)) bad("gaussian cutoff must be > 0");
      break;
    case Kind::truncated_power:
      if (!(a_ > 0.0)) bad("truncated_power exponent s must be > 0");
      if (b_ < grid.spacing) bad("truncated_power r_min must be >= h");
      if (!(c_ > b_)) bad("truncated_power r_max must exceed r_min");
      break;
  }
}

// ---------------------------------------------------------------- volumes

std::int64_t kernel_count(double r, const GridSpec& grid) {
  require_positive_radius(r, "kernel_count");
  std::int64_t n = 0;
  for (const KernelRow& row : kernel_rows(radius_sq_voxels(r, grid.spacing), grid.dim))
    n += 2 * row.half_width + 1;
  return n;
}

std::int64_t vol_invariant_count_at(const VoxelSet& vs, double r, const Point& x) {
  require_positive_radius(r, "vol_invariant_at");
  const GridSpec& g = vs.grid();
  const double limit = 4.0 * radius_sq_voxels(r, g.spacing);
  if (const auto q = snap_to_lattice(g, x)) {
    return brute_count(vs, as_double(*q), limit,
                       [&](const Index& i) { return static_cast<double>(half_sq_dist(i, *q)) <= limit; });
  }
  const auto u = continuous_half(g, x);
  return brute_count(vs, u, limit, [&](const Index& i) { return continuous_sq(i, u) <= limit; });
}

double vol_invariant_at(const VoxelSet& vs, double r, const Point& x) {
  return static_cast<double>(vol_invariant_count_at(vs, r, x)) * vs.grid().cell_volume();
}

InvariantField vol_invariant_field(const VoxelSet& vs, double r) {
  require_positive_radius(r, "vol_invariant_field");
  const GridSpec& g = vs.grid();
  for (int a = 0; a < g.dim; ++a) {
    if (r > 0.5 * g.extent[a] * g.spacing) {
      log::warn("vol_invariant_field: radius exceeds half the grid extent; values near the "
                "border see the clipped grid");
      break;
    }
  }
  const double rr = radius_sq_voxels(r, g.spacing);
  const std::vector<KernelRow> rows = kernel_rows(rr, g.dim);
  const LinePrefix lp(vs);

  InvariantField f;
  f.grid = g;
  f.radius = r;
  f.counts.assign(g.size(), 0);
  const int n0 = g.extent[0];
  const std::size_t lines = g.size() / n0;
  parallel_for(lines, [&](std::size_t line) {
    const int j = static_cast<int>(line % g.extent[1]);
    const int k = static_cast<int>(line / g.extent[1]);
    std::int64_t* out = &f.counts[line * n0];
    for (const KernelRow& row : rows) {
      const int sj = j + row.dj;
      const int sk = k + row.dk;
      if (sj < 0 || sj >= g.extent[1] || sk < 0 || sk >= g.extent[2]) continue;
      const std::int32_t* p = lp.line(sj, sk);
      const int w = row.half_width;
      for (int i = 0; i < n0; ++i) {
        const int lo = std::max(i - w, 0);
        const int hi = std::min(i + w, n0 - 1);
        out[i] += p[hi + 1] - p[lo];
      }
    }
  });
  const double cell = g.cell_volume();
  f.values.resize(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) f.values[i] = static_cast<double>(f.counts[i]) * cell;
  return f;
}

// ---------------------------------------------------------------- sphere

namespace {

struct ShellLimits {
  double inner;  // S >= inner
  double outer;  // S <= outer
};

ShellLimits shell_limits(double r, double h) {
  const double t = 2.0 * r / h;
  return {(t - 1.0) * (t - 1.0), (t + 1.0) * (t + 1.0)};
}

std::int64_t shell_count(const LinePrefix& lp, const HalfIndex& q, const ShellLimits& s) {
  return detail::ball_count(lp, q, s.outer, false) - detail::ball_count(lp, q, s.inner, true);
}

}  // namespace

double sphere_invariant_at(const VoxelSet& vs, double r, const Point& x) {
  const GridSpec& g = vs.grid();
  if (!(r > g.spacing) || !std::isfinite(r))
    throw ParameterError("sphere_invariant_at: radius must exceed the voxel size h");
  const ShellLimits lim = shell_limits(r, g.spacing);
  std::int64_t n = 0;
  if (const auto q = snap_to_lattice(g, x)) {
    const LinePrefix lp(vs);
    n = shell_count(lp, *q, lim);
  } else {
    const auto u = continuous_half(g, x);
    n = brute_count(vs, u, lim.outer, [&](const Index& i) {
      const double s = continuous_sq(i, u);
      return s >= lim.inner && s <= lim.outer;
    });
  }
  return static_cast<double>(n) * g.face_area();
}

// ---------------------------------------------------------------- curvature

double curvature_from_volume(int d, double r, double volume) {
  if (d < 2) throw ParameterError("curvature_estimate: dimension must be >= 2");
  require_positive_radius(r, "curvature_estimate");
  const double half_ball = 0.5 * unit_ball_volume(d) * std::pow(r, d);
  return (half_ball - volume) * 2.0 * (d + 1) / ((d - 1) * unit_ball_volume(d - 1) * std::pow(r, d + 1));
}

double curvature_estimate(const VoxelSet& vs, double r, const Point& x) {
  return curvature_from_volume(vs.grid().dim, r, vol_invariant_at(vs, r, x));
}

// ---------------------------------------------------------------- criticality

double face_value(const VoxelSet& vs, const InvariantField& field, const BoundarySample& s) {
  const GridSpec& g = vs.grid();
  const std::int64_t a = field.counts[g.linear(s.occupied)];
  const std::int64_t b = g.contains(s.empty) ? field.counts[g.linear(s.empty)]
                                             : vol_invariant_count_at(vs, field.radius, g.center(s.empty));
  return 0.5 * static_cast<double>(a + b) * g.cell_volume();
}

CriticalityReport criticality_report(const VoxelSet& vs, const InvariantField& field,
                                     const std::vector<BoundarySample>& samples, double tol) {
  if (samples.empty()) throw PreconditionError("criticality_report: set has no boundary");
  if (!(tol >= 0.0)) throw ParameterError("criticality_report: tolerance must be >= 0");
  CriticalityReport rep;
  rep.radius = field.radius;
  rep.sample_count = samples.size();
  rep.tolerance = tol;
  std::vector<double> v(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) v[i] = face_value(vs, field, samples[i]);
  double sum = 0.0;
  rep.min = std::numeric_limits<double>::infinity();
  rep.max = -std::numeric_limits<double>::infinity();
  for (double x : v) {
    sum += x;
    rep.min = std::min(rep.min, x);
    rep.max = std::max(rep.max, x);
  }
  rep.mean = sum / static_cast<double>(v.size());
  double ss = 0.0;
  for (double x : v) ss += (x - rep.mean) * (x - rep.mean);
  rep.stddev = std::sqrt(ss / static_cast<double>(v.size()));
  rep.spread = rep.mean > 0.0 ? (rep.max - rep.min) / rep.mean
                              : std::numeric_limits<double>::infinity();
  rep.critical = rep.spread <= tol;
  return rep;
}

CriticalityReport criticality_report(const VoxelSet& vs, double r, double tol) {
  require_positive_radius(r, "criticality_report");
  const auto samples = boundary_samples(vs);
  if (samples.empty()) throw PreconditionError("criticality_report: set has no boundary");
  return criticality_report(vs, vol_invariant_field(vs, r), samples, tol);
}

// ---------------------------------------------------------------- degeneracy

namespace {

std::int64_t sym_diff_count(const LinePrefix& lp, const HalfIndex& q1, const HalfIndex& q2,
                            double limit) {
  const GridSpec& g = lp.grid();
  auto [j0a, j1a] = detail::axis_reach(g, q1, 1, limit);
  auto [j0b, j1b] = detail::axis_reach(g, q2, 1, limit);
  auto [k0a, k1a] = detail::axis_reach(g, q1, 2, limit);
  auto [k0b, k1b] = detail::axis_reach(g, q2, 2, limit);
  const int j0 = std::min(j0a, j0b), j1 = std::max(j1a, j1b);
  const int k0 = std::min(k0a, k0b), k1 = std::max(k1a, k1b);
  std::int64_t total = 0;
  for (int k = k0; k <= k1; ++k) {
    for (int j = j0; j <= j1; ++j) {
      const std::int64_t a1 = 2LL * j + 1 - q1[1], b1 = 2LL * k + 1 - q1[2];
      const std::int64_t a2 = 2LL * j + 1 - q2[1], b2 = 2LL * k + 1 - q2[2];
      const detail::Span s1 = row_span(q1[0], a1 * a1 + b1 * b1, limit);
      const detail::Span s2 = row_span(q2[0], a2 * a2 + b2 * b2, limit);
      const std::int64_t c1 = lp.count(j, k, s1);
      const std::int64_t c2 = lp.count(j, k, s2);
      std::int64_t both = 0;
      if (!s1.empty() && !s2.empty())
        both = lp.count(j, k, std::max(s1.lo, s2.lo), std::min(s1.hi, s2.hi));
      total += c1 + c2 - 2 * both;
    }
  }
  return total;
}

double half_distance(const HalfIndex& a, const HalfIndex& b, double h) {
  double s = 0.0;
  for (int k = 0; k < 3; ++k) {
    const double d = static_cast<double>(a[k] - b[k]);
    s += d * d;
  }
  return 0.5 * h * std::sqrt(s);
}


}  // namespace

double symmetric_difference_measure(const VoxelSet& vs, double r, const Point& x1, const Point& x2) {
  require_positive_radius(r, "symmetric_difference_measure");
  const GridSpec& g = vs.grid();
  const double limit = 4.0 * radius_sq_voxels(r, g.spacing);
  const auto q1 = snap_to_lattice(g, x1);
  const auto q2 = snap_to_lattice(g, x2);
  std::int64_t n = 0;
  if (q1 && q2) {
    n = sym_diff_count(LinePrefix(vs), *q1, *q2, limit);
  } else {
    const auto u1 = continuous_half(g, x1);
    const auto u2 = continuous_half(g, x2);
    const IndexBox b1 = reach_box(g, u1, limit);
    const IndexBox b2 = reach_box(g, u2, limit);
    Index i{0, 0, 0};
    for (i[2] = std::min(b1.lo[2], b2.lo[2]); i[2] <= std::max(b1.hi[2], b2.hi[2]); ++i[2])
      for (i[1] = std::min(b1.lo[1], b2.lo[1]); i[1] <= std::max(b1.hi[1], b2.hi[1]); ++i[1])
        for (i[0] = std::min(b1.lo[0], b2.lo[0]); i[0] <= std::max(b1.hi[0], b2.hi[0]); ++i[0])
          if (vs[g.linear(i)] &&
              ((continuous_sq(i, u1) <= limit) != (continuous_sq(i, u2) <= limit)))
            ++n;
  }
  return static_cast<double>(n) * g.cell_volume();
}

DegeneracyReport degeneracy_score(const VoxelSet& vs, double r, std::size_t budget,
                                  std::uint64_t seed) {
  require_positive_radius(r, "degeneracy_score");
  const GridSpec& g = vs.grid();
  const auto samples = boundary_samples(vs);
  if (samples.size() < 2)
    throw PreconditionError("degeneracy_score: needs at least two boundary samples");
  const double limit = 4.0 * radius_sq_voxels(r, g.spacing);
  const LinePrefix lp(vs);
  const std::size_t n = samples.size();

  DegeneracyReport rep;
  rep.radius = r;
  rep.seed = seed;
  rep.score = std::numeric_limits<double>::infinity();
  std::size_t best_a = 0, best_b = 1;

  auto consider = [&](std::size_t a, std::size_t b) {
    const std::int64_t c = sym_diff_count(lp, samples[a].lattice, samples[b].lattice, limit);
    const double ratio = static_cast<double>(c) * g.cell_volume() /
                         half_distance(samples[a].lattice, samples[b].lattice, g.spacing);
    ++rep.pair_count;
    if (ratio < rep.score) {
      rep.score = ratio;
      best_a = a;
      best_b = b;
    }
  };

  const std::size_t total_pairs = n * (n - 1) / 2;
  if (total_pairs <= budget) {
    rep.exhaustive = true;
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = a + 1; b < n; ++b) consider(a, b);
    rep.near_pairs = rep.pair_count;
  } else {
    // Near pairs: |x1 - x2| <= 4h, i.e. squared half-voxel distance <= 64.
    constexpr std::int64_t kNear = 8;
    std::unordered_map<std::uint64_t, std::size_t> where;
    where.reserve(2 * n);
    for (std::size_t a = 0; a < n; ++a) where.emplace(lattice_key(samples[a].lattice), a);
    const std::int64_t kz = g.dim == 3 ? kNear : 0;
    for (std::size_t a = 0; a < n; ++a) {
      const HalfIndex& qa = samples[a].lattice;
      for (std::int64_t dz = -kz; dz <= kz; ++dz)
        for (std::int64_t dy = -kNear; dy <= kNear; ++dy)
          for (std::int64_t dx = -kNear; dx <= kNear; ++dx) {
            const std::int64_t s = dx * dx + dy * dy + dz * dz;
            if (s == 0 || s > kNear * kNear) continue;
            auto it = where.find(lattice_key({qa[0] + dx, qa[1] + dy, qa[2] + dz}));
            if (it != where.end() && it->second > a) consider(a, it->second);
          }
    }
    rep.near_pairs = rep.pair_count;
    std::mt19937_64 rng(seed);
    std::size_t drawn = 0, attempts = 0;
    while (drawn < budget && attempts < 20 * budget) {
      ++attempts;
      const std::size_t a = rng() % n;
      const std::size_t b = rng() % n;
      if (a == b) continue;
      const HalfIndex& qa = samples[a].lattice;
      const HalfIndex& qb = samples[b].lattice;
      std::int64_t s = 0;
      for (int k = 0; k < 3; ++k) s += (qa[k] - qb[k]) * (qa[k] - qb[k]);
      if (s <= kNear * kNear) continue;
      consider(std::min(a, b), std::max(a, b));
      ++drawn;
    }
    rep.far_pairs = drawn;
  }
  rep.witness_a = samples[best_a].point;
  rep.witness_b = samples[best_b].point;
  return rep;
}

double nondegeneracy_condition(const VoxelSet& vs, double r, double eps) {
  const GridSpec& g = vs.grid();
  if (!(r > g.spacing) || !std::isfinite(r))
    throw ParameterError("nondegeneracy_condition: radius must exceed the voxel size h");
  if (!(eps > 0.0) || !std::isfinite(eps))
    throw ParameterError("nondegeneracy_condition: eps must be a positive finite number");
  const auto samples = boundary_samples(vs);
  if (samples.empty()) throw PreconditionError("nondegeneracy_condition: set has no boundary");

  // Voxel centres at distance < eps from some sample.
  const double eps_limit = 4.0 * radius_sq_voxels(eps, g.spacing);
  std::vector<std::uint8_t> near(g.size(), 0);
  for (const BoundarySample& s : samples) {
    const IndexBox box = reach_box(g, as_double(s.lattice), eps_limit);
    Index i{0, 0, 0};
    for (i[2] = box.lo[2]; i[2] <= box.hi[2]; ++i[2])
      for (i[1] = box.lo[1]; i[1] <= box.hi[1]; ++i[1])
        for (i[0] = box.lo[0]; i[0] <= box.hi[0]; ++i[0])
          if (static_cast<double>(half_sq_dist(i, s.lattice)) < eps_limit) near[g.linear(i)] = 1;
  }
  const LinePrefix lp(vs);
  const ShellLimits lim = shell_limits(r, g.spacing);
  std::vector<std::int64_t> shell(g.size(), std::numeric_limits<std::int64_t>::max());
  parallel_for(g.size(), [&](std::size_t lin) {
    if (near[lin]) shell[lin] = shell_count(lp, g.half_index(g.unravel(lin)), lim);
  });
  const std::int64_t best = *std::min_element(shell.begin(), shell.end());
  return static_cast<double>(best) * g.face_area();
}

// ---------------------------------------------------------------- functionals

std::int64_t riesz_indicator_count(const VoxelSet& vs, double r) {
  const InvariantField f = vol_invariant_field(vs, r);
  std::int64_t n = 0;
  for (std::size_t i = 0; i < vs.size(); ++i)
    if (vs[i]) n += f.counts[i];
  return n;
}

std::int64_t nonlocal_perimeter_count(const VoxelSet& vs, double r) {
  const std::int64_t k = kernel_count(r, vs.grid());
  return k * static_cast<std::int64_t>(vs.count()) - riesz_indicator_count(vs, r);
}

double nonlocal_perimeter(const VoxelSet& vs, double r) {
  const double c = vs.grid().cell_volume();
  return static_cast<double>(nonlocal_perimeter_count(vs, r)) * c * c;
}

double riesz_functional(const VoxelSet& vs, const Kernel& kernel) {
  const GridSpec& g = vs.grid();
  kernel.validate(g);
  const double c = g.cell_volume();
  if (kernel.kind() == Kernel::Kind::indicator_ball)
    return static_cast<double>(riesz_indicator_count(vs, kernel.cutoff())) * c * c;

  struct Offset {
    Index d;
    double w;
  };
  std::vector<Offset> offsets;
  const double rr = radius_sq_voxels(kernel.cutoff(), g.spacing);
  for (const KernelRow& row : kernel_rows(rr, g.dim)) {
    for (int dx = -row.half_width; dx <= row.half_width; ++dx) {
      const double s = static_cast<double>(dx) * dx + static_cast<double>(row.dj) * row.dj +
                       static_cast<double>(row.dk) * row.dk;
      const double dist = std::sqrt(s) * g.spacing;
      // Membership is decided by the lattice predicate; evaluate the profile
      // without re-applying the cutoff.
      offsets.push_back({{dx, row.dj, row.dk}, kernel(std::min(dist, kernel.cutoff()), g.dim)});
    }
  }
  const std::size_t n0 = g.extent[0];
  const std::size_t lines = g.size() / n0;
  std::vector<double> partial(lines, 0.0);
  parallel_for(lines, [&](std::size_t line) {
    double acc = 0.0;
    for (std::size_t i0 = 0; i0 < n0; ++i0) {
      const std::size_t lin = line * n0 + i0;
      if (!vs[lin]) continue;
      const Index x = g.unravel(lin);
      for (const Offset& o : offsets) {
        const Index y{x[0] + o.d[0], x[1] + o.d[1], x[2] + o.d[2]};
        if (vs.at(y)) acc += o.w;
      }
    }
    partial[line] = acc;
  });
  double total = 0.0;
  for (double p : partial) total += p;
  return total * c * c;
}

}  // namespace vxr
