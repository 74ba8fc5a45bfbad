#pragma once

#include <cstdint>
#include <vector>

#include "vxr/grid.hpp"

namespace vxr {

/// x -> |Ω ∩ B_r(x)| sampled at every voxel centre. `counts` holds the exact
/// occupied-voxel counts, `values` the same scaled by h^d.
struct InvariantField {
  GridSpec grid;
  double radius = 0.0;
  std::vector<std::int64_t> counts;
  std::vector<double> values;

  double value(const Index& i) const { return values[grid.linear(i)]; }
};

struct CriticalityReport {
  double radius = 0.0;
  std::size_t sample_count = 0;
  double mean = 0.0;  // the constant c of the criticality condition
  double min = 0.0;
  double max = 0.0;
  double stddev = 0.0;
  double spread = 0.0;  // (max - min) / mean
  double tolerance = 0.0;
  bool critical = false;  // spread <= tolerance
};

struct DegeneracyReport {
  double radius = 0.0;
  std::size_t pair_count = 0;
  std::size_t near_pairs = 0;
  std::size_t far_pairs = 0;
  bool exhaustive = false;
  std::uint64_t seed = 0;
  /// min |Ω ∩ (B_r(x1) Δ B_r(x2))| / |x1 - x2| over the sampled pairs.
  double score = 0.0;
  Point witness_a{};
  Point witness_b{};
};

inline constexpr std::uint64_t kDefaultSeed = 0x5EED;
inline constexpr std::size_t kDefaultPairBudget = 20000;

/// Radial, non-negative, non-increasing interaction kernel with compact support.
class Kernel {
 public:
  enum class Kind { indicator_ball, gaussian, truncated_power };

  /// chi_{|z| <= r}
  static Kernel indicator_ball(double r);
  /// exp(-|z|^2 / (2 sigma^2)) for |z| <= cutoff.
  static Kernel gaussian(double sigma, double cutoff);
  /// |z|^-(d + 2s) on [r_min, r_max], clamped to r_min^-(d + 2s) inside r_min.
  static Kernel truncated_power(double s, double r_min, double r_max);

  Kind kind() const { return kind_; }
  double cutoff() const;
  double operator()(double dist, int dim) const;
  /// Throws ParameterError for non-finite or out-of-range parameters, including
  /// truncated_power with r_min < h.
  void validate(const GridSpec& grid) const;

  double a() const { return a_; }
  double b() const { return b_; }
  double c() const { return c_; }

 private:
  Kernel(Kind k, double a, double b, double c) : kind_(k), a_(a), b_(b), c_(c) {}
  Kind kind_;
  double a_, b_, c_;
};

/// Number of lattice offsets in the closed discrete ball of radius r: the
/// discrete kernel volume is kernel_count * h^d.
std::int64_t kernel_count(double r, const GridSpec& grid);

/// Reference evaluation: h^d times the number of occupied voxel centres within
/// distance r of x (closed ball). Throws ParameterError for r <= 0.
double vol_invariant_at(const VoxelSet& vs, double r, const Point& x);
std::int64_t vol_invariant_count_at(const VoxelSet& vs, double r, const Point& x);

/// The same quantity at every voxel centre, computed with per-line prefix sums.
/// Bit-identical to vol_invariant_at on every voxel.
InvariantField vol_invariant_field(const VoxelSet& vs, double r);

/// h^(d-1) times the occupied voxels whose centre lies within h/2 of the
/// sphere of radius r around x. Requires r > h.
double sphere_invariant_at(const VoxelSet& vs, double r, const Point& x);

/// Inverts the small-radius expansion of |Ω ∩ B_r(x)| for the mean curvature.
double curvature_from_volume(int d, double r, double volume);
double curvature_estimate(const VoxelSet& vs, double r, const Point& x);

/// Field value at a boundary sample: mean of the two adjacent voxel values.
double face_value(const VoxelSet& vs, const InvariantField& field, const BoundarySample& s);

CriticalityReport criticality_report(const VoxelSet& vs, double r, double tol);
CriticalityReport criticality_report(const VoxelSet& vs, const InvariantField& field,
                                     const std::vector<BoundarySample>& samples, double tol);

/// |Ω ∩ (B_r(x1) Δ B_r(x2))|, exact voxel count times h^d.
double symmetric_difference_measure(const VoxelSet& vs, double r, const Point& x1,
                                    const Point& x2);

DegeneracyReport degeneracy_score(const VoxelSet& vs, double r,
                                  std::size_t budget = kDefaultPairBudget,
                                  std::uint64_t seed = kDefaultSeed);

/// Infimum of sphere_invariant_at over voxel centres closer than eps to the
/// boundary samples. A positive value certifies nondegeneracy.
double nondegeneracy_condition(const VoxelSet& vs, double r, double eps);

/// Ordered pairs (x in Ω, y not in Ω) with |x - y| <= r, as a count and as
/// the measure count * h^(2d).
std::int64_t nonlocal_perimeter_count(const VoxelSet& vs, double r);
double nonlocal_perimeter(const VoxelSet& vs, double r);

/// h^(2d) * sum over ordered occupied pairs within the cutoff of kernel(|x - y|).
double riesz_functional(const VoxelSet& vs, const Kernel& kernel);
/// Pair count for the indicator kernel.
std::int64_t riesz_indicator_count(const VoxelSet& vs, double r);

}  // namespace vxr
