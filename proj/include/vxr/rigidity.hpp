#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vxr/grid.hpp"
#include "vxr/invariant.hpp"
#include "vxr/symmetry.hpp"

namespace vxr {

struct BallFit {
  Point center{};
  double radius = 0.0;
  /// |component Δ rasterized ball| / |component|
  double residual = 0.0;
  double measure = 0.0;
};

/// Centroid + measure-matched radius. Throws PreconditionError on empty input.
BallFit fit_ball(const VoxelSet& component);

/// Midplanes found by sweeping each axis in both orientations. A plane is
/// emitted when both sweeps leave at most `tol` of non-symmetric mass and stop
/// within h of each other. Default tol: boundary face count * h^d.
std::vector<Hyperplane> detect_symmetry_planes(const VoxelSet& component,
                                               std::optional<double> tol = std::nullopt);

struct DecompositionResult {
  double r = 0.0;
  double tol_radius = 0.0;
  double tol_residual = 0.0;
  std::vector<BallFit> balls;
  std::vector<VoxelSet> masks;            // one per ball, pairwise disjoint
  std::vector<double> isolation;          // distance to the nearest other component at removal
  std::vector<std::size_t> planes_found;  // symmetry planes detected per ball
  VoxelSet residual_set;
  double residual_measure = 0.0;
  double input_measure = 0.0;
  double min_pairwise_distance = 0.0;  // +inf with fewer than two balls
  std::size_t passes = 0;

  bool all_radii_equal = false;
  bool all_radii_above_r_half = false;
  bool pairwise_distance_ge_r = false;
  bool residual_negligible = false;

  bool succeeded() const {
    return !balls.empty() && all_radii_equal && all_radii_above_r_half && pairwise_distance_ge_r &&
           residual_negligible;
  }
};

inline constexpr double kDefaultResidualTolerance = 0.02;

/// Removes r-isolated components that are balls, pass by pass, until no
/// component qualifies. tol_radius defaults to 2h.
DecompositionResult extract_balls(const VoxelSet& vs, double r,
                                  std::optional<double> tol_radius = std::nullopt,
                                  double tol_residual = kDefaultResidualTolerance);

struct RigidityTolerances {
  double criticality = 0.02;
  double degeneracy_floor = 0.1;
  std::optional<double> radius;  // default 2h
  double residual = kDefaultResidualTolerance;
  std::size_t budget = kDefaultPairBudget;
  std::uint64_t seed = kDefaultSeed;
};

enum class Verdict { theorem_consistent, hypothesis_not_met, inconsistent };
std::string to_string(Verdict v);

struct RigidityReport {
  double r = 0.0;
  RigidityTolerances tolerances;
  CriticalityReport criticality;
  DegeneracyReport degeneracy;
  bool hypothesis_met = false;
  std::optional<DecompositionResult> decomposition;  // absent when the hypothesis fails
  Verdict verdict = Verdict::hypothesis_not_met;
};

/// Throws PreconditionError on an empty set, ParameterError on r <= 0.
RigidityReport rigidity_verdict(const VoxelSet& vs, double r, const RigidityTolerances& tols = {});

}  // namespace vxr
