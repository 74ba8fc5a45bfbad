#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "vxr/grid.hpp"

namespace vxr {

/// Axis-aligned hyperplane x_axis = origin_axis + m * h / 2. Odd m passes
/// through voxel centres, even m through faces.
struct Hyperplane {
  int axis = 0;
  std::int64_t m = 0;

  double offset(const GridSpec& g) const { return g.origin[axis] + 0.5 * g.spacing * static_cast<double>(m); }
  /// Nearest half-voxel plane to world offset t.
  static Hyperplane quantize(const GridSpec& g, int axis, double t);
  /// Mirror of voxel index i along `axis`.
  std::int64_t mirror(std::int64_t i) const { return m - 1 - i; }

  bool operator==(const Hyperplane&) const = default;
};

struct Reflection {
  VoxelSet set;
  double dropped_measure = 0.0;  // mass whose mirror left the grid
};

Reflection reflect(const VoxelSet& vs, const Hyperplane& plane);

/// Re-lays every line along `axis` as one contiguous run of the same length,
/// starting at floor((n - count) / 2).
VoxelSet steiner_symmetrize(const VoxelSet& vs, int axis);

struct SymmetryDefect {
  bool symmetric = false;
  double defect = 0.0;       // mirror + contiguity, as a measure
  double mirror_defect = 0.0;
  double run_defect = 0.0;
};

SymmetryDefect is_steiner_symmetric(const VoxelSet& vs, const Hyperplane& plane, double tol);

/// +1 sweeps towards increasing coordinate (the retained part is below the
/// plane), -1 the opposite way.
enum class Orientation : int { positive = 1, negative = -1 };

struct InclusionCheck {
  bool holds = false;
  double violation = 0.0;
  double outside_measure = 0.0;  // |R_t \ Ω|, including mirrors leaving the grid
  double steiner_defect = 0.0;   // contiguity defect of Ω_t ∪ R_t
};

InclusionCheck symmetric_inclusion_check(const VoxelSet& vs, const Hyperplane& plane, double tol,
                                         Orientation orientation = Orientation::positive);

enum class ContactType { none, away, close, away_and_close, swept_out };
std::string to_string(ContactType c);
std::string to_string(Orientation o);

struct TraceStep {
  double offset = 0.0;
  double violation = 0.0;
};

struct MovingPlanesResult {
  int axis = 0;
  Orientation orientation = Orientation::positive;
  Hyperplane plane;  // the stopping plane H_T
  double T = 0.0;
  ContactType contact = ContactType::none;
  std::vector<Point> away_points;   // boundary samples of R_T touching ∂Ω off H_T
  std::vector<Point> close_points;  // boundary samples of Ω near H_T sharing a normal line
  VoxelSet sym;
  VoxelSet nonsym;
  std::vector<TraceStep> trace;
  double tol_incl = 0.0;
  double tol_contact = 0.0;
};

/// Default inclusion tolerance: one voxel, h^d.
double default_inclusion_tolerance(const GridSpec& g);
/// Default contact tolerance: sqrt(d) * h.
double default_contact_tolerance(const GridSpec& g);

/// Throws PreconditionError on an empty set and ContactAtStart when inclusion
/// fails at the first offset that meets Ω.
MovingPlanesResult moving_planes(const VoxelSet& vs, int axis, Orientation orientation,
                                 std::optional<double> tol_incl = std::nullopt,
                                 std::optional<double> tol_contact = std::nullopt);

struct Decomposition {
  VoxelSet sym;
  VoxelSet nonsym;
  /// Faces between Ω^s and Ω^ns farther than tol_contact from H_T, times h^(d-1).
  double interface_violation = 0.0;
};

/// Throws ConsistencyError when the stored masks do not partition vs.
Decomposition decompose_symmetric(const VoxelSet& vs, const MovingPlanesResult& result);

}  // namespace vxr
