#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace vxr {

/// Voxel index; unused trailing axes are 0.
using Index = std::array<int, 3>;
/// World-space point; unused trailing coordinates are 0.
using Point = std::array<double, 3>;
/// Position on the half-voxel lattice: 2 * (x - origin) / h. Voxel centers are
/// odd, faces even. Unused axes hold 1 (the center of the single layer).
using HalfIndex = std::array<std::int64_t, 3>;

/// Axis-aligned regular grid in 2 or 3 dimensions. Axis 0 is stored fastest.
struct GridSpec {
  int dim = 2;
  std::array<int, 3> extent{1, 1, 1};
  double spacing = 1.0;
  Point origin{0.0, 0.0, 0.0};

  /// Builds and validates a grid; extent/origin must have `dim` entries.
  static GridSpec make(int dim, std::span<const int> extent, double spacing,
                       std::span<const double> origin);
  /// Cube [-half_width, half_width]^dim with voxel count round(2*half_width/h)
  /// per axis, centred on the world origin.
  static GridSpec centered(int dim, double half_width, double spacing);

  /// Throws ParameterError on dim outside {2,3}, extent < 1 or spacing <= 0.
  void validate() const;

  std::size_t size() const {
    return static_cast<std::size_t>(extent[0]) * extent[1] * extent[2];
  }
  std::size_t stride(int axis) const {
    return axis == 0 ? 1
           : axis == 1 ? static_cast<std::size_t>(extent[0])
                       : static_cast<std::size_t>(extent[0]) * extent[1];
  }
  std::size_t linear(const Index& i) const {
    return static_cast<std::size_t>(i[0]) +
           static_cast<std::size_t>(extent[0]) *
               (static_cast<std::size_t>(i[1]) +
                static_cast<std::size_t>(extent[1]) * static_cast<std::size_t>(i[2]));
  }
  Index unravel(std::size_t lin) const {
    Index i{0, 0, 0};
    i[0] = static_cast<int>(lin % extent[0]);
    lin /= extent[0];
    i[1] = static_cast<int>(lin % extent[1]);
    i[2] = static_cast<int>(lin / extent[1]);
    return i;
  }
  bool contains(const Index& i) const {
    for (int a = 0; a < 3; ++a)
      if (i[a] < 0 || i[a] >= extent[a]) return false;
    return true;
  }
  double coordinate(int axis, int i) const { return origin[axis] + (i + 0.5) * spacing; }
  Point center(const Index& i) const;
  Point half_point(const HalfIndex& q) const;
  HalfIndex half_index(const Index& i) const {
    return {2LL * i[0] + 1, 2LL * i[1] + 1, 2LL * i[2] + 1};
  }
  /// h^d
  double cell_volume() const;
  /// h^(d-1)
  double face_area() const;

  bool operator==(const GridSpec&) const = default;
};

/// Occupancy grid: the discrete stand-in for a finite-measure set. Voxels
/// outside the grid are empty.
class VoxelSet {
 public:
  VoxelSet() = default;
  explicit VoxelSet(const GridSpec& grid);
  VoxelSet(const GridSpec& grid, std::vector<std::uint8_t> occupancy);

  const GridSpec& grid() const { return grid_; }
  std::size_t size() const { return occ_.size(); }

  bool operator[](std::size_t lin) const { return occ_[lin] != 0; }
  bool at(const Index& i) const { return grid_.contains(i) && occ_[grid_.linear(i)] != 0; }
  void set(std::size_t lin, bool v) { occ_[lin] = v ? 1 : 0; }
  void set(const Index& i, bool v) { occ_[grid_.linear(i)] = v ? 1 : 0; }

  std::size_t count() const;
  bool is_empty() const { return count() == 0; }
  bool is_full() const { return count() == occ_.size(); }
  std::span<const std::uint8_t> data() const { return occ_; }

  bool operator==(const VoxelSet&) const = default;

 private:
  GridSpec grid_;
  std::vector<std::uint8_t> occ_;
};

/// Face between an occupied voxel and an empty (possibly out-of-grid) one.
struct BoundarySample {
  Point point;       // face centre, world coordinates
  int axis = 0;      // normal axis
  int sign = 1;      // normal = sign * e_axis, pointing occupied -> empty
  Index occupied{};
  Index empty{};
  HalfIndex lattice{};  // face centre on the half-voxel lattice

  Point normal() const {
    Point n{0.0, 0.0, 0.0};
    n[axis] = static_cast<double>(sign);
    return n;
  }
};

/// (occupied count) * h^d
double measure(const VoxelSet& vs);

/// One sample per occupied/empty face pair, ordered by occupied voxel (linear
/// order), then axis, then negative before positive direction.
std::vector<BoundarySample> boundary_samples(const VoxelSet& vs);
std::size_t boundary_face_count(const VoxelSet& vs);

/// Face-connected components sorted by descending size; ties keep scan order.
std::vector<VoxelSet> connected_components(const VoxelSet& vs);
/// Component label per voxel (-1 for empty), labels in scan order of first voxel.
std::vector<int> label_components(const VoxelSet& vs, int* label_count = nullptr);

/// Minimum Euclidean distance between occupied voxel centres.
double component_distance(const VoxelSet& a, const VoxelSet& b);
/// Maximum Euclidean distance between occupied voxel centres.
double diameter(const VoxelSet& vs);

/// True when some occupied voxel lies on the outermost layer of the grid.
bool touches_border(const VoxelSet& vs);

VoxelSet set_union(const VoxelSet& a, const VoxelSet& b);
VoxelSet set_intersection(const VoxelSet& a, const VoxelSet& b);
VoxelSet set_difference(const VoxelSet& a, const VoxelSet& b);
/// Count of voxels occupied in exactly one of a, b.
std::size_t symmetric_difference_count(const VoxelSet& a, const VoxelSet& b);

}  // namespace vxr
