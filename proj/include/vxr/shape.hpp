#pragma once

#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "vxr/grid.hpp"

namespace vxr {

struct Ball {
  Point center{};
  double radius = 1.0;
};

/// Closed box [lo, hi].
struct Box {
  Point lo{};
  Point hi{};
};

/// {x : normal . x <= offset}
struct Halfspace {
  Point normal{};
  double offset = 0.0;
};

/// Planar annulus sector: rho_min <= |x - c| <= rho_max and polar angle in
/// [theta_min, theta_max] (radians, counter-clockwise from axis 1).
struct AnnulusSector {
  Point center{};
  double rho_min = 0.0;
  double rho_max = 1.0;
  double theta_min = 0.0;
  double theta_max = 0.0;
};

/// Constructive solid geometry tree over ball/box/halfspace/annulus-sector
/// primitives. Point membership is a pure function of the tree.
class Shape {
 public:
  enum class Op { set_union, intersection, difference };

  static Shape ball(const Point& center, double radius, int dims = 2);
  static Shape box(const Point& lo, const Point& hi, int dims = 2);
  static Shape halfspace(const Point& normal, double offset, int dims = 2);
  static Shape annulus_sector(const Point& center, double rho_min, double rho_max,
                              double theta_min, double theta_max);
  static Shape make_union(std::vector<Shape> children);
  static Shape make_intersection(std::vector<Shape> children);
  /// children[0] minus the union of the remaining children.
  static Shape make_difference(std::vector<Shape> children);

  bool contains(const Point& x) const;

  /// Checks every primitive for finite parameters matching `dim`. Errors name
  /// the primitive and its path in the tree, e.g. "children[1] (ball)".
  void validate(int dim) const;

  /// Parses the JSON form: {"op": "ball", "center": [...], "radius": R},
  /// {"op": "box", "min": [...], "max": [...]},
  /// {"op": "halfspace", "normal": [...], "offset": t},
  /// {"op": "annulus_sector", "center": [x, y], "rho_min", "rho_max",
  ///  "theta_min", "theta_max"}, and {"op": "union"|"intersection"|"difference",
  /// "children": [...]}. Throws InputError with a byte offset on malformed JSON.
  static Shape parse(std::string_view json_text);
  std::string to_json() const;

 private:
  struct Csg {
    Op op;
    std::vector<Shape> children;
  };
  using Variant = std::variant<Ball, Box, Halfspace, AnnulusSector, Csg>;

  explicit Shape(Variant v, int dims) : node_(std::move(v)), dims_(dims) {}
  void validate_at(int dim, const std::string& path) const;

  Variant node_;
  int dims_ = 2;  // coordinate count of primitive parameters
};

/// Centre-point rule: a voxel is occupied iff the shape contains its centre.
/// Logs a warning when occupancy reaches the outermost grid layer.
VoxelSet rasterize(const Shape& shape, const GridSpec& grid);

}  // namespace vxr
