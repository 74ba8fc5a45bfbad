#include "vxr/shape.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

#include "json.hpp"
#include "vxr/error.hpp"
#include "vxr/log.hpp"
#include "vxr/parallel.hpp"

namespace vxr {

using nlohmann::json;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

bool finite_point(const Point& p) {
  return std::isfinite(p[0]) && std::isfinite(p[1]) && std::isfinite(p[2]);
}

double dot(const Point& a, const Point& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }

Point read_point(const json& j, const char* key, const std::string& where, int& dims) {
  if (!j.contains(key) || !j.at(key).is_array())
    throw ParameterError(where + ": missing array field \"" + key + "\"");
  const json& arr = j.at(key);
  if (arr.size() < 2 || arr.size() > 3)
    throw ParameterError(where + ": field \"" + key + "\" needs 2 or 3 coordinates");
  Point p{0.0, 0.0, 0.0};
  for (std::size_t k = 0; k < arr.size(); ++k) {
    if (!arr[k].is_number())
      throw ParameterError(where + ": field \"" + key + "\" must hold numbers");
    p[k] = arr[k].get<double>();
  }
  dims = static_cast<int>(arr.size());
  return p;
}

double read_number(const json& j, const char* key, const std::string& where) {
  if (!j.contains(key) || !j.at(key).is_number())
    throw ParameterError(where + ": missing numeric field \"" + key + "\"");
  return j.at(key).get<double>();
}

json point_json(const Point& p, int dims) {
  json arr = json::array();
  for (int k = 0; k < dims; ++k) arr.push_back(p[k]);
  return arr;
}

}  // namespace

Shape Shape::ball(const Point& center, double radius, int dims) {
  return Shape(Ball{center, radius}, dims);
}
Shape Shape::box(const Point& lo, const Point& hi, int dims) { return Shape(Box{lo, hi}, dims); }
Shape Shape::halfspace(const Point& normal, double offset, int dims) {
  return Shape(Halfspace{normal, offset}, dims);
}
Shape Shape::annulus_sector(const Point& center, double rho_min, double rho_max,
                            double theta_min, double theta_max) {
  return Shape(AnnulusSector{center, rho_min, rho_max, theta_min, theta_max}, 2);
}

Shape Shape::make_union(std::vector<Shape> children) {
  const int d = children.empty() ? 2 : children.front().dims_;
  return Shape(Csg{Op::set_union, std::move(children)}, d);
}
Shape Shape::make_intersection(std::vector<Shape> children) {
  const int d = children.empty() ? 2 : children.front().dims_;
  return Shape(Csg{Op::intersection, std::move(children)}, d);
}
Shape Shape::make_difference(std::vector<Shape> children) {
  const int d = children.empty() ? 2 : children.front().dims_;
  return Shape(Csg{Op::difference, std::move(children)}, d);
}

bool Shape::contains(const Point& x) const {
  return std::visit(
      overloaded{
          [&](const Ball& b) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) {
              const double d = x[k] - b.center[k];
              s += d * d;
            }
            return s <= b.radius * b.radius;
          },
          [&](const Box& b) {
            for (int k = 0; k < dims_; ++k)
              if (x[k] < b.lo[k] || x[k] > b.hi[k]) return false;
            return true;
          },
          [&](const Halfspace& h) { return dot(h.normal, x) <= h.offset; },
          [&](const AnnulusSector& a) {
            const double dx = x[0] - a.center[0];
            const double dy = x[1] - a.center[1];
            const double rho2 = dx * dx + dy * dy;
            if (rho2 < a.rho_min * a.rho_min || rho2 > a.rho_max * a.rho_max) return false;
            constexpr double two_pi = 2.0 * std::numbers::pi;
            double t = std::atan2(dy, dx) - a.theta_min;
            t = std::fmod(t, two_pi);
            if (t < 0.0) t += two_pi;
            return t <= a.theta_max - a.theta_min;
          },
          [&](const Csg& c) {
            switch (c.op) {
              case Op::set_union:
                for (const auto& ch : c.children)
                  if (ch.contains(x)) return true;
                return false;
              case Op::intersection:
                for (const auto& ch : c.children)
                  if (!ch.contains(x)) return false;
                return !c.children.empty();
              case Op::difference:
                if (c.children.empty() || !c.children.front().contains(x)) return false;
                for (std::size_t k = 1; k < c.children.size(); ++k)
                  if (c.children[k].contains(x)) return false;
                return true;
            }
            return false;
          }},
      node_);
}

void Shape::validate(int dim) const { validate_at(dim, "shape"); }

void Shape::validate_at(int dim, const std::string& path) const {
  auto fail = [&](const char* kind, const std::string& why) {
    throw ParameterError(path + " (" + kind + "): " + why);
  };
  std::visit(overloaded{
                 [&](const Ball& b) {
                   if (dims_ != dim) fail("ball", "center needs " + std::to_string(dim) + " coordinates");
                   if (!finite_point(b.center)) fail("ball", "center must be finite");
                   if (!std::isfinite(b.radius) || !(b.radius > 0.0))
                     fail("ball", "radius must be a positive finite number");
                 },
                 [&](const Box& b) {
                   if (dims_ != dim) fail("box", "corners need " + std::to_string(dim) + " coordinates");
                   if (!finite_point(b.lo) || !finite_point(b.hi)) fail("box", "corners must be finite");
                   for (int k = 0; k < dim; ++k)
                     if (!(b.hi[k] > b.lo[k])) fail("box", "max must exceed min on every axis");
                 },
                 [&](const Halfspace& h) {
                   if (dims_ != dim) fail("halfspace", "normal needs " + std::to_string(dim) + " coordinates");
                   if (!finite_point(h.normal) || !std::isfinite(h.offset))
                     fail("halfspace", "parameters must be finite");
                   if (dot(h.normal, h.normal) == 0.0) fail("halfspace", "normal must be nonzero");
                 },
                 [&](const AnnulusSector& a) {
                   if (dim != 2) fail("annulus_sector", "only defined in dimension 2");
                   if (dims_ != 2) fail("annulus_sector", "center needs 2 coordinates");
                   if (!finite_point(a.center) || !std::isfinite(a.rho_min) ||
                       !std::isfinite(a.rho_max) || !std::isfinite(a.theta_min) ||
                       !std::isfinite(a.theta_max))
                     fail("annulus_sector", "parameters must be finite");
                   if (a.rho_min < 0.0) fail("annulus_sector", "rho_min must be >= 0");
                   if (!(a.rho_max - a.rho_min > 0.0))
                     fail("annulus_sector", "rho_max - rho_min must be positive");
                   if (!(a.theta_max > a.theta_min) ||
                       a.theta_max - a.theta_min > 2.0 * std::numbers::pi)
                     fail("annulus_sector", "need theta_min < theta_max <= theta_min + 2*pi");
                 },
                 [&](const Csg& c) {
                   const char* kind = c.op == Op::set_union      ? "union"
                                      : c.op == Op::intersection ? "intersection"
                                                                 : "difference";
                   if (c.children.empty()) fail(kind, "needs at least one child");
                   for (std::size_t k = 0; k < c.children.size(); ++k)
                     c.children[k].validate_at(dim, path + ".children[" + std::to_string(k) + "]");
                 }},
             node_);
}

namespace {

Shape shape_from_json(const json& j, const std::string& path) {
  if (!j.is_object()) throw ParameterError(path + ": expected an object");
  if (!j.contains("op") || !j.at("op").is_string())
    throw ParameterError(path + ": missing string field \"op\"");
  const std::string op = j.at("op").get<std::string>();
  const std::string where = path + " (" + op + ")";
  int dims = 2;
  if (op == "ball") {
    const Point c = read_point(j, "center", where, dims);
    return Shape::ball(c, read_number(j, "radius", where), dims);
  }
  if (op == "box") {
    int d2 = 2;
    const Point lo = read_point(j, "min", where, dims);
    const Point hi = read_point(j, "max", where, d2);
    if (d2 != dims) throw ParameterError(where + ": min and max must have equal length");
    return Shape::box(lo, hi, dims);
  }
  if (op == "halfspace") {
    const Point n = read_point(j, "normal", where, dims);
    return Shape::halfspace(n, read_number(j, "offset", where), dims);
  }
  if (op == "annulus_sector") {
    const Point c = read_point(j, "center", where, dims);
    if (dims != 2) throw ParameterError(where + ": center needs 2 coordinates");
    return Shape::annulus_sector(c, read_number(j, "rho_min", where),
                                 read_number(j, "rho_max", where),
                                 read_number(j, "theta_min", where),
                                 read_number(j, "theta_max", where));
  }
  if (op == "union" || op == "intersection" || op == "difference") {
    if (!j.contains("children") || !j.at("children").is_array())
      throw ParameterError(where + ": missing array field \"children\"");
    std::vector<Shape> kids;
    const json& arr = j.at("children");
    for (std::size_t k = 0; k < arr.size(); ++k)
      kids.push_back(shape_from_json(arr[k], path + ".children[" + std::to_string(k) + "]"));
    if (op == "union") return Shape::make_union(std::move(kids));
    if (op == "intersection") return Shape::make_intersection(std::move(kids));
    return Shape::make_difference(std::move(kids));
  }
  throw ParameterError(path + ": unknown op \"" + op + "\"");
}

}  // namespace

Shape Shape::parse(std::string_view json_text) {
  json j;
  try {
    j = json::parse(json_text.begin(), json_text.end());
  } catch (const json::parse_error& e) {
    // e.byte counts the bytes consumed; report the 0-based offset of the last one.
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    std::ostringstream msg;
    msg << "shape JSON parse error at byte " << at << ": " << e.what();
    throw InputError(msg.str(), at);
  }
  return shape_from_json(j, "shape");
}

std::string Shape::to_json() const {
  std::function<json(const Shape&)> emit = [&](const Shape& s) -> json {
    return std::visit(
        overloaded{
            [&](const Ball& b) {
              return json{{"op", "ball"}, {"center", point_json(b.center, s.dims_)}, {"radius", b.radius}};
            },
            [&](const Box& b) {
              return json{{"op", "box"}, {"min", point_json(b.lo, s.dims_)}, {"max", point_json(b.hi, s.dims_)}};
            },
            [&](const Halfspace& h) {
              return json{{"op", "halfspace"}, {"normal", point_json(h.normal, s.dims_)}, {"offset", h.offset}};
            },
            [&](const AnnulusSector& a) {
              return json{{"op", "annulus_sector"}, {"center", point_json(a.center, 2)},
                          {"rho_min", a.rho_min}, {"rho_max", a.rho_max},
                          {"theta_min", a.theta_min}, {"theta_max", a.theta_max}};
            },
            [&](const Csg& c) {
              json kids = json::array();
              for (const auto& ch : c.children) kids.push_back(emit(ch));
              const char* name = c.op == Op::set_union      ? "union"
                                 : c.op == Op::intersection ? "intersection"
                                                            : "difference";
              return json{{"op", name}, {"children", kids}};
            }},
        s.node_);
  };
  return emit(*this).dump();
}

VoxelSet rasterize(const Shape& shape, const GridSpec& grid) {
  grid.validate();
  shape.validate(grid.dim);
  std::vector<std::uint8_t> occ(grid.size(), 0);
  const std::size_t n0 = grid.extent[0];
  const std::size_t lines = grid.size() / n0;
  parallel_for(lines, [&](std::size_t line) {
    Index i = grid.unravel(line * n0);
    for (std::size_t k = 0; k < n0; ++k) {
      i[0] = static_cast<int>(k);
      occ[line * n0 + k] = shape.contains(grid.center(i)) ? 1 : 0;
    }
  });
  VoxelSet vs(grid, std::move(occ));
  if (touches_border(vs))
    log::warn("rasterize: occupancy touches the grid border; the set is clipped by the grid");
  return vs;
}

}  // namespace vxr
