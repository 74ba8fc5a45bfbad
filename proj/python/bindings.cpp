#include <pybind11/numpy.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <iostream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "vxr/analytic.hpp"
#include "vxr/error.hpp"
#include "vxr/invariant.hpp"
#include "vxr/io.hpp"
#include "vxr/report.hpp"
#include "vxr/rigidity.hpp"
#include "vxr/shape.hpp"
#include "vxr/symmetry.hpp"

namespace py = pybind11;
using namespace vxr;

namespace {

using U8Array = py::array_t<std::uint8_t, py::array::f_style | py::array::forcecast>;

// Arrays are indexed [i1, i2(, i3)] like the voxel index; axis 0 is
// contiguous, matching the in-memory layout (Fortran order).
py::array_t<std::uint8_t> to_numpy(const VoxelSet& vs) {
  const GridSpec& g = vs.grid();
  std::vector<py::ssize_t> shape, strides;
  for (int a = 0; a < g.dim; ++a) {
    shape.push_back(g.extent[a]);
    strides.push_back(static_cast<py::ssize_t>(g.stride(a)));
  }
  py::array_t<std::uint8_t> arr(shape, strides);
  std::copy(vs.data().begin(), vs.data().end(), arr.mutable_data());
  return arr;
}

py::array_t<double> field_to_numpy(const GridSpec& g, const std::vector<double>& v) {
  std::vector<py::ssize_t> shape, strides;
  for (int a = 0; a < g.dim; ++a) {
    shape.push_back(g.extent[a]);
    strides.push_back(static_cast<py::ssize_t>(g.stride(a) * sizeof(double)));
  }
  py::array_t<double> arr(shape, strides);
  std::copy(v.begin(), v.end(), arr.mutable_data());
  return arr;
}

VoxelSet from_numpy(const GridSpec& g, const U8Array& arr) {
  if (arr.ndim() != g.dim) throw ParameterError("occupancy array rank does not match the grid");
  for (int a = 0; a < g.dim; ++a)
    if (arr.shape(a) != g.extent[a]) throw ParameterError("occupancy array shape does not match the grid");
  std::vector<std::uint8_t> occ(arr.data(), arr.data() + g.size());
  for (auto& o : occ) o = o ? 1 : 0;
  return VoxelSet(g, std::move(occ));
}

Point to_point(const std::vector<double>& v) {
  if (v.size() < 2 || v.size() > 3) throw ParameterError("points need 2 or 3 coordinates");
  Point p{0.0, 0.0, 0.0};
  std::copy(v.begin(), v.end(), p.begin());
  return p;
}

py::object parse_json(const report::Json& j) {
  return py::module_::import("json").attr("loads")(report::dump(j));
}

}  // namespace

PYBIND11_MODULE(_vxr, m) {
  m.doc() = "Volumetric integral invariants, moving planes and ball extraction on voxel grids";

  py::register_exception<ParameterError>(m, "ParameterError", PyExc_ValueError);
  py::register_exception<PreconditionError>(m, "PreconditionError", PyExc_RuntimeError);
  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<IoError>(m, "IoError", PyExc_OSError);
  py::register_exception<ConsistencyError>(m, "ConsistencyError", PyExc_RuntimeError);

  py::class_<GridSpec>(m, "GridSpec")
      .def(py::init([](int dim, std::vector<int> extent, double h, std::vector<double> origin) {
             return GridSpec::make(dim, extent, h, origin);
           }),
           py::arg("dim"), py::arg("extent"), py::arg("spacing"), py::arg("origin"))
      .def_static("centered", &GridSpec::centered, py::arg("dim"), py::arg("half_width"), py::arg("spacing"))
      .def_readonly("dim", &GridSpec::dim)
      .def_readonly("spacing", &GridSpec::spacing)
      .def_property_readonly("extent", [](const GridSpec& g) {
        return std::vector<int>(g.extent.begin(), g.extent.begin() + g.dim);
      })
      .def_property_readonly("origin", [](const GridSpec& g) {
        return std::vector<double>(g.origin.begin(), g.origin.begin() + g.dim);
      })
      .def("__repr__", [](const GridSpec& g) { return "GridSpec(" + report::dump(report::to_json(g)) + ")"; });

  py::class_<VoxelSet>(m, "VoxelSet")
      .def(py::init(&from_numpy), py::arg("grid"), py::arg("occupancy"))
      .def_property_readonly("grid", &VoxelSet::grid)
      .def("count", &VoxelSet::count)
      .def("measure", [](const VoxelSet& vs) { return measure(vs); })
      .def("to_numpy", &to_numpy)
      .def("boundary_face_count", [](const VoxelSet& vs) { return boundary_face_count(vs); })
      .def("__eq__", [](const VoxelSet& a, const VoxelSet& b) { return a == b; });

  py::class_<Shape>(m, "Shape")
      .def_static("parse", &Shape::parse, py::arg("json_text"))
      .def_static("ball", [](std::vector<double> c, double r) {
        return Shape::ball(to_point(c), r, static_cast<int>(c.size()));
      })
      .def_static("box", [](std::vector<double> lo, std::vector<double> hi) {
        return Shape::box(to_point(lo), to_point(hi), static_cast<int>(lo.size()));
      })
      .def_static("union", &Shape::make_union)
      .def_static("intersection", &Shape::make_intersection)
      .def_static("difference", &Shape::make_difference)
      .def("contains", [](const Shape& s, std::vector<double> x) { return s.contains(to_point(x)); })
      .def("to_json", &Shape::to_json);

  m.def("rasterize", &rasterize, py::arg("shape"), py::arg("grid"));
  m.def("load_grid", [](const std::string& p) { return io::load_grid(p); });
  m.def("save_grid", [](const VoxelSet& vs, const std::string& p) { io::save_grid(vs, p); });

  m.def("unit_ball_volume", &unit_ball_volume);
  m.def("exact_ball_ball_volume", &exact_ball_ball_volume, py::arg("d"), py::arg("R"), py::arg("r"),
        py::arg("dist"));
  m.def("annular_slab_volume", [](double r, double t2, double gamma, int d) {
    const SlabVolume v = annular_slab_volume(r, t2, gamma, d);
    return py::make_tuple(v.exact, v.asymptotic);
  });

  m.def("vol_invariant_at", [](const VoxelSet& vs, double r, std::vector<double> x) {
    return vol_invariant_at(vs, r, to_point(x));
  });
  m.def("vol_invariant_field", [](const VoxelSet& vs, double r) {
    const InvariantField f = vol_invariant_field(vs, r);
    return field_to_numpy(f.grid, f.values);
  });
  m.def("sphere_invariant_at", [](const VoxelSet& vs, double r, std::vector<double> x) {
    return sphere_invariant_at(vs, r, to_point(x));
  });
  m.def("curvature_estimate", [](const VoxelSet& vs, double r, std::vector<double> x) {
    return curvature_estimate(vs, r, to_point(x));
  });
  m.def("criticality_report", [](const VoxelSet& vs, double r, double tol) {
    return parse_json(report::to_json(criticality_report(vs, r, tol)));
  }, py::arg("vs"), py::arg("r"), py::arg("tol") = 0.02);
  m.def("degeneracy_score", [](const VoxelSet& vs, double r, std::size_t budget, std::uint64_t seed) {
    return parse_json(report::to_json(degeneracy_score(vs, r, budget, seed), vs.grid().dim));
  }, py::arg("vs"), py::arg("r"), py::arg("budget") = kDefaultPairBudget, py::arg("seed") = kDefaultSeed);
  m.def("nondegeneracy_condition", &nondegeneracy_condition, py::arg("vs"), py::arg("r"), py::arg("eps"));
  m.def("nonlocal_perimeter", &nonlocal_perimeter, py::arg("vs"), py::arg("r"));
  m.def("riesz_indicator", [](const VoxelSet& vs, double r) {
    return riesz_functional(vs, Kernel::indicator_ball(r));
  });
  m.def("kernel_count", &kernel_count);

  m.def("reflect", [](const VoxelSet& vs, int axis, std::int64_t m_half) {
    const Reflection r = reflect(vs, Hyperplane{axis, m_half});
    return py::make_tuple(r.set, r.dropped_measure);
  }, py::arg("vs"), py::arg("axis"), py::arg("half_index"));
  m.def("steiner_symmetrize", &steiner_symmetrize, py::arg("vs"), py::arg("axis"));
  m.def("moving_planes", [](const VoxelSet& vs, int axis, const std::string& orientation) {
    if (orientation != "+" && orientation != "-") throw ParameterError("orientation must be '+' or '-'");
    const MovingPlanesResult res =
        moving_planes(vs, axis, orientation == "+" ? Orientation::positive : Orientation::negative);
    py::dict d = parse_json(report::to_json(res, vs.grid()));
    d["sym"] = res.sym;
    d["nonsym"] = res.nonsym;
    return d;
  }, py::arg("vs"), py::arg("axis"), py::arg("orientation") = "+");

  m.def("fit_ball", [](const VoxelSet& c) {
    return parse_json(report::to_json(fit_ball(c), c.grid().dim));
  });
  m.def("detect_symmetry_planes", [](const VoxelSet& c) {
    std::vector<py::tuple> out;
    for (const Hyperplane& p : detect_symmetry_planes(c))
      out.push_back(py::make_tuple(p.axis, p.offset(c.grid())));
    return out;
  });
  m.def("extract_balls", [](const VoxelSet& vs, double r, double tol_residual) {
    return parse_json(report::to_json(extract_balls(vs, r, std::nullopt, tol_residual), vs.grid().dim));
  }, py::arg("vs"), py::arg("r"), py::arg("tol_residual") = kDefaultResidualTolerance);
  m.def("rigidity_verdict", [](const VoxelSet& vs, double r, double tol_criticality, double tol_degeneracy,
                                double tol_residual, std::size_t budget, std::uint64_t seed) {
    RigidityTolerances t;
    t.criticality = tol_criticality;
    t.degeneracy_floor = tol_degeneracy;
    t.residual = tol_residual;
    t.budget = budget;
    t.seed = seed;
    return parse_json(report::to_json(rigidity_verdict(vs, r, t), vs.grid().dim));
  }, py::arg("vs"), py::arg("r"), py::arg("tol_criticality") = RigidityTolerances{}.criticality,
     py::arg("tol_degeneracy") = RigidityTolerances{}.degeneracy_floor,
     py::arg("tol_residual") = kDefaultResidualTolerance, py::arg("budget") = kDefaultPairBudget,
     py::arg("seed") = kDefaultSeed);

  m.def("cli", [](std::vector<std::string> args) {
    std::vector<const char*> argv{"vxr"};
    for (const auto& a : args) argv.push_back(a.c_str());
    return cli::run(static_cast<int>(argv.size()), argv.data(), std::cout, std::cerr);
  }, py::arg("args"));
}
