#include "cli.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <filesystem>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "vxr/analytic.hpp"
#include "vxr/error.hpp"
#include "vxr/invariant.hpp"
#include "vxr/io.hpp"
#include "vxr/log.hpp"
#include "vxr/parallel.hpp"
#include "vxr/report.hpp"
#include "vxr/rigidity.hpp"
#include "vxr/shape.hpp"
#include "vxr/symmetry.hpp"

namespace vxr::cli {

namespace fs = std::filesystem;
using report::Json;

namespace {

struct RunConfig {
  std::string input;
  std::string grid;
  double radius = 0.0;
  double tol_criticality = 0.02;
  double tol_degeneracy = 0.1;
  std::optional<double> tol_inclusion;
  std::optional<double> tol_contact;
  std::optional<double> tol_radius;
  double tol_residual = kDefaultResidualTolerance;
  std::size_t budget = kDefaultPairBudget;
  std::uint64_t seed = kDefaultSeed;
  unsigned threads = 0;
  std::string out = ".";
  std::optional<double> eps;
  int bins = 32;
  std::vector<int> axes;
  std::string orientation = "both";
};

GridSpec parse_grid(const std::string& text) {
  std::vector<double> v;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      v.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ParameterError("--grid: \"" + item + "\" is not a number");
    }
  }
  if (v.empty()) throw ParameterError("--grid: empty");
  const int d = static_cast<int>(v[0]);
  if (v[0] != d || (d != 2 && d != 3)) throw ParameterError("--grid: dimension must be 2 or 3");
  if (v.size() != static_cast<std::size_t>(2 * d + 2))
    throw ParameterError("--grid: expected d,n1..nd,h,o1..od (" + std::to_string(2 * d + 2) + " values)");
  std::vector<int> ext(d);
  for (int k = 0; k < d; ++k) {
    ext[k] = static_cast<int>(v[1 + k]);
    if (ext[k] != v[1 + k]) throw ParameterError("--grid: extents must be integers");
  }
  std::vector<double> org(v.begin() + d + 2, v.end());
  return GridSpec::make(d, ext, v[d + 1], org);
}

GridSpec grid_from_json(const nlohmann::json& j) {
  auto fail = [](const std::string& why) { throw ParameterError("grid: " + why); };
  if (!j.is_object()) fail("must be an object");
  for (const char* key : {"dim", "extent", "spacing", "origin"})
    if (!j.contains(key)) fail(std::string("missing field \"") + key + "\"");
  if (!j["dim"].is_number_integer()) fail("\"dim\" must be an integer");
  if (!j["extent"].is_array() || !j["origin"].is_array()) fail("\"extent\" and \"origin\" must be arrays");
  if (!j["spacing"].is_number()) fail("\"spacing\" must be a number");
  const int d = j["dim"].get<int>();
  std::vector<int> ext;
  for (const auto& e : j["extent"]) {
    if (!e.is_number_integer()) fail("\"extent\" entries must be integers");
    ext.push_back(e.get<int>());
  }
  std::vector<double> org;
  for (const auto& e : j["origin"]) {
    if (!e.is_number()) fail("\"origin\" entries must be numbers");
    org.push_back(e.get<double>());
  }
  if (static_cast<int>(ext.size()) != d || static_cast<int>(org.size()) != d)
    fail("\"extent\" and \"origin\" need dim entries");
  return GridSpec::make(d, ext, j["spacing"].get<double>(), org);
}

/// Voxel set from a VXG1 file, or a JSON document holding either a bare shape
/// tree or {"grid": {...}, "shape": {...}}.
VoxelSet load_input(const RunConfig& cfg) {
  if (cfg.input.empty()) throw ParameterError("--input is required");
  if (!fs::exists(cfg.input)) throw IoError("cannot open input file " + cfg.input);
  if (io::is_grid_file(cfg.input)) {
    if (!cfg.grid.empty()) throw ParameterError("--grid cannot be combined with a grid-binary input");
    return io::load_grid(cfg.input);
  }
  const std::string text = io::read_text(cfg.input);
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t at = e.byte > 0 ? e.byte - 1 : 0;
    throw InputError(cfg.input + ": JSON parse error at byte " + std::to_string(at) + ": " + e.what(), at);
  }
  std::optional<GridSpec> grid;
  std::string shape_text = text;
  if (doc.is_object() && doc.contains("shape")) {
    shape_text = doc["shape"].dump();
    if (doc.contains("grid")) grid = grid_from_json(doc["grid"]);
  }
  if (!cfg.grid.empty()) grid = parse_grid(cfg.grid);
  if (!grid) throw ParameterError("no grid: pass --grid d,n1..nd,h,o1..od or add a \"grid\" object");
  const Shape shape = Shape::parse(shape_text);
  shape.validate(grid->dim);
  return rasterize(shape, *grid);
}

fs::path prepare_out(const RunConfig& cfg) {
  const fs::path dir(cfg.out);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) throw IoError("cannot create output directory " + cfg.out);
  return dir;
}

void check_tolerances(const RunConfig& cfg) {
  auto positive = [](double v, const char* flag) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ParameterError(std::string(flag) + " must be a positive number");
  };
  positive(cfg.tol_criticality, "--tol-criticality");
  positive(cfg.tol_degeneracy, "--tol-degeneracy");
  positive(cfg.tol_residual, "--tol-residual");
  if (cfg.tol_inclusion) positive(*cfg.tol_inclusion, "--tol-inclusion");
  if (cfg.tol_contact) positive(*cfg.tol_contact, "--tol-contact");
  if (cfg.tol_radius) positive(*cfg.tol_radius, "--tol-radius");
  if (cfg.eps) positive(*cfg.eps, "--eps");
  if (cfg.bins < 1) throw ParameterError("--bins must be at least 1");
}

void require_radius(const RunConfig& cfg) {
  if (!(cfg.radius > 0.0) || !std::isfinite(cfg.radius))
    throw ParameterError("--radius must be a positive number");
}

Json header(const char* command, const GridSpec& g) {
  Json j;
  j["schema"] = report::kSchemaVersion;
  j["command"] = command;
  j["grid"] = report::to_json(g);
  return j;
}

std::string csv_point(const Point& p, int dim) {
  std::string s;
  for (int k = 0; k < dim; ++k) {
    if (k) s += ",";
    s += report::format_number(p[k]);
  }
  return s;
}

std::string csv_header(int dim) { return dim == 2 ? "x1,x2" : "x1,x2,x3"; }

// ---------------------------------------------------------------- commands

void cmd_rasterize(const RunConfig& cfg) {
  const VoxelSet vs = load_input(cfg);
  const fs::path dir = prepare_out(cfg);
  io::save_grid(vs, dir / "grid.vxg");
  Json j = header("rasterize", vs.grid());
  j["voxel_count"] = vs.count();
  j["measure"] = measure(vs);
  j["boundary_faces"] = boundary_face_count(vs);
  Json warnings = Json::array();
  if (touches_border(vs)) warnings.push_back("occupancy touches the grid border; the set is clipped");
  j["warnings"] = warnings;
  j["grid_file"] = "grid.vxg";
  io::write_text(dir / "rasterize.json", report::dump(j));
}

void cmd_invariant(const RunConfig& cfg) {
  require_radius(cfg);
  const VoxelSet vs = load_input(cfg);
  const auto samples = boundary_samples(vs);
  if (samples.empty()) throw PreconditionError("invariant: set has no boundary");
  const InvariantField field = vol_invariant_field(vs, cfg.radius);
  const CriticalityReport crit = criticality_report(vs, field, samples, cfg.tol_criticality);
  const fs::path dir = prepare_out(cfg);
  io::save_field(vs.grid(), field.values, dir / "field.vxf");
  Json j = header("invariant", vs.grid());
  j["field_file"] = "field.vxf";
  j["criticality"] = report::to_json(crit);
  io::write_text(dir / "criticality.json", report::dump(j));

  const int d = vs.grid().dim;
  std::string csv = csv_header(d) + ",V\n";
  for (const BoundarySample& s : samples)
    csv += csv_point(s.point, d) + "," + report::format_number(face_value(vs, field, s)) + "\n";
  io::write_text(dir / "boundary_values.csv", csv);
}

void cmd_analyze(const RunConfig& cfg) {
  require_radius(cfg);
  const VoxelSet vs = load_input(cfg);
  const GridSpec& g = vs.grid();
  const auto samples = boundary_samples(vs);
  if (samples.empty()) throw PreconditionError("analyze: set has no boundary");
  const InvariantField field = vol_invariant_field(vs, cfg.radius);
  const CriticalityReport crit = criticality_report(vs, field, samples, cfg.tol_criticality);
  const DegeneracyReport deg = degeneracy_score(vs, cfg.radius, cfg.budget, cfg.seed);

  std::vector<double> curv(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i)
    curv[i] = curvature_from_volume(g.dim, cfg.radius, face_value(vs, field, samples[i]));
  std::vector<double> sorted = curv;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  const double median = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  double mean = 0.0;
  for (double c : curv) mean += c;
  mean /= static_cast<double>(n);

  Json hist;
  const double lo = sorted.front(), hi = sorted.back();
  const int bins = std::max(1, cfg.bins);
  std::vector<std::size_t> counts(bins, 0);
  const double width = hi > lo ? (hi - lo) / bins : 1.0;
  for (double c : curv) {
    const int b = hi > lo ? std::min(bins - 1, static_cast<int>((c - lo) / width)) : 0;
    ++counts[b];
  }
  Json edges = Json::array();
  for (int b = 0; b <= bins; ++b) edges.push_back(lo + b * width);
  hist["edges"] = edges;
  hist["counts"] = counts;

  Json cj;
  cj["sample_count"] = n;
  cj["median"] = median;
  cj["mean"] = mean;
  cj["min"] = lo;
  cj["max"] = hi;
  cj["histogram"] = hist;

  const double cell = g.cell_volume();
  const std::int64_t kc = kernel_count(cfg.radius, g);
  const std::int64_t riesz = riesz_indicator_count(vs, cfg.radius);
  const std::int64_t perim = kc * static_cast<std::int64_t>(vs.count()) - riesz;
  Json nl;
  nl["kernel_count"] = kc;
  nl["kernel_volume"] = static_cast<double>(kc) * cell;
  nl["nonlocal_perimeter_count"] = perim;
  nl["riesz_indicator_count"] = riesz;
  nl["nonlocal_perimeter"] = static_cast<double>(perim) * cell * cell;
  nl["riesz_indicator"] = static_cast<double>(riesz) * cell * cell;

  Json j = header("analyze", g);
  j["radius"] = cfg.radius;
  j["measure"] = measure(vs);
  j["criticality"] = report::to_json(crit);
  j["degeneracy"] = report::to_json(deg, g.dim);
  if (cfg.eps) {
    Json nd;
    nd["eps"] = *cfg.eps;
    nd["value"] = nondegeneracy_condition(vs, cfg.radius, *cfg.eps);
    j["nondegeneracy"] = nd;
  } else {
    j["nondegeneracy"] = nullptr;
  }
  j["curvature"] = cj;
  j["nonlocal"] = nl;

  const fs::path dir = prepare_out(cfg);
  io::write_text(dir / "analyze.json", report::dump(j));
  std::string csv = csv_header(g.dim) + ",H\n";
  for (std::size_t i = 0; i < samples.size(); ++i)
    csv += csv_point(samples[i].point, g.dim) + "," + report::format_number(curv[i]) + "\n";
  io::write_text(dir / "curvature.csv", csv);
}

void cmd_planes(const RunConfig& cfg) {
  const VoxelSet vs = load_input(cfg);
  const GridSpec& g = vs.grid();
  if (vs.is_empty()) throw PreconditionError("planes: set is empty");
  std::vector<int> axes = cfg.axes;
  if (axes.empty())
    for (int a = 0; a < g.dim; ++a) axes.push_back(a);
  std::vector<Orientation> orients;
  if (cfg.orientation == "+" || cfg.orientation == "both") orients.push_back(Orientation::positive);
  if (cfg.orientation == "-" || cfg.orientation == "both") orients.push_back(Orientation::negative);
  if (orients.empty()) throw ParameterError("--orientation must be +, - or both");

  const fs::path dir = prepare_out(cfg);
  Json results = Json::array();
  for (int axis : axes) {
    if (axis < 0 || axis >= g.dim) throw ParameterError("--axis out of range for this grid");
    for (Orientation o : orients) {
      const MovingPlanesResult res = moving_planes(vs, axis, o, cfg.tol_inclusion, cfg.tol_contact);
      const Decomposition dec = decompose_symmetric(vs, res);
      const std::string stem =
          "axis" + std::to_string(axis) + (o == Orientation::positive ? "_pos" : "_neg");
      io::save_grid(dec.sym, dir / (stem + "_sym.vxg"));
      io::save_grid(dec.nonsym, dir / (stem + "_nonsym.vxg"));
      Json r = report::to_json(res, g, stem + "_sym.vxg", stem + "_nonsym.vxg");
      r.erase("schema");
      r["interface_violation"] = dec.interface_violation;
      results.push_back(r);
    }
  }
  Json j = header("planes", g);
  j["results"] = results;
  io::write_text(dir / "planes.json", report::dump(j));
}

void cmd_decompose(const RunConfig& cfg) {
  require_radius(cfg);
  const VoxelSet vs = load_input(cfg);
  const GridSpec& g = vs.grid();
  RigidityTolerances tols;
  tols.criticality = cfg.tol_criticality;
  tols.degeneracy_floor = cfg.tol_degeneracy;
  tols.radius = cfg.tol_radius;
  tols.residual = cfg.tol_residual;
  tols.budget = cfg.budget;
  tols.seed = cfg.seed;
  const RigidityReport rep = rigidity_verdict(vs, cfg.radius, tols);

  const fs::path dir = prepare_out(cfg);
  std::vector<std::string> ball_files;
  std::string residual_file;
  if (rep.decomposition) {
    for (std::size_t i = 0; i < rep.decomposition->masks.size(); ++i) {
      ball_files.push_back("ball_" + std::to_string(i) + ".vxg");
      io::save_grid(rep.decomposition->masks[i], dir / ball_files.back());
    }
    residual_file = "residual.vxg";
    io::save_grid(rep.decomposition->residual_set, dir / residual_file);
  }
  Json j = header("decompose", g);
  Json body = report::to_json(rep, g.dim, ball_files, residual_file);
  body.erase("schema");
  for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
  io::write_text(dir / "decompose.json", report::dump(j));
}

void add_common(CLI::App* sub, RunConfig& cfg, bool needs_radius) {
  sub->add_option("--input", cfg.input, "Shape JSON or VXG1 grid file")->required();
  sub->add_option("--grid", cfg.grid, "d,n1..nd,h,o1..od (shape inputs only)");
  if (needs_radius) sub->add_option("--radius", cfg.radius, "Ball radius r")->required();
  sub->add_option("--threads", cfg.threads, "Worker thread cap (0 = all cores)");
  sub->add_option("--out", cfg.out, "Output directory");
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  RunConfig cfg;
  CLI::App app("Volumetric integral invariants, moving planes and ball extraction on voxel grids", "vxr");
  app.require_subcommand(1);

  auto* ras = app.add_subcommand("rasterize", "Rasterize a shape spec to a VXG1 grid");
  add_common(ras, cfg, false);

  auto* inv = app.add_subcommand("invariant", "Volumetric invariant field and criticality report");
  add_common(inv, cfg, true);
  inv->add_option("--tol-criticality", cfg.tol_criticality, "Relative spread tolerance");

  auto* ana = app.add_subcommand("analyze", "Criticality, degeneracy, curvature and nonlocal functionals");
  add_common(ana, cfg, true);
  ana->add_option("--tol-criticality", cfg.tol_criticality, "Relative spread tolerance");
  ana->add_option("--budget", cfg.budget, "Pair-sampling budget for the degeneracy score");
  ana->add_option("--seed", cfg.seed, "Seed for far-pair sampling");
  ana->add_option("--eps", cfg.eps, "Neighbourhood radius for the nondegeneracy condition");
  ana->add_option("--bins", cfg.bins, "Curvature histogram bins");

  auto* pla = app.add_subcommand("planes", "Moving-planes sweep with contact classification");
  add_common(pla, cfg, false);
  pla->add_option("--axis", cfg.axes, "Axis index (0-based); repeatable, default all");
  pla->add_option("--orientation", cfg.orientation, "+, - or both");
  pla->add_option("--tol-inclusion", cfg.tol_inclusion, "Inclusion tolerance (volume)");
  pla->add_option("--tol-contact", cfg.tol_contact, "Contact tolerance (length)");

  auto* dec = app.add_subcommand("decompose", "Rigidity verdict with equal-ball extraction");
  add_common(dec, cfg, true);
  dec->add_option("--tol-criticality", cfg.tol_criticality, "Relative spread tolerance");
  dec->add_option("--tol-degeneracy", cfg.tol_degeneracy, "Degeneracy score floor");
  dec->add_option("--tol-radius", cfg.tol_radius, "Equal-radius tolerance (default 2h)");
  dec->add_option("--tol-residual", cfg.tol_residual, "Residual fraction tolerance");
  dec->add_option("--budget", cfg.budget, "Pair-sampling budget for the degeneracy score");
  dec->add_option("--seed", cfg.seed, "Seed for far-pair sampling");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? ok : input_error;
  }

  try {
    set_thread_count(cfg.threads);
    check_tolerances(cfg);
    if (*ras) cmd_rasterize(cfg);
    else if (*inv) cmd_invariant(cfg);
    else if (*ana) cmd_analyze(cfg);
    else if (*pla) cmd_planes(cfg);
    else if (*dec) cmd_decompose(cfg);
  } catch (const InputError& e) {
    err << "vxr: input error: " << e.what() << "\n";
    return input_error;
  } catch (const ParameterError& e) {
    err << "vxr: parameter error: " << e.what() << "\n";
    return input_error;
  } catch (const PreconditionError& e) {
    err << "vxr: precondition failed: " << e.what() << "\n";
    return precondition;
  } catch (const IoError& e) {
    err << "vxr: I/O error: " << e.what() << "\n";
    return io_error;
  } catch (const std::exception& e) {
    err << "vxr: internal error: " << e.what() << "\n";
    return internal;
  }
  return ok;
}

}  // namespace vxr::cli
