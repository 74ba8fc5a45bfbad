#include "vxr/report.hpp"

#include <cmath>
#include <cstdio>

namespace vxr::report {

namespace {

Json number(double v) {
  if (!std::isfinite(v)) return nullptr;
  return v;
}

Json points(const std::vector<Point>& pts, int dim) {
  Json a = Json::array();
  for (const Point& p : pts) a.push_back(to_json(p, dim));
  return a;
}

Json file_or_null(const std::string& f) { return f.empty() ? Json(nullptr) : Json(f); }

void write(std::string& out, const Json& j, int depth) {
  const std::string pad(2 * (depth + 1), ' ');
  const std::string close_pad(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += pad;
        out += Json(it.key()).dump();
        out += ": ";
        write(out, it.value(), depth + 1);
      }
      out += "\n" + close_pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      // Short numeric arrays (points, trace steps) stay on one line.
      bool flat = j.size() <= 4;
      for (const Json& e : j) flat = flat && (e.is_number() || e.is_null());
      if (flat) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          write(out, j[i], depth + 1);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write(out, j[i], depth + 1);
      }
      out += "\n" + close_pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_number(j.get<double>());
      return;
    default:
      out += j.dump();
      return;
  }
}

}  // namespace

std::string format_number(double v) {
  if (!std::isfinite(v)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string dump(const Json& j) {
  std::string out;
  write(out, j, 0);
  out += "\n";
  return out;
}

Json to_json(const Point& p, int dim) {
  Json a = Json::array();
  for (int k = 0; k < dim; ++k) a.push_back(number(p[k]));
  return a;
}

Json to_json(const GridSpec& g) {
  Json j;
  j["dim"] = g.dim;
  Json ext = Json::array();
  for (int k = 0; k < g.dim; ++k) ext.push_back(g.extent[k]);
  j["extent"] = ext;
  j["spacing"] = g.spacing;
  j["origin"] = to_json(g.origin, g.dim);
  return j;
}

Json to_json(const CriticalityReport& c) {
  Json j;
  j["radius"] = c.radius;
  j["sample_count"] = c.sample_count;
  j["mean"] = number(c.mean);
  j["min"] = number(c.min);
  j["max"] = number(c.max);
  j["stddev"] = number(c.stddev);
  j["spread"] = number(c.spread);
  j["tolerance"] = c.tolerance;
  j["critical"] = c.critical;
  return j;
}

Json to_json(const DegeneracyReport& d, int dim) {
  Json j;
  j["radius"] = d.radius;
  j["score"] = number(d.score);
  j["pair_count"] = d.pair_count;
  j["near_pairs"] = d.near_pairs;
  j["far_pairs"] = d.far_pairs;
  j["exhaustive"] = d.exhaustive;
  j["seed"] = d.seed;
  j["witness"] = Json::array({to_json(d.witness_a, dim), to_json(d.witness_b, dim)});
  return j;
}

Json to_json(const BallFit& b, int dim) {
  Json j;
  j["center"] = to_json(b.center, dim);
  j["radius"] = b.radius;
  j["residual"] = b.residual;
  j["measure"] = b.measure;
  return j;
}

Json to_json(const MovingPlanesResult& m, const GridSpec& g, const std::string& sym_file,
             const std::string& nonsym_file) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["axis"] = m.axis;
  j["orientation"] = to_string(m.orientation);
  j["T"] = m.T;
  j["plane_half_index"] = m.plane.m;
  j["contact"] = to_string(m.contact);
  j["tol_inclusion"] = m.tol_incl;
  j["tol_contact"] = m.tol_contact;
  j["sym_measure"] = measure(m.sym);
  j["nonsym_measure"] = measure(m.nonsym);
  j["sym_mask"] = file_or_null(sym_file);
  j["nonsym_mask"] = file_or_null(nonsym_file);
  j["away_points"] = points(m.away_points, g.dim);
  j["close_points"] = points(m.close_points, g.dim);
  Json trace = Json::array();
  for (const TraceStep& s : m.trace) trace.push_back(Json::array({s.offset, s.violation}));
  j["trace"] = trace;
  return j;
}

Json to_json(const DecompositionResult& d, int dim, const std::vector<std::string>& ball_files,
             const std::string& residual_file) {
  Json j;
  j["radius"] = d.r;
  j["tol_radius"] = d.tol_radius;
  j["tol_residual"] = d.tol_residual;
  j["ball_count"] = d.balls.size();
  Json balls = Json::array();
  for (std::size_t i = 0; i < d.balls.size(); ++i) {
    Json b = to_json(d.balls[i], dim);
    b["isolation"] = number(d.isolation[i]);
    b["planes"] = d.planes_found[i];
    b["mask"] = i < ball_files.size() ? file_or_null(ball_files[i]) : Json(nullptr);
    balls.push_back(b);
  }
  j["balls"] = balls;
  j["input_measure"] = d.input_measure;
  j["residual_measure"] = d.residual_measure;
  j["residual_mask"] = file_or_null(residual_file);
  j["min_pairwise_distance"] = number(d.min_pairwise_distance);
  j["passes"] = d.passes;
  Json flags;
  flags["all_radii_equal"] = d.all_radii_equal;
  flags["all_radii_above_r_half"] = d.all_radii_above_r_half;
  flags["pairwise_distance_ge_r"] = d.pairwise_distance_ge_r;
  flags["residual_negligible"] = d.residual_negligible;
  j["flags"] = flags;
  j["succeeded"] = d.succeeded();
  return j;
}

Json to_json(const RigidityReport& r, int dim, const std::vector<std::string>& ball_files,
             const std::string& residual_file) {
  Json j;
  j["schema"] = kSchemaVersion;
  j["radius"] = r.r;
  j["verdict"] = to_string(r.verdict);
  j["hypothesis_met"] = r.hypothesis_met;
  Json t;
  t["criticality"] = r.tolerances.criticality;
  t["degeneracy_floor"] = r.tolerances.degeneracy_floor;
  t["radius"] = r.tolerances.radius ? number(*r.tolerances.radius) : Json(nullptr);
  t["residual"] = r.tolerances.residual;
  t["budget"] = r.tolerances.budget;
  t["seed"] = r.tolerances.seed;
  j["tolerances"] = t;
  j["criticality"] = to_json(r.criticality);
  j["degeneracy"] = to_json(r.degeneracy, dim);
  j["decomposition"] =
      r.decomposition ? to_json(*r.decomposition, dim, ball_files, residual_file) : Json(nullptr);
  return j;
}

}  // namespace vxr::report
