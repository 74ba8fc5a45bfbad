#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "vxr/grid.hpp"
#include "vxr/invariant.hpp"
#include "vxr/rigidity.hpp"
#include "vxr/symmetry.hpp"

namespace vxr::report {

using Json = nlohmann::ordered_json;

/// Version stamped into every emitted document as "schema".
inline constexpr int kSchemaVersion = 1;

Json to_json(const GridSpec& g);
Json to_json(const Point& p, int dim);
Json to_json(const CriticalityReport& c);
Json to_json(const DegeneracyReport& d, int dim);
Json to_json(const BallFit& b, int dim);
/// `sym_file` / `nonsym_file` name the mask sidecars; empty strings are emitted as null.
Json to_json(const MovingPlanesResult& m, const GridSpec& g, const std::string& sym_file = {},
             const std::string& nonsym_file = {});
Json to_json(const DecompositionResult& d, int dim, const std::vector<std::string>& ball_files = {},
             const std::string& residual_file = {});
Json to_json(const RigidityReport& r, int dim, const std::vector<std::string>& ball_files = {},
             const std::string& residual_file = {});

/// Deterministic text: two-space indent, doubles at 17 significant digits,
/// non-finite numbers as null, trailing newline.
std::string dump(const Json& j);

/// Formats one double the way dump() does.
std::string format_number(double v);

}  // namespace vxr::report
