#include <doctest.h>

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "../tools/cli.hpp"
#include "support.hpp"
#include "vxr/io.hpp"

using namespace vxt;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  int code;
  std::string out, err;
};

Outcome call(std::vector<std::string> args) {
  args.insert(args.begin(), "vxr");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

nlohmann::json load(const fs::path& p) { return nlohmann::json::parse(slurp(p)); }

const char* kDisk = R"({"op": "ball", "center": [0, 0], "radius": 1})";
const char* kGrid = "2,96,96,0.03125,-1.5,-1.5";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("rasterize writes the grid and a report") {
  const fs::path dir = scratch_dir("cli_rasterize");
  write(dir / "disk.json", kDisk);
  const Outcome o = call({"rasterize", "--input", (dir / "disk.json").string(), "--grid", kGrid, "--out",
                          (dir / "out").string()});
  REQUIRE_MESSAGE(o.code == 0, o.err);
  const VoxelSet vs = io::load_grid(dir / "out" / "grid.vxg");
  const auto j = load(dir / "out" / "rasterize.json");
  CHECK(j["schema"] == 1);
  CHECK(j["command"] == "rasterize");
  CHECK(j["voxel_count"] == vs.count());
  CHECK(j["warnings"].empty());
  CHECK(vs.count() == brute_point_count(vs, 1.0, Point{0, 0, 0}));

  SUBCASE("a grid file is accepted as input") {
    const Outcome again = call({"rasterize", "--input", (dir / "out" / "grid.vxg").string(), "--out",
                                (dir / "again").string()});
    CHECK(again.code == 0);
    CHECK(slurp(dir / "again" / "grid.vxg") == slurp(dir / "out" / "grid.vxg"));
  }
  SUBCASE("grid file plus --grid is rejected") {
    CHECK(call({"rasterize", "--input", (dir / "out" / "grid.vxg").string(), "--grid", kGrid}).code == 2);
  }
}

TEST_CASE("embedded grid and border warning") {
  const fs::path dir = scratch_dir("cli_embedded");
  write(dir / "big.json",
        R"({"grid": {"dim": 2, "extent": [32, 32], "spacing": 0.0625, "origin": [-1, -1]},
            "shape": {"op": "ball", "center": [0, 0], "radius": 1.5}})");
  const Outcome o = call({"rasterize", "--input", (dir / "big.json").string(), "--out", dir.string()});
  REQUIRE(o.code == 0);
  const auto j = load(dir / "rasterize.json");
  CHECK(j["voxel_count"] == 32 * 32);
  CHECK(j["warnings"].size() == 1);
}

TEST_CASE("exit codes") {
  const fs::path dir = scratch_dir("cli_errors");
  write(dir / "bad.json", R"({"op": "ball", "center": [0, 0], "radius": })");
  write(dir / "disk.json", kDisk);
  write(dir / "empty.json", R"({"op": "ball", "center": [5, 5], "radius": 0.25})");

  const Outcome parse = call({"rasterize", "--input", (dir / "bad.json").string(), "--grid", kGrid});
  CHECK(parse.code == 2);
  CHECK(parse.err.find("byte") != std::string::npos);

  CHECK(call({"rasterize", "--input", (dir / "disk.json").string()}).code == 2);  // no grid
  CHECK(call({"rasterize", "--input", (dir / "disk.json").string(), "--grid", "2,8,8"}).code == 2);
  CHECK(call({"invariant", "--input", (dir / "disk.json").string(), "--grid", kGrid}).code == 2);  // no --radius
  CHECK(call({"invariant", "--input", (dir / "disk.json").string(), "--grid", kGrid, "--radius", "-1"}).code == 2);
  CHECK(call({"frobnicate"}).code == 2);
  CHECK(call({"analyze", "--input", (dir / "disk.json").string(), "--grid", kGrid, "--radius", "0.5",
              "--tol-criticality", "0"})
            .code == 2);
  CHECK(call({"rasterize", "--input", (dir / "missing.json").string(), "--grid", kGrid}).code == 4);
  CHECK(call({"decompose", "--input", (dir / "empty.json").string(), "--grid", kGrid, "--radius", "0.5", "--out",
              dir.string()})
            .code == 3);

  write(dir / "blocker", "not a directory");
  CHECK(call({"rasterize", "--input", (dir / "disk.json").string(), "--grid", kGrid, "--out",
              (dir / "blocker" / "sub").string()})
            .code == 4);
  CHECK(call({"--help"}).code == 0);
}

TEST_CASE("invariant and analyze outputs") {
  const fs::path dir = scratch_dir("cli_analyze");
  write(dir / "disk.json", kDisk);
  const std::string in = (dir / "disk.json").string();
  REQUIRE(call({"invariant", "--input", in, "--grid", kGrid, "--radius", "0.5", "--tol-criticality", "0.1",
                "--out", dir.string()})
              .code == 0);
  const auto crit = load(dir / "criticality.json");
  CHECK(crit["criticality"]["critical"] == true);
  const std::string csv = slurp(dir / "boundary_values.csv");
  CHECK(csv.rfind("x1,x2,V\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 1 + crit["criticality"]["sample_count"].get<int>());
  const auto [g, values] = io::load_field(dir / "field.vxf");
  CHECK(g.extent[0] == 96);
  CHECK(values.size() == g.size());

  REQUIRE(call({"analyze", "--input", in, "--grid", kGrid, "--radius", "0.5", "--eps", "0.1", "--out",
                dir.string()})
              .code == 0);
  const auto a = load(dir / "analyze.json");
  CHECK(a["curvature"]["median"].get<double>() == doctest::Approx(1.0).epsilon(0.1));
  CHECK(a["nondegeneracy"]["value"].get<double>() > 0.0);
  CHECK(a["nonlocal"]["nonlocal_perimeter_count"].get<std::int64_t>() > 0);
}

TEST_CASE("planes and decompose") {
  const fs::path dir = scratch_dir("cli_planes");
  write(dir / "two.json", R"({"op": "union", "children": [
      {"op": "ball", "center": [0, 0], "radius": 1},
      {"op": "ball", "center": [3, 0], "radius": 1}]})");
  const std::string in = (dir / "two.json").string();
  const std::string grid = "2,176,80,0.03125,-1.25,-1.25";
  REQUIRE(call({"planes", "--input", in, "--grid", grid, "--axis", "1", "--orientation", "+", "--out",
                dir.string()})
              .code == 0);
  const auto p = load(dir / "planes.json");
  REQUIRE(p["results"].size() == 1);
  CHECK(p["results"][0]["axis"] == 1);
  CHECK(fs::exists(dir / "axis1_pos_sym.vxg"));
  CHECK(fs::exists(dir / "axis1_pos_nonsym.vxg"));
  CHECK(call({"planes", "--input", in, "--grid", grid, "--axis", "2", "--out", dir.string()}).code == 2);

  REQUIRE(call({"decompose", "--input", in, "--grid", grid, "--radius", "0.5", "--tol-criticality", "0.1", "--out",
                dir.string()})
              .code == 0);
  const auto d = load(dir / "decompose.json");
  CHECK(d["verdict"] == "THEOREM-CONSISTENT");
  CHECK(d["decomposition"]["balls"].size() == 2);
  CHECK(fs::exists(dir / "ball_0.vxg"));
  CHECK(fs::exists(dir / "ball_1.vxg"));
  CHECK(fs::exists(dir / "residual.vxg"));
}

}  // TEST_SUITE
