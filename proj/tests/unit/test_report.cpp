#include <doctest.h>

#include <cmath>

#include "support.hpp"
#include "vxr/report.hpp"

using namespace vxt;
using vxr::report::Json;

TEST_SUITE("report") {

TEST_CASE("numbers use 17 significant digits") {
  CHECK(report::format_number(0.1) == "0.10000000000000001");
  CHECK(report::format_number(1.0) == "1");
  CHECK(report::format_number(-2.5) == "-2.5");
  CHECK(report::format_number(1e300) == "1.0000000000000001e+300");
  CHECK(report::format_number(INFINITY) == "null");
  CHECK(report::format_number(NAN) == "null");
}

TEST_CASE("dump keeps insertion order and is parseable") {
  Json j;
  j["zeta"] = 1;
  j["alpha"] = 0.1;
  j["list"] = Json::array({1.5, 2.5});
  j["nested"] = Json::object();
  j["text"] = "a\"b";
  const std::string s = report::dump(j);
  CHECK(s ==
        "{\n  \"zeta\": 1,\n  \"alpha\": 0.10000000000000001,\n  \"list\": [1.5, 2.5],\n"
        "  \"nested\": {},\n  \"text\": \"a\\\"b\"\n}\n");
  const auto back = nlohmann::json::parse(s);
  CHECK(back["alpha"].get<double>() == 0.1);
}

TEST_CASE("round trip of every double") {
  for (double v : {0.1, 1.0 / 3.0, 6.02214076e23, 5e-324, -0.0, 123456789.123456789}) {
    const double back = std::strtod(report::format_number(v).c_str(), nullptr);
    CHECK(back == v);
  }
}

TEST_CASE("report documents carry the schema version") {
  const GridSpec g = GridSpec::centered(2, 1.5, 1.0 / 32);
  const VoxelSet d = disk(0, 0, 1.0, g);
  const Json m = report::to_json(moving_planes(d, 0, Orientation::positive), g);
  CHECK(m["schema"] == report::kSchemaVersion);
  CHECK(m.begin().key() == "schema");
  RigidityTolerances loose;
  loose.criticality = 0.1;  // h = r/16 leaves a few percent of lattice spread
  const Json r = report::to_json(rigidity_verdict(d, 0.5, loose), 2);
  CHECK(r["verdict"] == "THEOREM-CONSISTENT");
  CHECK(r["decomposition"]["balls"].size() == 1);
}

}  // TEST_SUITE
