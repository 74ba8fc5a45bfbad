#include <doctest.h>

#include <numbers>
#include <string>

#include "support.hpp"
#include "vxr/error.hpp"

using namespace vxt;

TEST_SUITE("shape") {

TEST_CASE("rasterized disk area within 1%") {
  const GridSpec g = GridSpec::centered(2, 1.5, 1.0 / 128);
  const VoxelSet vs = disk(0.1, -0.2, 1.0, g);
  CHECK(measure(vs) == doctest::Approx(std::numbers::pi).epsilon(0.01));
}

TEST_CASE("rasterized ball volume within 1%") {
  const GridSpec g = GridSpec::centered(3, 1.25, 1.0 / 40);
  const VoxelSet vs = rasterize(Shape::ball({0, 0, 0}, 1.0, 3), g);
  CHECK(measure(vs) == doctest::Approx(4.0 / 3.0 * std::numbers::pi).epsilon(0.01));
}

TEST_CASE("halfspace on a symmetric grid keeps exactly half") {
  const GridSpec g = GridSpec::centered(2, 1.0, 1.0 / 16);
  const VoxelSet vs = rasterize(Shape::halfspace({1, 0, 0}, 0.0, 2), g);
  CHECK(vs.count() * 2 == g.size());
}

TEST_CASE("csg operations follow point membership") {
  const Shape a = Shape::ball({0, 0, 0}, 1.0);
  const Shape b = Shape::box({0, -2, 0}, {2, 2, 0});
  const Shape u = Shape::make_union({a, b});
  const Shape i = Shape::make_intersection({a, b});
  const Shape d = Shape::make_difference({a, b});
  CHECK(u.contains({1.5, 0, 0}));
  CHECK(i.contains({0.5, 0, 0}));
  CHECK_FALSE(i.contains({-0.5, 0, 0}));
  CHECK(d.contains({-0.5, 0, 0}));
  CHECK_FALSE(d.contains({0.5, 0, 0}));
}

TEST_CASE("annulus sector area") {
  const GridSpec g = GridSpec::centered(2, 2.0, 1.0 / 256);
  const Shape s = Shape::annulus_sector({0, 0, 0}, 0.5, 1.5, 0.0, std::numbers::pi / 2);
  const double exact = 0.25 * std::numbers::pi * (1.5 * 1.5 - 0.5 * 0.5);
  CHECK(measure(rasterize(s, g)) == doctest::Approx(exact).epsilon(0.01));
  CHECK(s.contains({0.0, 1.0, 0}));
  CHECK_FALSE(s.contains({-0.5, 0.5, 0}));
}

TEST_CASE("parse round trip") {
  const std::string text =
      R"({"op":"difference","children":[{"op":"ball","center":[0,0],"radius":1},)"
      R"({"op":"box","min":[0,0],"max":[1,1]}]})";
  const Shape s = Shape::parse(text);
  CHECK_NOTHROW(s.validate(2));
  const Shape t = Shape::parse(s.to_json());
  for (double x : {-0.9, -0.3, 0.2, 0.6, 0.95})
    for (double y : {-0.5, 0.1, 0.7}) CHECK(s.contains({x, y, 0}) == t.contains({x, y, 0}));
}

TEST_CASE("malformed JSON reports the byte offset") {
  try {
    Shape::parse(R"({"op": "ball", "center": [0, 0], "radius": })");
    FAIL("expected InputError");
  } catch (const InputError& e) {
    CHECK(e.byte() == 43);
    CHECK(std::string(e.what()).find("byte 43") != std::string::npos);
  }
}

TEST_CASE("validation names the failing node") {
  const Shape s = Shape::parse(
      R"({"op":"union","children":[{"op":"ball","center":[0,0],"radius":1},)"
      R"({"op":"ball","center":[0,0],"radius":-1}]})");
  try {
    s.validate(2);
    FAIL("expected ParameterError");
  } catch (const ParameterError& e) {
    CHECK(std::string(e.what()).find("shape.children[1] (ball)") != std::string::npos);
  }
  CHECK_THROWS_AS(Shape::parse(R"({"op":"ball","center":[0,0,0],"radius":1})").validate(2), ParameterError);
  CHECK_THROWS_AS(Shape::parse(R"({"op":"cone"})"), ParameterError);
  CHECK_THROWS_AS(Shape::parse(R"({"op":"box","min":[0,0],"max":[0,1]})").validate(2), ParameterError);
}

}  // TEST_SUITE
