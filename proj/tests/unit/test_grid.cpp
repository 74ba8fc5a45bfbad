#include <doctest.h>

#include <random>

#include "support.hpp"
#include "vxr/error.hpp"

using namespace vxt;

TEST_SUITE("grid") {

TEST_CASE("grid spec validation") {
  const std::array<int, 3> ext{4, 4, 4};
  const std::array<double, 3> org{0, 0, 0};
  CHECK_THROWS_AS(GridSpec::make(4, std::span<const int>(ext.data(), 3), 1.0, std::span<const double>(org.data(), 3)),
                  ParameterError);
  CHECK_THROWS_AS(GridSpec::make(2, std::span<const int>(ext.data(), 2), 0.0, std::span<const double>(org.data(), 2)),
                  ParameterError);
  const std::array<int, 2> bad{4, 0};
  CHECK_THROWS_AS(GridSpec::make(2, bad, 1.0, std::span<const double>(org.data(), 2)), ParameterError);
  CHECK_THROWS_AS(GridSpec::make(2, std::span<const int>(ext.data(), 3), 1.0, std::span<const double>(org.data(), 2)),
                  ParameterError);
}

TEST_CASE("centered grid is symmetric about the origin") {
  const GridSpec g = GridSpec::centered(2, 1.5, 0.25);
  CHECK(g.extent[0] == 12);
  CHECK(g.origin[0] == doctest::Approx(-1.5));
  CHECK(g.center({0, 0, 0})[0] == doctest::Approx(-1.375));
  CHECK(g.center({11, 0, 0})[0] == doctest::Approx(1.375));
  CHECK(g.center({0, 0, 0})[2] == 0.0);
}

TEST_CASE("linear index round trip") {
  const GridSpec g = square_grid(3, 5, 0.5, -1.0);
  for (std::size_t lin = 0; lin < g.size(); ++lin) CHECK(g.linear(g.unravel(lin)) == lin);
  CHECK(g.stride(0) == 1);
  CHECK(g.stride(1) == 5);
  CHECK(g.stride(2) == 25);
  CHECK(g.half_index({2, 3, 4}) == HalfIndex{5, 7, 9});
}

TEST_CASE("single voxel boundary") {
  for (int d : {2, 3}) {
    const GridSpec g = square_grid(d, 3, 1.0, 0.0);
    VoxelSet vs(g);
    vs.set(Index{1, 1, d == 3 ? 1 : 0}, true);
    const auto s = boundary_samples(vs);
    REQUIRE(s.size() == static_cast<std::size_t>(2 * d));
    CHECK(boundary_face_count(vs) == s.size());
    CHECK(measure(vs) == 1.0);
    // Order: axis, then negative before positive.
    CHECK(s[0].axis == 0);
    CHECK(s[0].sign == -1);
    CHECK(s[0].point[0] == 1.0);
    CHECK(s[1].point[0] == 2.0);
    CHECK(s[0].lattice[0] == 2);
    CHECK(s[1].normal()[0] == 1.0);
  }
}

TEST_CASE("faces on the grid border count as boundary") {
  const GridSpec g = square_grid(2, 2, 1.0, 0.0);
  VoxelSet full(g, std::vector<std::uint8_t>(4, 1));
  CHECK(boundary_face_count(full) == 8);
  CHECK(touches_border(full));
  CHECK(full.is_full());
}

TEST_CASE("connected components sorted by size") {
  const GridSpec g = square_grid(2, 8, 1.0, 0.0);
  VoxelSet vs(g);
  vs.set(Index{0, 0, 0}, true);
  for (int i = 2; i < 6; ++i) vs.set(Index{i, 5, 0}, true);
  vs.set(Index{7, 7, 0}, true);
  vs.set(Index{6, 6, 0}, true);  // diagonal neighbour: separate component
  const auto comps = connected_components(vs);
  REQUIRE(comps.size() == 4);
  CHECK(comps[0].count() == 4);
  CHECK(comps[1].count() == 1);
  int n = 0;
  const auto labels = label_components(vs, &n);
  CHECK(n == 4);
  CHECK(labels[0] == 0);
  CHECK(labels[1] == -1);
}

TEST_CASE("component distance and diameter match brute force") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const int d = trial % 2 ? 3 : 2;
    const GridSpec g = square_grid(d, d == 2 ? 14 : 7, 0.5, -1.0);
    const VoxelSet a = random_set(g, rng, 0.05);
    const VoxelSet b = random_set(g, rng, 0.05);
    if (a.is_empty() || b.is_empty()) continue;
    CHECK(component_distance(a, b) == doctest::Approx(brute_distance(a, b)).epsilon(1e-12));
    CHECK(diameter(a) == doctest::Approx(
                             [&] {
                               double best = 0.0;
                               for (std::size_t i = 0; i < g.size(); ++i)
                                 for (std::size_t j = 0; j < g.size(); ++j)
                                   if (a[i] && a[j]) {
                                     const Point p = g.center(g.unravel(i)), q = g.center(g.unravel(j));
                                     double s = 0.0;
                                     for (int k = 0; k < 3; ++k) s += (p[k] - q[k]) * (p[k] - q[k]);
                                     best = std::max(best, std::sqrt(s));
                                   }
                               return best;
                             }())
                             .epsilon(1e-12));
  }
  const GridSpec g = square_grid(2, 4, 1.0, 0.0);
  CHECK_THROWS_AS(component_distance(VoxelSet(g), VoxelSet(g)), PreconditionError);
}

TEST_CASE("set algebra") {
  std::mt19937_64 rng(11);
  const GridSpec g = square_grid(2, 10, 1.0, 0.0);
  const VoxelSet a = random_set(g, rng), b = random_set(g, rng);
  const VoxelSet u = set_union(a, b), i = set_intersection(a, b), d = set_difference(a, b);
  CHECK(u.count() + i.count() == a.count() + b.count());
  CHECK(d.count() + i.count() == a.count());
  CHECK(symmetric_difference_count(a, b) == u.count() - i.count());
  CHECK(set_union(d, i) == a);
}

}  // TEST_SUITE
