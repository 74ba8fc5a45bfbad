#include <doctest.h>

#include <cmath>
#include <numbers>

#include "support.hpp"
#include "vxr/error.hpp"
#include "vxr/report.hpp"
#include "vxr/rigidity.hpp"

using namespace vxt;

namespace {

/// |square Δ disk| / |square| for the side-2 square and the centred disk of
/// equal area: the disk pokes out through four circular segments.
double square_vs_disk_residual() {
  const double R = 2.0 / std::sqrt(std::numbers::pi);
  const double segment = R * R * std::acos(1.0 / R) - std::sqrt(R * R - 1.0);
  return 2.0 * 4.0 * segment / 4.0;
}

Point centroid(const VoxelSet& vs) {
  const GridSpec& g = vs.grid();
  Point c{0, 0, 0};
  double n = 0;
  for (std::size_t lin = 0; lin < g.size(); ++lin)
    if (vs[lin]) {
      const Point p = g.center(g.unravel(lin));
      for (int k = 0; k < 3; ++k) c[k] += p[k];
      n += 1;
    }
  for (auto& x : c) x /= n;
  return c;
}

}  // namespace

TEST_SUITE("rigidity") {

TEST_CASE("fit a rasterized disk") {
  const GridSpec g = GridSpec::centered(2, 1.5, 1.0 / 256);
  const BallFit f = fit_ball(disk(0.3, 0.2, 1.0, g));
  CHECK(std::abs(f.center[0] - 0.3) <= g.spacing);
  CHECK(std::abs(f.center[1] - 0.2) <= g.spacing);
  CHECK(std::abs(f.radius - 1.0) <= 2 * g.spacing);
  CHECK(f.residual <= 0.02);
}

TEST_CASE("fit a single voxel") {
  const GridSpec g = square_grid(3, 5, 0.5, 0.0);
  VoxelSet vs(g);
  vs.set(Index{2, 2, 2}, true);
  const BallFit f = fit_ball(vs);
  CHECK(f.radius == doctest::Approx(0.5 * std::cbrt(3.0 / (4.0 * std::numbers::pi))));
  CHECK(f.center == Point{1.25, 1.25, 1.25});
  CHECK(f.residual >= 0.0);
  CHECK(f.residual <= 2.0);
  CHECK_THROWS_AS(fit_ball(VoxelSet(g)), PreconditionError);
}

TEST_CASE("a square is not a ball") {
  const GridSpec g = GridSpec::centered(2, 1.5, 1.0 / 256);
  const BallFit f = fit_ball(box2(-1, -1, 1, 1, g));
  CHECK(f.residual >= 0.10);
  CHECK(f.residual == doctest::Approx(square_vs_disk_residual()).epsilon(0.02));
}

TEST_CASE("symmetry planes") {
  const GridSpec g = GridSpec::centered(2, 1.5, 1.0 / 64);
  SUBCASE("disk: two planes through the centroid") {
    const VoxelSet d = disk(0.23, -0.11, 1.0, g);
    const auto planes = detect_symmetry_planes(d);
    REQUIRE(planes.size() == 2);
    const Point c = centroid(d);
    const double dx = planes[0].offset(g) - c[0], dy = planes[1].offset(g) - c[1];
    CHECK(std::sqrt(dx * dx + dy * dy) <= std::sqrt(2.0) * g.spacing);
  }
  SUBCASE("square") {
    const auto planes = detect_symmetry_planes(box2(-1, -1, 1, 1, g));
    REQUIRE(planes.size() == 2);
    CHECK(planes[0].offset(g) == 0.0);
    CHECK(planes[1].offset(g) == 0.0);
  }
  SUBCASE("L-shaped polyomino") {
    const VoxelSet l = set_union(box2(-1, -1, 1, -0.3, g), box2(-1, -1, -0.3, 1, g));
    CHECK(detect_symmetry_planes(l).size() < 2);
  }
}

TEST_CASE("extraction examples") {
  SUBCASE("two disks") {
    const GridSpec g = GridSpec::make(2, std::array<int, 2>{768, 384}, 1.0 / 128, std::array<double, 2>{-1.5, -1.5});
    const VoxelSet vs = set_union(disk(0, 0, 1.0, g), disk(3, 0, 1.0, g));
    const DecompositionResult r = extract_balls(vs, 0.5);
    REQUIRE(r.balls.size() == 2);
    for (const BallFit& b : r.balls) CHECK(std::abs(b.radius - 1.0) <= 2 * g.spacing);
    CHECK(r.min_pairwise_distance == doctest::Approx(1.0).epsilon(0.02));
    CHECK(r.residual_measure <= 0.01 * r.input_measure);
    CHECK(r.succeeded());
    CHECK(r.all_radii_equal);
    CHECK(r.pairwise_distance_ge_r);
  }
  SUBCASE("single disk") {
    const GridSpec g = GridSpec::centered(2, 1.5, 1.0 / 128);
    const DecompositionResult r = extract_balls(disk(0, 0, 1.0, g), 0.5);
    CHECK(r.balls.size() == 1);
    CHECK(r.residual_measure == 0.0);
    CHECK(r.isolation[0] == INFINITY);
  }
  SUBCASE("square") {
    const GridSpec g = GridSpec::centered(2, 1.5, 1.0 / 128);
    const VoxelSet sq = box2(-1, -1, 1, 1, g);
    const DecompositionResult r = extract_balls(sq, 0.5);
    CHECK(r.balls.empty());
    CHECK(r.residual_set == sq);
    CHECK_FALSE(r.succeeded());
  }
  SUBCASE("disks closer than r stay in the residual") {
    const GridSpec g = GridSpec::make(2, std::array<int, 2>{640, 320}, 1.0 / 128, std::array<double, 2>{-1.5, -1.25});
    const VoxelSet vs = set_union(disk(0, 0, 1.0, g), disk(2.3, 0, 1.0, g));
    const DecompositionResult r = extract_balls(vs, 0.5);
    CHECK(r.balls.empty());
    CHECK(r.residual_measure == measure(vs));
  }
}

TEST_CASE("extraction accounting") {
  const GridSpec g = GridSpec::make(2, std::array<int, 2>{512, 256}, 1.0 / 64, std::array<double, 2>{-2.0, -2.0});
  const VoxelSet vs = set_union(set_union(disk(-0.5, 0, 1.0, g), disk(3.0, 0, 0.6, g)), box2(2.5, -1.8, 3.5, -1.2, g));
  const DecompositionResult r = extract_balls(vs, 0.3);
  double total = r.residual_measure;
  for (std::size_t i = 0; i < r.masks.size(); ++i) {
    total += measure(r.masks[i]);
    for (std::size_t j = i + 1; j < r.masks.size(); ++j) CHECK(set_intersection(r.masks[i], r.masks[j]).is_empty());
  }
  CHECK(total == measure(vs));
  CHECK(r.balls.size() == 2);
  CHECK_FALSE(r.all_radii_equal);
  CHECK(r.residual_measure == doctest::Approx(1.0 * 0.6).epsilon(0.05));
  CHECK_THROWS_AS(extract_balls(vs, 0.0), ParameterError);
}

TEST_CASE("rigidity verdicts") {
  SUBCASE("disk") {
    const GridSpec g = GridSpec::centered(2, 1.5, 1.0 / 128);
    RigidityTolerances tols;
    tols.criticality = 0.03;  // spread is about 1.3 h / r
    const RigidityReport rep = rigidity_verdict(disk(0, 0, 1.0, g), 0.5, tols);
    CHECK(rep.criticality.critical);
    CHECK(rep.degeneracy.score >= 0.1);
    REQUIRE(rep.decomposition);
    CHECK(rep.decomposition->balls.size() == 1);
    CHECK(rep.verdict == Verdict::theorem_consistent);
  }
  SUBCASE("small disk, large radius: degenerate") {
    const GridSpec g = GridSpec::centered(2, 1.5, 1.0 / 64);
    const RigidityReport rep = rigidity_verdict(disk(0, 0, 1.0, g), 3.0);
    CHECK(rep.degeneracy.score == 0.0);
    CHECK(rep.verdict == Verdict::hypothesis_not_met);
    CHECK_FALSE(rep.decomposition);
  }
  SUBCASE("square") {
    const GridSpec g = GridSpec::centered(2, 1.5, 1.0 / 128);
    const RigidityReport rep = rigidity_verdict(box2(-1, -1, 1, 1, g), 0.5);
    CHECK_FALSE(rep.criticality.critical);
    CHECK(rep.verdict == Verdict::hypothesis_not_met);
  }
  SUBCASE("determinism") {
    const GridSpec g = GridSpec::centered(2, 1.5, 1.0 / 64);
    const VoxelSet d = disk(0.1, 0, 0.9, g);
    const std::string a = report::dump(report::to_json(rigidity_verdict(d, 0.4), 2));
    const std::string b = report::dump(report::to_json(rigidity_verdict(d, 0.4), 2));
    CHECK(a == b);
  }
  const GridSpec g = square_grid(2, 4, 1.0, 0.0);
  CHECK_THROWS_AS(rigidity_verdict(VoxelSet(g), 0.5), PreconditionError);
  CHECK(to_string(Verdict::inconsistent) == "INCONSISTENT");
}

}  // TEST_SUITE
