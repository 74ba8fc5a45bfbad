#include "vxr/analytic.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "vxr/error.hpp"

namespace vxr {

double unit_ball_volume(int d) {
  if (d < 1) throw ParameterError("unit_ball_volume: dimension must be >= 1");
  return std::pow(std::numbers::pi, 0.5 * d) / std::tgamma(0.5 * d + 1.0);
}

double exact_ball_ball_volume(int d, double R, double r, double dist) {
  if (d != 2 && d != 3) throw ParameterError("exact_ball_ball_volume: d must be 2 or 3");
  if (!(R > 0.0) || !(r > 0.0)) throw ParameterError("exact_ball_ball_volume: radii must be > 0");
  if (!(dist >= 0.0)) throw ParameterError("exact_ball_ball_volume: dist must be >= 0");
  if (dist >= R + r) return 0.0;
  const double small = std::min(R, r);
  if (dist <= std::abs(R - r)) return unit_ball_volume(d) * std::pow(small, d);
  if (d == 2) {
    // Two circular segments.
    const double a1 = std::acos(std::clamp((dist * dist + r * r - R * R) / (2.0 * dist * r), -1.0, 1.0));
    const double a2 = std::acos(std::clamp((dist * dist + R * R - r * r) / (2.0 * dist * R), -1.0, 1.0));
    const double k = (-dist + r + R) * (dist + r - R) * (dist - r + R) * (dist + r + R);
    return r * r * a1 + R * R * a2 - 0.5 * std::sqrt(std::max(0.0, k));
  }
  const double s = R + r - dist;
  return std::numbers::pi * s * s *
         (dist * dist + 2.0 * dist * r - 3.0 * r * r + 2.0 * dist * R + 6.0 * r * R - 3.0 * R * R) /
         (12.0 * dist);
}

SlabVolume annular_slab_volume(double r, double t2, double gamma, int d) {
  if (d < 2) throw ParameterError("annular_slab_volume: d must be >= 2");
  if (!(r > 0.0)) throw ParameterError("annular_slab_volume: r must be > 0");
  if (!(t2 >= 0.0) || !(gamma >= 0.0))
    throw ParameterError("annular_slab_volume: t2 and gamma must be >= 0");
  const double t1 = t2 + 2.0 * gamma;
  if (t1 > r)
    throw ParameterError("annular_slab_volume: t2 + 2*gamma = " + std::to_string(t1) +
                         " exceeds r = " + std::to_string(r));
  const double w = unit_ball_volume(d - 1);
  const double e = 0.5 * (d - 1);
  const double height = t2 + gamma;
  SlabVolume v;
  v.exact = w * (std::pow(r * r - t2 * t2, e) - std::pow(std::max(0.0, r * r - t1 * t1), e)) * height;
  v.asymptotic = 2.0 * (d - 1) * w * std::pow(r, d - 3) * (t2 * gamma + gamma * gamma) * height;
  return v;
}

}  // namespace vxr
