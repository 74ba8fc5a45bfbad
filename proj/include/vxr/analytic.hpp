#pragma once

namespace vxr {

/// Volume of the unit ball in R^d: pi^(d/2) / Gamma(d/2 + 1). omega_1 = 2.
double unit_ball_volume(int d);

/// |B_R(0) ∩ B_r(p)| with |p| = dist, in closed form (lens area for d = 2,
/// sum of two spherical caps for d = 3).
double exact_ball_ball_volume(int d, double R, double r, double dist);

/// Volume between two coaxial right cylinders of common height t2 + gamma
/// whose base radii are sqrt(r^2 - t2^2) and sqrt(r^2 - t1^2), t1 = t2 + 2 gamma.
struct SlabVolume {
  double exact = 0.0;
  /// Small-offset expansion 2 (d-1) omega_{d-1} r^(d-3) (t2 gamma + gamma^2)(t2 + gamma).
  double asymptotic = 0.0;
};

/// Requires t2, gamma >= 0 and t2 + 2 gamma <= r; throws ParameterError otherwise.
SlabVolume annular_slab_volume(double r, double t2, double gamma, int d);

}  // namespace vxr
