#pragma once

#include "srlab/curves.hpp"

#include <functional>
#include <string>

namespace srlab {

struct SmoothMap {
  GroupId source = GroupId::Heisenberg;
  GroupId target = GroupId::AffineAdditive;
  std::string name;
  std::function<GroupPoint(const GroupPoint&)> forward;
  std::function<GroupPoint(const GroupPoint&)> inverse;  // may be empty
  std::function<Eigen::Matrix3d(const GroupPoint&)> jacobian;
};

// The global contactomorphism Heisenberg -> AffineAdditive,
//   g(x, y, t) = (x e^{-y}, e^{y}, (t - 2xy + 4x)/2),
// its inverse g^{-1}(a, l, t) = (a l, log l, 2t + 2 a l (log l - 2)), and the
// 1-quasiregular immersion AffineAdditive -> Heisenberg,
//   f(a, l, t) = (-sqrt(l) cos a, sqrt(l) sin a, t).
GroupPoint map_g(const GroupPoint& p);
GroupPoint map_g_inverse(const GroupPoint& p);
GroupPoint map_f(const GroupPoint& p);

const SmoothMap& contactomorphism_g();
const SmoothMap& quasiregular_f();
SmoothMap identity_map(GroupId g);

// Least-squares fit of (Dm)^T theta_target against the source contact form:
// factor minimizing |pullback - factor * theta_source|, residual = post-fit
// sup norm. Contact maps have residual ~ 0; g has factor 1/(4 e^y), f has 2l.
struct PullbackFit {
  double factor = 0.0;
  double residual = 0.0;
};
PullbackFit pullback_residual(const SmoothMap& m, const GroupPoint& p);

// Matrix of the horizontal differential in the orthonormal frames: columns
// are the (alpha, beta) coefficients of Dm E1 and Dm E2 at m(p).
Eigen::Matrix2d pushforward_frame_coeffs(const SmoothMap& m, const GroupPoint& p);

// Ratio of singular values of the horizontal differential; +inf when
// singular.
double dilatation(const SmoothMap& m, const GroupPoint& p);

SampledCurve map_curve(const SmoothMap& m, const SampledCurve& c);

}  // namespace srlab
