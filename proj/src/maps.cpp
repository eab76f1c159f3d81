#include "srlab/maps.hpp"

#include "srlab/contact.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <limits>

namespace srlab {

GroupPoint map_g(const GroupPoint& p) {
  validate_point(p);
  if (p.group != GroupId::Heisenberg)
    throw std::invalid_argument("map_g expects a Heisenberg point");
  const double x = p.c1, y = p.c2, t = p.c3;
  return {GroupId::AffineAdditive, x * std::exp(-y), std::exp(y),
          0.5 * (t - 2.0 * x * y + 4.0 * x)};
}

GroupPoint map_g_inverse(const GroupPoint& p) {
  validate_point(p);
  if (p.group != GroupId::AffineAdditive)
    throw std::invalid_argument("map_g_inverse expects an affine-additive point");
  const double a = p.c1, l = p.c2, t = p.c3;
  const double lg = std::log(l);
  return {GroupId::Heisenberg, a * l, lg, 2.0 * t + 2.0 * a * l * (lg - 2.0)};
}

GroupPoint map_f(const GroupPoint& p) {
  validate_point(p);
  if (p.group != GroupId::AffineAdditive)
    throw std::invalid_argument("map_f expects an affine-additive point");
  const double a = p.c1, l = p.c2, t = p.c3;
  const double s = std::sqrt(l);
  return {GroupId::Heisenberg, -s * std::cos(a), s * std::sin(a), t};
}

namespace {

Eigen::Matrix3d jacobian_g(const GroupPoint& p) {
  const double x = p.c1, y = p.c2;
  const double ey = std::exp(y), emy = std::exp(-y);
  Eigen::Matrix3d J;
  J << emy, -x * emy, 0.0,
       0.0, ey, 0.0,
       2.0 - y, -x, 0.5;
  return J;
}

Eigen::Matrix3d jacobian_f(const GroupPoint& p) {
  const double a = p.c1, l = p.c2;
  const double s = std::sqrt(l);
  Eigen::Matrix3d J;
  J << s * std::sin(a), -std::cos(a) / (2.0 * s), 0.0,
       s * std::cos(a), std::sin(a) / (2.0 * s), 0.0,
       0.0, 0.0, 1.0;
  return J;
}

}  // namespace

const SmoothMap& contactomorphism_g() {
  static const SmoothMap g{GroupId::Heisenberg, GroupId::AffineAdditive, "g",
                           map_g, map_g_inverse, jacobian_g};
  return g;
}

const SmoothMap& quasiregular_f() {
  static const SmoothMap f{GroupId::AffineAdditive, GroupId::Heisenberg, "f",
                           map_f, nullptr, jacobian_f};
  return f;
}

SmoothMap identity_map(GroupId g) {
  SmoothMap m;
  m.source = m.target = g;
  m.name = "id";
  m.forward = [](const GroupPoint& p) { return p; };
  m.inverse = m.forward;
  m.jacobian = [](const GroupPoint&) { return Eigen::Matrix3d::Identity(); };
  return m;
}

PullbackFit pullback_residual(const SmoothMap& m, const GroupPoint& p) {
  validate_point(p);
  if (p.group != m.source) throw std::invalid_argument("point not in map source");
  const GroupPoint image = m.forward(p);
  const Eigen::Vector3d pulled = m.jacobian(p).transpose() * contact_covector(image);
  const Eigen::Vector3d theta = contact_covector(p);
  PullbackFit fit;
  fit.factor = pulled.dot(theta) / theta.squaredNorm();
  fit.residual = (pulled - fit.factor * theta).cwiseAbs().maxCoeff();
  return fit;
}

Eigen::Matrix2d pushforward_frame_coeffs(const SmoothMap& m, const GroupPoint& p) {
  validate_point(p);
  if (p.group != m.source) throw std::invalid_argument("point not in map source");
  const GroupPoint image = m.forward(p);
  const Eigen::Matrix3d J = m.jacobian(p);
  const Frame fr = frame(p);
  Eigen::Matrix2d M;
  const TangentVector* horiz[2] = {&fr.e1, &fr.e2};
  for (int col = 0; col < 2; ++col) {
    const Eigen::Vector3d v{horiz[col]->v1, horiz[col]->v2, horiz[col]->v3};
    const Eigen::Vector3d w = J * v;
    const FrameCoeffs fc = to_frame_coeffs({image, w[0], w[1], w[2]});
    M(0, col) = fc.alpha;
    M(1, col) = fc.beta;
  }
  return M;
}

double dilatation(const SmoothMap& m, const GroupPoint& p) {
  const Eigen::Matrix2d M = pushforward_frame_coeffs(m, p);
  const Eigen::JacobiSVD<Eigen::Matrix2d> svd(M);
  const double smin = svd.singularValues()[1];
  if (!(smin > 0.0)) return std::numeric_limits<double>::infinity();
  return svd.singularValues()[0] / smin;
}

SampledCurve map_curve(const SmoothMap& m, const SampledCurve& c) {
  validate_curve(c);
  if (c.group != m.source) throw std::invalid_argument("curve not in map source");
  SampledCurve out;
  out.group = m.target;
  out.params = c.params;
  out.points.reserve(c.points.size());
  for (const auto& p : c.points) out.points.push_back(m.forward(p));
  return out;
}

}  // namespace srlab
