#include "srlab/contact.hpp"

#include <cmath>

namespace srlab {

namespace {

void require_base(const GroupPoint& p, const TangentVector& v) {
  if (v.base.group != p.group)
    throw std::invalid_argument("tangent vector based in a different group");
  if (!same_point(v.base, p))
    throw std::invalid_argument("tangent vector based at a different point");
}

Eigen::Vector3d as_vec(const TangentVector& v) {
  return {v.v1, v.v2, v.v3};
}

TangentVector as_tangent(const GroupPoint& p, const Eigen::Vector3d& v) {
  return {p, v[0], v[1], v[2]};
}

}  // namespace

Eigen::Vector3d contact_covector(const GroupPoint& p) {
  validate_point(p);
  switch (p.group) {
    case GroupId::Heisenberg:
      return {-2.0 * p.c2, 2.0 * p.c1, 1.0};
    case GroupId::RotoTranslation:
      return {std::sin(p.c3), -std::cos(p.c3), 0.0};
    case GroupId::AffineAdditive:
      return {-1.0, 0.0, 1.0 / (2.0 * p.c2)};
  }
  throw std::logic_error("unreachable group id");
}

double contact_form(const GroupPoint& p, const TangentVector& v) {
  require_base(p, v);
  return contact_covector(p).dot(as_vec(v));
}

Frame frame(const GroupPoint& p) {
  validate_point(p);
  switch (p.group) {
    case GroupId::Heisenberg:
      return {{p, 1.0, 0.0, 2.0 * p.c2},
              {p, 0.0, 1.0, -2.0 * p.c1},
              {p, 0.0, 0.0, 1.0}};
    case GroupId::RotoTranslation: {
      const double c = std::cos(p.c3), s = std::sin(p.c3);
      return {{p, c, s, 0.0}, {p, 0.0, 0.0, 1.0}, {p, s, -c, 0.0}};
    }
    case GroupId::AffineAdditive:
      return {{p, 1.0, 0.0, 2.0 * p.c2},
              {p, 0.0, 2.0 * p.c2, 0.0},
              {p, -1.0, 0.0, 0.0}};
  }
  throw std::logic_error("unreachable group id");
}

FrameCoeffs to_frame_coeffs(const TangentVector& v) {
  const GroupPoint& p = v.base;
  validate_point(p);
  switch (p.group) {
    case GroupId::Heisenberg:
      return {v.v1, v.v2, v.v3 - 2.0 * p.c2 * v.v1 + 2.0 * p.c1 * v.v2};
    case GroupId::RotoTranslation: {
      const double c = std::cos(p.c3), s = std::sin(p.c3);
      return {c * v.v1 + s * v.v2, v.v3, s * v.v1 - c * v.v2};
    }
    case GroupId::AffineAdditive: {
      const double inv2l = 1.0 / (2.0 * p.c2);
      const double alpha = v.v3 * inv2l;
      return {alpha, v.v2 * inv2l, alpha - v.v1};
    }
  }
  throw std::logic_error("unreachable group id");
}

TangentVector from_frame_coeffs(const GroupPoint& p, const FrameCoeffs& c) {
  const Frame f = frame(p);
  const Eigen::Vector3d v =
      c.alpha * as_vec(f.e1) + c.beta * as_vec(f.e2) + c.rest * as_vec(f.e3);
  return as_tangent(p, v);
}

namespace {

Eigen::Vector3d frame_field(GroupId g, int k, const GroupPoint& p) {
  const Frame f = frame(p);
  switch (k) {
    case 1: return as_vec(f.e1);
    case 2: return as_vec(f.e2);
    case 3: return as_vec(f.e3);
    default: throw std::invalid_argument("frame index must be 1, 2 or 3");
  }
  (void)g;
}

}  // namespace

TangentVector lie_bracket(GroupId g, int i, int j, const GroupPoint& p) {
  validate_point(p);
  if (i < 1 || i > 3 || j < 1 || j > 3)
    throw std::invalid_argument("frame index must be 1, 2 or 3");
  if (i == j) return {p, 0.0, 0.0, 0.0};
  if (i > j) {
    TangentVector b = lie_bracket(g, j, i, p);
    return {p, -b.v1, -b.v2, -b.v3};
  }
  // i < j from here on
  switch (g) {
    case GroupId::Heisenberg:
      if (i == 1 && j == 2) return {p, 0.0, 0.0, -4.0};
      return {p, 0.0, 0.0, 0.0};  // [X,T] = [Y,T] = 0
    case GroupId::RotoTranslation: {
      const double c = std::cos(p.c3), s = std::sin(p.c3);
      if (i == 1 && j == 2) return {p, s, -c, 0.0};   // [X,Y] = N
      if (i == 2 && j == 3) return {p, c, s, 0.0};    // [Y,N] = X
      return {p, 0.0, 0.0, 0.0};                      // [X,N] = 0
    }
    case GroupId::AffineAdditive:
      if (i == 1 && j == 2) return {p, 0.0, 0.0, -4.0 * p.c2};  // -2(U+W)
      return {p, 0.0, 0.0, 0.0};  // [U,W] = [V,W] = 0
  }
  throw std::logic_error("unreachable group id");
}

TangentVector lie_bracket_fd(GroupId g, int i, int j, const GroupPoint& p,
                             double step) {
  validate_point(p);
  // [E_i, E_j] = (D E_j) E_i - (D E_i) E_j with coordinate Jacobians of the
  // frame component fields, central differences.
  auto jac = [&](int k) {
    Eigen::Matrix3d J;
    for (int c = 0; c < 3; ++c) {
      GroupPoint pp = p, pm = p;
      double* fp = (c == 0) ? &pp.c1 : (c == 1) ? &pp.c2 : &pp.c3;
      double* fm = (c == 0) ? &pm.c1 : (c == 1) ? &pm.c2 : &pm.c3;
      *fp += step;
      *fm -= step;
      J.col(c) = (frame_field(g, k, pp) - frame_field(g, k, pm)) / (2.0 * step);
    }
    return J;
  };
  const Eigen::Vector3d ei = frame_field(g, i, p);
  const Eigen::Vector3d ej = frame_field(g, j, p);
  const Eigen::Vector3d b = jac(j) * ei - jac(i) * ej;
  return as_tangent(p, b);
}

double verify_left_invariance(GroupId g, const GroupPoint& p0, const GroupPoint& p) {
  validate_point(p0);
  validate_point(p);
  if (p0.group != g || p.group != g)
    throw std::invalid_argument("points belong to a different group");

  const bool right_side = (g == GroupId::Heisenberg);
  const GroupPoint q = right_side ? multiply(p, p0) : multiply(p0, p);
  const Eigen::Matrix3d J = right_side ? right_translation_jacobian(p0, p)
                                       : left_translation_jacobian(p0, p);
  const Frame fp = frame(p);
  const Frame fq = frame(q);
  double res = 0.0;
  const TangentVector* src[3] = {&fp.e1, &fp.e2, &fp.e3};
  const TangentVector* dst[3] = {&fq.e1, &fq.e2, &fq.e3};
  for (int k = 0; k < 3; ++k) {
    const Eigen::Vector3d diff = J * as_vec(*src[k]) - as_vec(*dst[k]);
    res = std::max(res, diff.cwiseAbs().maxCoeff());
  }
  return res;
}

}  // namespace srlab
