#include "srlab/groups.hpp"

#include <cmath>

namespace srlab {

std::string_view group_name(GroupId g) {
  switch (g) {
    case GroupId::Heisenberg: return "heisenberg";
    case GroupId::RotoTranslation: return "rototranslation";
    case GroupId::AffineAdditive: return "affineadditive";
  }
  return "unknown";
}

GroupId parse_group(std::string_view s) {
  if (s == "h" || s == "heis" || s == "heisenberg") return GroupId::Heisenberg;
  if (s == "rt" || s == "roto" || s == "rototranslation" || s == "roto-translation")
    return GroupId::RotoTranslation;
  if (s == "aa" || s == "affineadditive" || s == "affine-additive")
    return GroupId::AffineAdditive;
  throw std::invalid_argument("unknown group: " + std::string(s));
}

void validate_point(const GroupPoint& p) {
  if (!(std::isfinite(p.c1) && std::isfinite(p.c2) && std::isfinite(p.c3)))
    throw std::invalid_argument("group point has non-finite coordinates");
  if (p.group == GroupId::AffineAdditive && !(p.c2 > 0.0))
    throw std::invalid_argument("affine-additive point needs lambda > 0");
}

bool same_point(const GroupPoint& p, const GroupPoint& q, double tol) {
  if (p.group != q.group) return false;
  return std::abs(p.c1 - q.c1) <= tol && std::abs(p.c2 - q.c2) <= tol &&
         std::abs(p.c3 - q.c3) <= tol;
}

namespace {

void require_same_group(const GroupPoint& p, const GroupPoint& q) {
  if (p.group != q.group)
    throw std::invalid_argument("operands belong to different groups");
}

}  // namespace

GroupPoint identity(GroupId g) {
  if (g == GroupId::AffineAdditive) return {g, 0.0, 1.0, 0.0};
  return {g, 0.0, 0.0, 0.0};
}

GroupPoint multiply(const GroupPoint& lhs, const GroupPoint& rhs) {
  require_same_group(lhs, rhs);
  switch (lhs.group) {
    case GroupId::Heisenberg: {
      // (z' + z, t' + t + 2 Im(conj(z') z))
      const double im = lhs.c1 * rhs.c2 - lhs.c2 * rhs.c1;
      return {lhs.group, lhs.c1 + rhs.c1, lhs.c2 + rhs.c2, lhs.c3 + rhs.c3 + 2.0 * im};
    }
    case GroupId::RotoTranslation: {
      // (e^{i t'} z + z', t' + t)
      const double c = std::cos(lhs.c3), s = std::sin(lhs.c3);
      return {lhs.group, c * rhs.c1 - s * rhs.c2 + lhs.c1,
              s * rhs.c1 + c * rhs.c2 + lhs.c2, lhs.c3 + rhs.c3};
    }
    case GroupId::AffineAdditive:
      // (a' + a, l' l, l' t + t')
      return {lhs.group, lhs.c1 + rhs.c1, lhs.c2 * rhs.c2, lhs.c2 * rhs.c3 + lhs.c3};
  }
  throw std::logic_error("unreachable group id");
}

GroupPoint inverse(const GroupPoint& p) {
  switch (p.group) {
    case GroupId::Heisenberg:
      return {p.group, -p.c1, -p.c2, -p.c3};
    case GroupId::RotoTranslation: {
      // (-e^{-i t} z, -t)
      const double c = std::cos(p.c3), s = std::sin(p.c3);
      return {p.group, -(c * p.c1 + s * p.c2), -(c * p.c2 - s * p.c1), -p.c3};
    }
    case GroupId::AffineAdditive:
      return {p.group, -p.c1, 1.0 / p.c2, -p.c3 / p.c2};
  }
  throw std::logic_error("unreachable group id");
}

GroupPoint left_translate(const GroupPoint& p0, const GroupPoint& p) {
  return multiply(p0, p);
}

Eigen::Matrix3d left_translation_jacobian(const GroupPoint& p0, const GroupPoint& p) {
  require_same_group(p0, p);
  Eigen::Matrix3d J = Eigen::Matrix3d::Identity();
  switch (p0.group) {
    case GroupId::Heisenberg:
      J(2, 0) = -2.0 * p0.c2;
      J(2, 1) = 2.0 * p0.c1;
      break;
    case GroupId::RotoTranslation: {
      const double c = std::cos(p0.c3), s = std::sin(p0.c3);
      J(0, 0) = c;
      J(0, 1) = -s;
      J(1, 0) = s;
      J(1, 1) = c;
      break;
    }
    case GroupId::AffineAdditive:
      J(1, 1) = p0.c2;
      J(2, 2) = p0.c2;
      break;
  }
  return J;
}

Eigen::Matrix3d right_translation_jacobian(const GroupPoint& p0, const GroupPoint& p) {
  require_same_group(p0, p);
  Eigen::Matrix3d J = Eigen::Matrix3d::Identity();
  switch (p0.group) {
    case GroupId::Heisenberg:
      J(2, 0) = 2.0 * p0.c2;
      J(2, 1) = -2.0 * p0.c1;
      break;
    case GroupId::RotoTranslation: {
      // z_out = e^{i t} z0 + z depends on the moving angle t
      const double c = std::cos(p.c3), s = std::sin(p.c3);
      J(0, 2) = -s * p0.c1 - c * p0.c2;
      J(1, 2) = c * p0.c1 - s * p0.c2;
      break;
    }
    case GroupId::AffineAdditive:
      // (a + a0, l l0, l t0 + t)
      J(1, 1) = p0.c2;
      J(2, 1) = p0.c3;
      break;
  }
  return J;
}

}  // namespace srlab
