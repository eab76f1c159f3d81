#pragma once

#include <Eigen/Core>

#include <stdexcept>
#include <string>
#include <string_view>

namespace srlab {

// The three model groups. Chart coordinates (c1, c2, c3):
//   Heisenberg:      (x, y, t)
//   RotoTranslation: (x, y, t), angle t kept on the universal cover (never
//                    reduced mod 2*pi)
//   AffineAdditive:  (a, lambda, t), lambda > 0
enum class GroupId { Heisenberg, RotoTranslation, AffineAdditive };

std::string_view group_name(GroupId g);
GroupId parse_group(std::string_view s);

struct GroupPoint {
  GroupId group = GroupId::Heisenberg;
  double c1 = 0.0, c2 = 0.0, c3 = 0.0;
};

// Throws std::invalid_argument on non-finite coordinates or lambda <= 0.
void validate_point(const GroupPoint& p);

bool same_point(const GroupPoint& p, const GroupPoint& q, double tol = 0.0);

GroupPoint identity(GroupId g);

// Group product lhs * rhs. Mixing groups is a hard error.
GroupPoint multiply(const GroupPoint& lhs, const GroupPoint& rhs);
GroupPoint inverse(const GroupPoint& p);
GroupPoint left_translate(const GroupPoint& p0, const GroupPoint& p);

// Chart derivative of p -> multiply(p0, p).
Eigen::Matrix3d left_translation_jacobian(const GroupPoint& p0, const GroupPoint& p);

// Chart derivative of p -> multiply(p, p0). Needed where a frame is invariant
// under the opposite translation side (see contact.hpp).
Eigen::Matrix3d right_translation_jacobian(const GroupPoint& p0, const GroupPoint& p);

}  // namespace srlab
