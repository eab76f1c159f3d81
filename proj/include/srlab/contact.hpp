#pragma once

#include "srlab/groups.hpp"

namespace srlab {

struct TangentVector {
  GroupPoint base;
  double v1 = 0.0, v2 = 0.0, v3 = 0.0;
};

// Coefficients on the ordered frame (E1, E2, E3): alpha, beta on the two
// horizontal fields, rest on the complement direction. The complement is
// normalized so that theta(E3) = 1 in every group, hence rest == theta(v).
struct FrameCoeffs {
  double alpha = 0.0, beta = 0.0, rest = 0.0;
};

struct Frame {
  TangentVector e1, e2, e3;
};

// Contact forms in chart components:
//   Heisenberg:      dt + 2(x dy - y dx)
//   RotoTranslation: sin t dx - cos t dy
//   AffineAdditive:  dt/(2 lambda) - da
double contact_form(const GroupPoint& p, const TangentVector& v);
Eigen::Vector3d contact_covector(const GroupPoint& p);

// Frames:
//   Heisenberg:      X = dx + 2y dt,  Y = dy - 2x dt,      T = dt
//   RotoTranslation: X = cos t dx + sin t dy,  Y = dt,     N = sin t dx - cos t dy
//   AffineAdditive:  U = da + 2 lambda dt,  V = 2 lambda dlambda,  W = -da
// E1, E2 span the kernel of the contact form at every point.
Frame frame(const GroupPoint& p);

FrameCoeffs to_frame_coeffs(const TangentVector& v);
TangentVector from_frame_coeffs(const GroupPoint& p, const FrameCoeffs& c);

// Bracket of frame fields i, j (1-based indices into E1..E3) at p.
// lie_bracket uses hand-differentiated coefficient fields and is the
// authoritative path; lie_bracket_fd re-derives it with central differences
// of the frame components and exists to cross-check the transcription.
TangentVector lie_bracket(GroupId g, int i, int j, const GroupPoint& p);
TangentVector lie_bracket_fd(GroupId g, int i, int j, const GroupPoint& p,
                             double step = 1e-5);

// Max over frame fields E of |(DT_{p0})_p E_p - E_{T_{p0}(p)}| where T is the
// translation side the group's frame is invariant under: left translations
// for AffineAdditive and RotoTranslation. For the Heisenberg product twist
// 2*Im(conj(z_left) z_right) used here, the standard frame commutes with
// right translations, so the Heisenberg check uses that side.
double verify_left_invariance(GroupId g, const GroupPoint& p0, const GroupPoint& p);

}  // namespace srlab
