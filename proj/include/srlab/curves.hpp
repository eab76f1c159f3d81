#pragma once

#include "srlab/groups.hpp"

#include <iosfwd>
#include <vector>

namespace srlab {

// Piecewise-linear (in chart coordinates) sample of a curve. params must be
// strictly increasing inside [0, 1] and at least two samples are required.
struct SampledCurve {
  GroupId group = GroupId::Heisenberg;
  std::vector<double> params;
  std::vector<GroupPoint> points;
};

void validate_curve(const SampledCurve& c);

// Point of the hyperbolic right half plane {xi > 0} with metric |dz|/(2 xi).
struct HyperbolicPoint {
  double xi = 1.0, eta = 0.0;
};

// Max over segments of |theta(chord difference quotient)| evaluated at the
// chart midpoint. Zero within tolerance iff the sample is numerically
// horizontal.
double horizontality_defect(const SampledCurve& c);

struct LengthOptions {
  double warn_defect = 1e-6;
  double max_defect = 1e-2;   // above this the curve is rejected
  bool* warned = nullptr;
};

// Midpoint rule on chords. All three horizontal speeds are 1-homogeneous in
// the velocity, so the parameterization drops out and only the sample points
// matter. Throws std::domain_error when the horizontality defect exceeds
// max_defect.
double horizontal_length(const SampledCurve& c, const LengthOptions& opt = {});

// Exact length of the chart polyline for AffineAdditive curves: per segment
// the horizontal speed integrates in closed form,
//   |chord| * log(l1/l0) / (2 (l1 - l0)).
// Used where a certified upper bound is needed (midpoint sums can undershoot
// the true polyline length by O(mesh^2)).
double horizontal_length_exact_aa(const SampledCurve& c);

// (lambda, t) projection of an AffineAdditive curve.
std::vector<HyperbolicPoint> project(const SampledCurve& c);

// Horizontal lift of a half-plane curve: adot = tdot/(2 lambda), accumulated
// with the trapezoid rule; a(0) = a0. Uniform parameters when none given.
SampledCurve horizontal_lift(const std::vector<HyperbolicPoint>& base, double a0);
SampledCurve horizontal_lift(const std::vector<double>& params,
                             const std::vector<HyperbolicPoint>& base, double a0);

double hyperbolic_distance(const HyperbolicPoint& p, const HyperbolicPoint& q);

// Midpoint-rule length of a half-plane polyline; agrees with
// horizontal_length of any lift of the same samples.
double hyperbolic_polyline_length(const std::vector<HyperbolicPoint>& pts);

// Geodesics of the half plane: rays {eta = const} and circular arcs centered
// on the boundary {xi = 0}.
struct GeodesicArc {
  bool radial = true;
  double center = 0.0, radius = 0.0;  // arc case
  double th0 = 0.0, th1 = 0.0;        // (xi, eta) = (r sin th, c + r cos th)
};
GeodesicArc hyperbolic_geodesic(const HyperbolicPoint& p, const HyperbolicPoint& q);
std::vector<HyperbolicPoint> sample_geodesic(const HyperbolicPoint& p,
                                             const HyperbolicPoint& q, int segments);

// Value of int dt/(2 lambda) along the geodesic from p to q; the a-coordinate
// a lift picks up. Closed form: 0 on rays, (th0 - th1)/2 on arcs.
double geodesic_lift_holonomy(const HyperbolicPoint& p, const HyperbolicPoint& q);

// Curve exchange format: CSV with header "s,c1,c2,c3", one curve per file,
// group tag supplied out of band.
void write_curve_csv(std::ostream& os, const SampledCurve& c);
SampledCurve read_curve_csv(std::istream& is, GroupId g);

}  // namespace srlab
