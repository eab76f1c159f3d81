#pragma once

#include "srlab/groups.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace srlab {

// Haar density against chart Lebesgue measure: 1 for Heisenberg and
// RotoTranslation, 1/lambda^2 for AffineAdditive.
double haar_density(GroupId g, const GroupPoint& p);

struct McConfig {
  long samples = 100000;
  std::uint64_t seed = 1;
  double target_stderr = 0.0;  // 0 disables the check
};

// Monte-Carlo ball volume bracket. Membership uses the closed-form CC
// bracket: vol_inner counts d_upper <= r (an under-inclusion), vol_outer
// counts d_lower <= r (an over-inclusion); the true volume lies in
// [vol_inner, vol_outer]. Both ends share one sample stream, so the bracket
// ordering is exact per call. The sampling envelope is the chart bounding box
// of the translated lower-bound ball.
struct BallVolume {
  double vol_inner = 0.0, vol_outer = 0.0;
  double stderr_inner = 0.0, stderr_outer = 0.0;
  long samples = 0;
  bool stderr_ok = true;
};
BallVolume ball_volume(GroupId g, const GroupPoint& center, double r,
                       const McConfig& cfg = {});

struct VolumeScan {
  std::vector<double> radii;
  std::vector<double> vol_inner, vol_outer;
  std::vector<double> stderr_inner, stderr_outer;
  std::vector<double> running_exponent;  // pairwise log-log slope, NaN first
  double fitted_exponent = 0.0;          // least squares on geometric means
  double regularity_ratio_inner = 0.0;   // max/min of v / r^4 per bracket end
  double regularity_ratio_outer = 0.0;
};
VolumeScan growth_scan(GroupId g, const std::vector<double>& radii,
                       const McConfig& cfg = {},
                       const GroupPoint* center = nullptr);

// CSV with header r,vol_lower,vol_upper,stderr,exponent_running where the
// volume bracket is [vol via d_upper, vol via d_lower].
void write_scan_csv(std::ostream& os, const VolumeScan& s);

}  // namespace srlab
