#pragma once

#include "srlab/curves.hpp"

#include <cstdint>
#include <vector>

namespace srlab {

struct CCConfig {
  int segments = 16;
  int max_evals = 2000;        // objective evaluation budget per restart
  double tol = 1e-3;           // descent stall tolerance (absolute objective)
  double endpoint_tol = 1e-6;  // target chart residual at the far endpoint
  int penalty_rounds = 5;
  double penalty_growth = 10.0;
  int restarts = 2;
  std::uint64_t seed = 1;
};

struct CCEstimate {
  double upper = 0.0;      // exact length of the best curve found
  double lower = 0.0;      // certified lower bound
  SampledCurve curve;      // attains upper (up to endpoint_residual)
  int iterations = 0;      // objective evaluations spent
  bool converged = true;   // endpoint residual within tolerance at exit
  double endpoint_residual = 0.0;
};

// Certified lower bounds from endpoint data alone (p^{-1} q reduction):
//   Heisenberg:      |dz|
//   RotoTranslation: max(|dt|, |dz|)   (horizontal speed dominates both)
//   AffineAdditive:  hyperbolic distance of the projections
double cc_lower_bound(GroupId g, const GroupPoint& p, const GroupPoint& q);

// Closed-form bracket around the CC distance. The lower side sharpens
// cc_lower_bound with the fiber estimates |da| <= len (AffineAdditive) and
// |dt| <= 2 len^2 (Heisenberg); the upper side is the length of an explicit
// horizontal curve (straight drive plus area loop, rotate-drive-rotate, or
// geodesic lift plus holonomy loop). Cheap enough for Monte-Carlo membership
// tests.
struct DistanceBounds {
  double lower = 0.0, upper = 0.0;
};
DistanceBounds cc_bounds_fast(GroupId g, const GroupPoint& p, const GroupPoint& q);

// First-order descent over horizontal curves, seeded with the chart-linear
// interpolation of p^{-1} q and translated back. AffineAdditive optimizes the
// projected half-plane polyline (horizontality enforced by lifting) with a
// quadratic penalty on the a-endpoint; Heisenberg and RotoTranslation
// optimize horizontal control coefficients with exact per-segment flows and a
// penalty on the chart endpoint, finished by an exact endpoint closure (the
// flow endpoints are polynomial in the controls). upper is the exact length
// of the returned curve's representation; lower comes from cc_bounds_fast.
CCEstimate cc_distance(GroupId g, const GroupPoint& p, const GroupPoint& q,
                       const CCConfig& cfg = {});

struct SetDistance {
  double upper = 0.0;  // min over optimized candidate pairs
  double lower = 0.0;  // min over all pairs of the certified lower bound
};
SetDistance dist_between_sets(GroupId g, const std::vector<GroupPoint>& A,
                              const std::vector<GroupPoint>& B,
                              const CCConfig& cfg = {});

}  // namespace srlab
