#include "srlab/measure.hpp"

#include "srlab/ccdist.hpp"
#include "srlab/rng.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace srlab {

double haar_density(GroupId g, const GroupPoint& p) {
  validate_point(p);
  if (g != p.group) throw std::invalid_argument("group mismatch");
  if (g == GroupId::AffineAdditive) return 1.0 / (p.c2 * p.c2);
  return 1.0;
}

namespace {

struct Box {
  double lo[3], hi[3];
  double volume() const {
    return (hi[0] - lo[0]) * (hi[1] - lo[1]) * (hi[2] - lo[2]);
  }
};

// Chart box containing {w : d_lower(e, w) <= r}.
Box envelope_at_identity(GroupId g, double r) {
  Box b{};
  switch (g) {
    case GroupId::Heisenberg:
      // lower bound max(|z|, sqrt(|t|/2)) <= r
      b = {{-r, -r, -2.0 * r * r}, {r, r, 2.0 * r * r}};
      break;
    case GroupId::RotoTranslation:
      b = {{-r, -r, -r}, {r, r, r}};
      break;
    case GroupId::AffineAdditive: {
      // |a| <= r and hyperbolic disk of radius r around (1, 0)
      const double sh = std::sinh(2.0 * r);
      b = {{-r, std::exp(-2.0 * r), -sh}, {r, std::exp(2.0 * r), sh}};
      break;
    }
  }
  return b;
}

// All three left translations are affine in the chart, so the translated
// envelope is the bounding box of the translated corners.
Box translate_box(GroupId g, const GroupPoint& center, const Box& b) {
  Box out;
  for (int k = 0; k < 3; ++k) {
    out.lo[k] = std::numeric_limits<double>::infinity();
    out.hi[k] = -std::numeric_limits<double>::infinity();
  }
  for (int mask = 0; mask < 8; ++mask) {
    const GroupPoint corner{g, (mask & 1) ? b.hi[0] : b.lo[0],
                            (mask & 2) ? b.hi[1] : b.lo[1],
                            (mask & 4) ? b.hi[2] : b.lo[2]};
    const GroupPoint img = multiply(center, corner);
    const double c[3] = {img.c1, img.c2, img.c3};
    for (int k = 0; k < 3; ++k) {
      out.lo[k] = std::min(out.lo[k], c[k]);
      out.hi[k] = std::max(out.hi[k], c[k]);
    }
  }
  return out;
}

}  // namespace

BallVolume ball_volume(GroupId g, const GroupPoint& center, double r,
                       const McConfig& cfg) {
  validate_point(center);
  if (center.group != g) throw std::invalid_argument("group mismatch");
  if (!(r > 0.0)) throw std::invalid_argument("radius must be positive");
  if (cfg.samples < 2) throw std::invalid_argument("need at least 2 samples");

  const Box box = translate_box(g, center, envelope_at_identity(g, r));
  const double V = box.volume();
  Rng rng(cfg.seed);

  // one stream scores both bracket ends, so vol_outer >= vol_inner holds
  // sample by sample
  double sum_in = 0.0, sum2_in = 0.0, sum_out = 0.0, sum2_out = 0.0;
  for (long k = 0; k < cfg.samples; ++k) {
    const GroupPoint x{g, rng.uniform(box.lo[0], box.hi[0]),
                       rng.uniform(box.lo[1], box.hi[1]),
                       rng.uniform(box.lo[2], box.hi[2])};
    const double w = haar_density(g, x);
    const DistanceBounds d = cc_bounds_fast(g, center, x);
    const double fi = (d.upper <= r) ? w : 0.0;
    const double fo = (d.lower <= r) ? w : 0.0;
    sum_in += fi;
    sum2_in += fi * fi;
    sum_out += fo;
    sum2_out += fo * fo;
  }
  const double n = double(cfg.samples);
  BallVolume out;
  out.samples = cfg.samples;
  out.vol_inner = V * sum_in / n;
  out.vol_outer = V * sum_out / n;
  const double var_in = std::max(0.0, sum2_in / n - (sum_in / n) * (sum_in / n));
  const double var_out = std::max(0.0, sum2_out / n - (sum_out / n) * (sum_out / n));
  out.stderr_inner = V * std::sqrt(var_in / n);
  out.stderr_outer = V * std::sqrt(var_out / n);
  if (cfg.target_stderr > 0.0)
    out.stderr_ok = std::max(out.stderr_inner, out.stderr_outer) <= cfg.target_stderr;
  return out;
}

VolumeScan growth_scan(GroupId g, const std::vector<double>& radii,
                       const McConfig& cfg, const GroupPoint* center) {
  const GroupPoint c0 = center ? *center : identity(g);
  VolumeScan scan;
  if (radii.empty()) return scan;
  for (size_t i = 1; i < radii.size(); ++i)
    if (!(radii[i] > radii[i - 1]))
      throw std::invalid_argument("radii must be increasing");

  for (size_t i = 0; i < radii.size(); ++i) {
    McConfig per = cfg;
    per.seed = cfg.seed + 1000003ULL * i;
    const BallVolume v = ball_volume(g, c0, radii[i], per);
    scan.radii.push_back(radii[i]);
    scan.vol_inner.push_back(v.vol_inner);
    scan.vol_outer.push_back(v.vol_outer);
    scan.stderr_inner.push_back(v.stderr_inner);
    scan.stderr_outer.push_back(v.stderr_outer);
  }

  auto geo_mean = [&](size_t i) {
    return std::sqrt(std::max(scan.vol_inner[i], 1e-300) *
                     std::max(scan.vol_outer[i], 1e-300));
  };
  scan.running_exponent.assign(radii.size(),
                               std::numeric_limits<double>::quiet_NaN());
  for (size_t i = 1; i < radii.size(); ++i)
    scan.running_exponent[i] = std::log(geo_mean(i) / geo_mean(i - 1)) /
                               std::log(scan.radii[i] / scan.radii[i - 1]);

  if (radii.size() >= 2) {
    // log-log least squares on geometric-mean volumes
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < radii.size(); ++i) {
      const double x = std::log(radii[i]);
      const double y = std::log(geo_mean(i));
      sx += x;
      sy += y;
      sxx += x * x;
      sxy += x * y;
    }
    const double n = double(radii.size());
    scan.fitted_exponent = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  }

  auto ratio4 = [&](const std::vector<double>& vol) {
    double mx = 0.0, mn = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < vol.size(); ++i) {
      const double v = vol[i] / std::pow(scan.radii[i], 4.0);
      mx = std::max(mx, v);
      mn = std::min(mn, v);
    }
    return mn > 0.0 ? mx / mn : std::numeric_limits<double>::infinity();
  };
  scan.regularity_ratio_inner = ratio4(scan.vol_inner);
  scan.regularity_ratio_outer = ratio4(scan.vol_outer);
  return scan;
}

void write_scan_csv(std::ostream& os, const VolumeScan& s) {
  os << "r,vol_lower,vol_upper,stderr,exponent_running\n";
  char buf[192];
  for (size_t i = 0; i < s.radii.size(); ++i) {
    const double se = std::max(s.stderr_inner[i], s.stderr_outer[i]);
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g\n", s.radii[i],
                  s.vol_inner[i], s.vol_outer[i], se, s.running_exponent[i]);
    os << buf;
  }
}

}  // namespace srlab
