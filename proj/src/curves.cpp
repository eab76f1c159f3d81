#include "srlab/curves.hpp"

#include "srlab/contact.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>

namespace srlab {

void validate_curve(const SampledCurve& c) {
  if (c.points.size() < 2) throw std::invalid_argument("curve needs at least 2 samples");
  if (c.params.size() != c.points.size())
    throw std::invalid_argument("params/points size mismatch");
  double prev = -1.0;
  for (double s : c.params) {
    if (!(s >= 0.0 && s <= 1.0)) throw std::invalid_argument("params must lie in [0,1]");
    if (!(s > prev)) throw std::invalid_argument("params must be strictly increasing");
    prev = s;
  }
  for (const auto& p : c.points) {
    if (p.group != c.group) throw std::invalid_argument("curve mixes groups");
    validate_point(p);
  }
}

namespace {

GroupPoint chart_midpoint(const GroupPoint& a, const GroupPoint& b) {
  return {a.group, 0.5 * (a.c1 + b.c1), 0.5 * (a.c2 + b.c2), 0.5 * (a.c3 + b.c3)};
}

// All three horizontal speeds are 1-homogeneous in the velocity.
double chord_speed(GroupId g, const GroupPoint& mid, double d1, double d2, double d3) {
  switch (g) {
    case GroupId::Heisenberg:
      return std::hypot(d1, d2);
    case GroupId::RotoTranslation: {
      const double drive = d1 * std::cos(mid.c3) + d2 * std::sin(mid.c3);
      return std::hypot(drive, d3);
    }
    case GroupId::AffineAdditive:
      return std::hypot(d2, d3) / (2.0 * mid.c2);
  }
  throw std::logic_error("unreachable group id");
}

}  // namespace

double horizontality_defect(const SampledCurve& c) {
  validate_curve(c);
  double defect = 0.0;
  for (size_t k = 0; k + 1 < c.points.size(); ++k) {
    const double ds = c.params[k + 1] - c.params[k];
    const GroupPoint mid = chart_midpoint(c.points[k], c.points[k + 1]);
    const TangentVector vel{mid, (c.points[k + 1].c1 - c.points[k].c1) / ds,
                            (c.points[k + 1].c2 - c.points[k].c2) / ds,
                            (c.points[k + 1].c3 - c.points[k].c3) / ds};
    defect = std::max(defect, std::abs(contact_form(mid, vel)));
  }
  return defect;
}

double horizontal_length(const SampledCurve& c, const LengthOptions& opt) {
  const double defect = horizontality_defect(c);
  if (defect > opt.max_defect)
    throw std::domain_error("curve is far from horizontal (defect " +
                            std::to_string(defect) + ")");
  if (defect > opt.warn_defect && opt.warned) *opt.warned = true;
  double len = 0.0;
  for (size_t k = 0; k + 1 < c.points.size(); ++k) {
    const GroupPoint mid = chart_midpoint(c.points[k], c.points[k + 1]);
    len += chord_speed(c.group, mid, c.points[k + 1].c1 - c.points[k].c1,
                       c.points[k + 1].c2 - c.points[k].c2,
                       c.points[k + 1].c3 - c.points[k].c3);
    if (!std::isfinite(len)) throw std::domain_error("non-finite curve length");
  }
  return len;
}

namespace {

// int_0^1 |chord| / (2 (l0 + s (l1-l0))) ds
double aa_segment_length(double l0, double l1, double dt) {
  const double dl = l1 - l0;
  const double chord = std::hypot(dl, dt);
  if (std::abs(dl) <= 1e-12 * std::min(l0, l1))
    return chord / (l0 + l1);
  return chord * std::log(l1 / l0) / (2.0 * dl);
}

}  // namespace

double horizontal_length_exact_aa(const SampledCurve& c) {
  validate_curve(c);
  if (c.group != GroupId::AffineAdditive)
    throw std::invalid_argument("exact polyline length is specific to the affine-additive chart");
  double len = 0.0;
  for (size_t k = 0; k + 1 < c.points.size(); ++k)
    len += aa_segment_length(c.points[k].c2, c.points[k + 1].c2,
                             c.points[k + 1].c3 - c.points[k].c3);
  return len;
}

std::vector<HyperbolicPoint> project(const SampledCurve& c) {
  validate_curve(c);
  if (c.group != GroupId::AffineAdditive)
    throw std::invalid_argument("projection is defined on the affine-additive group");
  std::vector<HyperbolicPoint> out;
  out.reserve(c.points.size());
  for (const auto& p : c.points) out.push_back({p.c2, p.c3});
  return out;
}

SampledCurve horizontal_lift(const std::vector<double>& params,
                             const std::vector<HyperbolicPoint>& base, double a0) {
  if (base.size() < 2) throw std::invalid_argument("lift needs at least 2 samples");
  if (params.size() != base.size())
    throw std::invalid_argument("params/base size mismatch");
  SampledCurve c;
  c.group = GroupId::AffineAdditive;
  c.params = params;
  c.points.reserve(base.size());
  double a = a0;
  for (size_t k = 0; k < base.size(); ++k) {
    if (!(base[k].xi > 0.0)) throw std::invalid_argument("lift base needs xi > 0");
    if (k > 0) {
      const double deta = base[k].eta - base[k - 1].eta;
      a += deta * 0.25 * (1.0 / base[k - 1].xi + 1.0 / base[k].xi);
    }
    c.points.push_back({GroupId::AffineAdditive, a, base[k].xi, base[k].eta});
  }
  return c;
}

SampledCurve horizontal_lift(const std::vector<HyperbolicPoint>& base, double a0) {
  std::vector<double> params(base.size());
  for (size_t k = 0; k < base.size(); ++k)
    params[k] = double(k) / double(base.size() - 1);
  return horizontal_lift(params, base, a0);
}

double hyperbolic_distance(const HyperbolicPoint& p, const HyperbolicPoint& q) {
  if (!(p.xi > 0.0 && q.xi > 0.0))
    throw std::invalid_argument("half-plane points need xi > 0");
  const double dx = p.xi - q.xi, dy = p.eta - q.eta;
  const double ch = 1.0 + (dx * dx + dy * dy) / (2.0 * p.xi * q.xi);
  return 0.5 * std::acosh(std::max(1.0, ch));
}

double hyperbolic_polyline_length(const std::vector<HyperbolicPoint>& pts) {
  if (pts.size() < 2) throw std::invalid_argument("polyline needs at least 2 samples");
  double len = 0.0;
  for (size_t k = 0; k + 1 < pts.size(); ++k) {
    const double mid = 0.5 * (pts[k].xi + pts[k + 1].xi);
    len += std::hypot(pts[k + 1].xi - pts[k].xi, pts[k + 1].eta - pts[k].eta) /
           (2.0 * mid);
  }
  return len;
}

GeodesicArc hyperbolic_geodesic(const HyperbolicPoint& p, const HyperbolicPoint& q) {
  if (!(p.xi > 0.0 && q.xi > 0.0))
    throw std::invalid_argument("half-plane points need xi > 0");
  GeodesicArc arc;
  const double scale = std::max({std::abs(p.xi), std::abs(q.xi), std::abs(p.eta),
                                 std::abs(q.eta), 1.0});
  if (std::abs(p.eta - q.eta) <= 1e-14 * scale) {
    arc.radial = true;
    return arc;
  }
  arc.radial = false;
  arc.center = (p.xi * p.xi + p.eta * p.eta - q.xi * q.xi - q.eta * q.eta) /
               (2.0 * (p.eta - q.eta));
  arc.radius = std::hypot(p.xi, p.eta - arc.center);
  arc.th0 = std::atan2(p.xi, p.eta - arc.center);
  arc.th1 = std::atan2(q.xi, q.eta - arc.center);
  return arc;
}

std::vector<HyperbolicPoint> sample_geodesic(const HyperbolicPoint& p,
                                             const HyperbolicPoint& q, int segments) {
  if (segments < 1) throw std::invalid_argument("need at least one segment");
  const GeodesicArc arc = hyperbolic_geodesic(p, q);
  std::vector<HyperbolicPoint> out;
  out.reserve(segments + 1);
  for (int k = 0; k <= segments; ++k) {
    const double s = double(k) / segments;
    if (arc.radial) {
      // geometric interpolation keeps unit-speed sampling on the ray
      out.push_back({p.xi * std::pow(q.xi / p.xi, s), p.eta + s * (q.eta - p.eta)});
    } else {
      const double th = arc.th0 + s * (arc.th1 - arc.th0);
      out.push_back({arc.radius * std::sin(th), arc.center + arc.radius * std::cos(th)});
    }
  }
  out.front() = p;
  out.back() = q;
  return out;
}

double geodesic_lift_holonomy(const HyperbolicPoint& p, const HyperbolicPoint& q) {
  const GeodesicArc arc = hyperbolic_geodesic(p, q);
  if (arc.radial) return 0.0;
  // int deta/(2 xi) with (xi, eta) = (r sin th, c + r cos th)
  return 0.5 * (arc.th0 - arc.th1);
}

void write_curve_csv(std::ostream& os, const SampledCurve& c) {
  validate_curve(c);
  os << "s,c1,c2,c3\n";
  char buf[128];
  for (size_t k = 0; k < c.points.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", c.params[k],
                  c.points[k].c1, c.points[k].c2, c.points[k].c3);
    os << buf;
  }
}

SampledCurve read_curve_csv(std::istream& is, GroupId g) {
  SampledCurve c;
  c.group = g;
  std::string line;
  if (!std::getline(is, line)) throw std::invalid_argument("empty curve file");
  if (line.rfind("s,c1,c2,c3", 0) != 0)
    throw std::invalid_argument("curve CSV must start with header s,c1,c2,c3");
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    double s, v1, v2, v3;
    char comma;
    if (!(row >> s >> comma >> v1 >> comma >> v2 >> comma >> v3))
      throw std::invalid_argument("bad curve CSV row: " + line);
    c.params.push_back(s);
    c.points.push_back({g, v1, v2, v3});
  }
  validate_curve(c);
  return c;
}

}  // namespace srlab
