#include "srlab/checks.hpp"

#include "srlab/contact.hpp"
#include "srlab/curves.hpp"
#include "srlab/maps.hpp"
#include "srlab/rng.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>

namespace srlab {

GroupPoint random_point(GroupId g, Rng& rng) {
  if (g == GroupId::AffineAdditive)
    return {g, rng.uniform(-2.0, 2.0), std::exp(rng.uniform(-2.0, 2.0)),
            rng.uniform(-2.0, 2.0)};
  return {g, rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0), rng.uniform(-2.0, 2.0)};
}

namespace {

constexpr GroupId kGroups[3] = {GroupId::Heisenberg, GroupId::RotoTranslation,
                                GroupId::AffineAdditive};

Check residual_check(std::string name, double measured, double tol, RefOrigin origin,
                     std::string note = {}) {
  Check c;
  c.name = std::move(name);
  c.measured = measured;
  c.reference = 0.0;
  c.tolerance = tol;
  c.origin = origin;
  c.status = measured <= tol ? CheckStatus::Pass : CheckStatus::Fail;
  c.note = std::move(note);
  return c;
}

Check value_check(std::string name, double measured, double reference, double tol,
                  RefOrigin origin, std::string note = {}) {
  Check c;
  c.name = std::move(name);
  c.measured = measured;
  c.reference = reference;
  c.tolerance = tol;
  c.origin = origin;
  c.status = std::abs(measured - reference) <= tol ? CheckStatus::Pass
                                                   : CheckStatus::Fail;
  c.note = std::move(note);
  return c;
}

double max_abs_diff(const GroupPoint& p, const GroupPoint& q) {
  return std::max({std::abs(p.c1 - q.c1), std::abs(p.c2 - q.c2),
                   std::abs(p.c3 - q.c3)});
}

}  // namespace

std::vector<Check> groups_suite(std::uint64_t seed, int trials) {
  std::vector<Check> out;
  Rng rng(seed);

  out.push_back(value_check("aa-identity", max_abs_diff(identity(GroupId::AffineAdditive),
                                                        {GroupId::AffineAdditive, 0, 1, 0}),
                            0.0, 0.0, RefOrigin::Published));
  out.push_back(value_check("h-identity", max_abs_diff(identity(GroupId::Heisenberg),
                                                       {GroupId::Heisenberg, 0, 0, 0}),
                            0.0, 0.0, RefOrigin::Published));

  out.push_back(value_check(
      "aa-product",
      max_abs_diff(multiply({GroupId::AffineAdditive, 1, 2, 3},
                            {GroupId::AffineAdditive, -1, 0.5, 4}),
                   {GroupId::AffineAdditive, 0, 1, 11}),
      0.0, 1e-15, RefOrigin::Published));
  out.push_back(value_check(
      "h-product",
      max_abs_diff(multiply({GroupId::Heisenberg, 1, 0, 0}, {GroupId::Heisenberg, 0, 1, 0}),
                   {GroupId::Heisenberg, 1, 1, 2}),
      0.0, 1e-15, RefOrigin::Published));
  out.push_back(value_check(
      "rt-product",
      max_abs_diff(multiply({GroupId::RotoTranslation, 0, 0, std::numbers::pi / 2},
                            {GroupId::RotoTranslation, 1, 0, 0}),
                   {GroupId::RotoTranslation, 0, 1, std::numbers::pi / 2}),
      0.0, 1e-15, RefOrigin::Published));

  for (GroupId g : kGroups) {
    double assoc = 0.0, laws = 0.0, min_lambda = 1.0;
    for (int k = 0; k < trials; ++k) {
      const GroupPoint p = random_point(g, rng);
      const GroupPoint q = random_point(g, rng);
      const GroupPoint r = random_point(g, rng);
      assoc = std::max(assoc, max_abs_diff(multiply(multiply(p, q), r),
                                           multiply(p, multiply(q, r))));
      laws = std::max(laws, max_abs_diff(multiply(p, inverse(p)), identity(g)));
      laws = std::max(laws, max_abs_diff(multiply(inverse(p), p), identity(g)));
      laws = std::max(laws, max_abs_diff(multiply(p, identity(g)), p));
      if (g == GroupId::AffineAdditive) {
        min_lambda = std::min(min_lambda, multiply(p, q).c2);
        min_lambda = std::min(min_lambda, inverse(p).c2);
      }
    }
    const std::string tag{group_name(g)};
    out.push_back(residual_check(tag + "-associativity", assoc, 1e-12, RefOrigin::Exact));
    out.push_back(residual_check(tag + "-identity-inverse-laws", laws, 1e-12,
                                 RefOrigin::Exact));
    if (g == GroupId::AffineAdditive) {
      Check c;
      c.name = "aa-lambda-positivity";
      c.measured = min_lambda;
      c.reference = 0.0;
      c.tolerance = 0.0;
      c.origin = RefOrigin::Exact;
      c.status = min_lambda > 0.0 ? CheckStatus::Pass : CheckStatus::Fail;
      c.note = "minimum lambda over random products and inverses";
      out.push_back(c);
    }
  }

  // analytic translation jacobians against central differences
  const double h = 1e-5;
  double jac_res = 0.0;
  for (GroupId g : kGroups) {
    for (int k = 0; k < std::min(trials, 100); ++k) {
      const GroupPoint p0 = random_point(g, rng);
      const GroupPoint p = random_point(g, rng);
      const Eigen::Matrix3d J = left_translation_jacobian(p0, p);
      for (int c = 0; c < 3; ++c) {
        GroupPoint pp = p, pm = p;
        double* fp = (c == 0) ? &pp.c1 : (c == 1) ? &pp.c2 : &pp.c3;
        double* fm = (c == 0) ? &pm.c1 : (c == 1) ? &pm.c2 : &pm.c3;
        *fp += h;
        *fm -= h;
        const GroupPoint qp = multiply(p0, pp), qm = multiply(p0, pm);
        const Eigen::Vector3d fd{(qp.c1 - qm.c1) / (2 * h), (qp.c2 - qm.c2) / (2 * h),
                                 (qp.c3 - qm.c3) / (2 * h)};
        jac_res = std::max(jac_res, (J.col(c) - fd).cwiseAbs().maxCoeff());
      }
    }
  }
  out.push_back(residual_check("translation-jacobian-vs-fd", jac_res, 1e-6,
                               RefOrigin::Derived, "central differences, step 1e-5"));

  out.push_back(value_check(
      "aa-left-translation-jacobian",
      (left_translation_jacobian({GroupId::AffineAdditive, 0, 3, 0},
                                 identity(GroupId::AffineAdditive)) -
       Eigen::Vector3d(1, 3, 3).asDiagonal().toDenseMatrix())
          .cwiseAbs()
          .maxCoeff(),
      0.0, 0.0, RefOrigin::Published, "diag(1, lambda0, lambda0)"));
  return out;
}

std::vector<Check> frames_suite(std::uint64_t seed, int trials) {
  std::vector<Check> out;
  Rng rng(seed);

  {
    const GroupPoint p{GroupId::AffineAdditive, 0, 2, 0};
    out.push_back(value_check("aa-contact-dt", contact_form(p, {p, 0, 0, 1}), 0.25,
                              1e-15, RefOrigin::Published));
    const GroupPoint h{GroupId::Heisenberg, 1, 0, 0};
    out.push_back(value_check("h-contact-dy", contact_form(h, {h, 0, 1, 0}), 2.0,
                              1e-15, RefOrigin::Published));
    const Frame fe = frame(identity(GroupId::AffineAdditive));
    const double fr_res = std::max(
        {std::abs(fe.e1.v1 - 1), std::abs(fe.e1.v2), std::abs(fe.e1.v3 - 2),
         std::abs(fe.e2.v1), std::abs(fe.e2.v2 - 2), std::abs(fe.e2.v3),
         std::abs(fe.e3.v1 + 1), std::abs(fe.e3.v2), std::abs(fe.e3.v3)});
    out.push_back(value_check("aa-frame-at-identity", fr_res, 0.0, 0.0,
                              RefOrigin::Published, "U=(1,0,2) V=(0,2,0) W=(-1,0,0)"));
    const GroupPoint p3{GroupId::AffineAdditive, 0, 3, 0};
    const FrameCoeffs fc = to_frame_coeffs({p3, 0, 1, 0});
    out.push_back(value_check("aa-dlambda-coeff", fc.beta, 1.0 / 6.0, 1e-15,
                              RefOrigin::Published, "d_lambda = U/(2 lambda)"));
    const FrameCoeffs fdt = to_frame_coeffs({identity(GroupId::AffineAdditive), 0, 0, 1});
    out.push_back(value_check(
        "aa-dt-coeff",
        std::max({std::abs(fdt.alpha - 0.5), std::abs(fdt.beta), std::abs(fdt.rest - 0.5)}),
        0.0, 1e-15, RefOrigin::Published, "d_t = (U+W)/(2 lambda)"));
  }

  double horiz = 0.0, round_trip = 0.0, kernel = 0.0, noninteg = 1e300;
  double bracket_fd = 0.0, invariance = 0.0;
  for (GroupId g : kGroups) {
    for (int k = 0; k < trials; ++k) {
      const GroupPoint p = random_point(g, rng);
      const Frame f = frame(p);
      horiz = std::max(horiz, std::abs(contact_form(p, f.e1)));
      horiz = std::max(horiz, std::abs(contact_form(p, f.e2)));
      kernel = std::max(kernel, std::abs(contact_form(p, f.e3) - 1.0));

      const TangentVector v{p, rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)};
      const TangentVector w = from_frame_coeffs(p, to_frame_coeffs(v));
      round_trip = std::max({round_trip, std::abs(v.v1 - w.v1), std::abs(v.v2 - w.v2),
                             std::abs(v.v3 - w.v3)});

      for (int i = 1; i <= 3; ++i)
        for (int j = i + 1; j <= 3; ++j) {
          const TangentVector ba = lie_bracket(g, i, j, p);
          const TangentVector bf = lie_bracket_fd(g, i, j, p);
          bracket_fd = std::max({bracket_fd, std::abs(ba.v1 - bf.v1),
                                 std::abs(ba.v2 - bf.v2), std::abs(ba.v3 - bf.v3)});
        }
      noninteg = std::min(noninteg, std::abs(contact_form(p, lie_bracket(g, 1, 2, p))));

      const GroupPoint p0 = random_point(g, rng);
      invariance = std::max(invariance, verify_left_invariance(g, p0, p));
    }
  }
  out.push_back(residual_check("frame-horizontality", horiz, 1e-10, RefOrigin::Exact));
  out.push_back(residual_check("contact-kernel-normalization", kernel, 1e-10,
                               RefOrigin::Exact, "theta(E3) = 1 in every group"));
  out.push_back(residual_check("frame-coeff-round-trip", round_trip, 1e-12,
                               RefOrigin::Exact));
  out.push_back(residual_check("bracket-analytic-vs-fd", bracket_fd, 1e-6,
                               RefOrigin::Derived, "central differences, step 1e-5"));
  {
    Check c;
    c.name = "non-integrability";
    c.measured = noninteg;
    c.reference = 0.1;
    c.tolerance = 0.0;
    c.origin = RefOrigin::Exact;
    c.status = noninteg > 0.1 ? CheckStatus::Pass : CheckStatus::Fail;
    c.note = "min |theta([E1,E2])| over sampled points";
    out.push_back(c);
  }
  out.push_back(residual_check("frame-translation-invariance", invariance, 1e-10,
                               RefOrigin::Published));

  {
    const GroupPoint e = identity(GroupId::AffineAdditive);
    const TangentVector uv = lie_bracket(GroupId::AffineAdditive, 1, 2, e);
    out.push_back(value_check(
        "aa-bracket-uv",
        std::max({std::abs(uv.v1), std::abs(uv.v2), std::abs(uv.v3 + 4.0)}), 0.0, 1e-12,
        RefOrigin::Published, "[U,V] = -2(U+W)"));
    const GroupPoint eh = identity(GroupId::Heisenberg);
    const TangentVector xy = lie_bracket(GroupId::Heisenberg, 1, 2, eh);
    out.push_back(value_check(
        "h-bracket-xy",
        std::max({std::abs(xy.v1), std::abs(xy.v2), std::abs(xy.v3 + 4.0)}), 0.0, 1e-12,
        RefOrigin::Derived, "direct differentiation of the frame fields"));
  }
  return out;
}

std::vector<Check> maps_suite(std::uint64_t seed, int trials) {
  std::vector<Check> out;
  Rng rng(seed);
  const SmoothMap& g = contactomorphism_g();
  const SmoothMap& f = quasiregular_f();

  out.push_back(value_check(
      "g-at-origin", max_abs_diff(map_g(identity(GroupId::Heisenberg)),
                                  identity(GroupId::AffineAdditive)),
      0.0, 0.0, RefOrigin::Published, "g maps neutral element to neutral element"));
  out.push_back(value_check(
      "g-example",
      max_abs_diff(map_g({GroupId::Heisenberg, 1, 0, 0}), {GroupId::AffineAdditive, 1, 1, 2}),
      0.0, 1e-15, RefOrigin::Published));
  out.push_back(value_check(
      "g-inverse-example",
      max_abs_diff(map_g_inverse({GroupId::AffineAdditive, 1, 1, 2}),
                   {GroupId::Heisenberg, 1, 0, 0}),
      0.0, 1e-15, RefOrigin::Published));
  out.push_back(value_check(
      "f-example",
      max_abs_diff(map_f({GroupId::AffineAdditive, std::numbers::pi / 2, 4, 7}),
                   {GroupId::Heisenberg, 0, 2, 7}),
      0.0, 1e-15, RefOrigin::Published));

  double ginv_rt = 0.0, g_res = 0.0, g_fac = 0.0, f_res = 0.0, f_fac = 0.0;
  double hf_dev = 0.0, det_dev = 0.0, g_dil_max = 0.0, jac_fd = 0.0;
  for (int k = 0; k < trials; ++k) {
    const GroupPoint ph = random_point(GroupId::Heisenberg, rng);
    const GroupPoint pa = random_point(GroupId::AffineAdditive, rng);

    ginv_rt = std::max(ginv_rt, max_abs_diff(map_g_inverse(map_g(ph)), ph));

    const PullbackFit gf = pullback_residual(g, ph);
    g_res = std::max(g_res, gf.residual);
    g_fac = std::max(g_fac, std::abs(gf.factor - 0.25 * std::exp(-ph.c2)));

    const PullbackFit ff = pullback_residual(f, pa);
    f_res = std::max(f_res, ff.residual);
    f_fac = std::max(f_fac, std::abs(ff.factor - 2.0 * pa.c2));

    hf_dev = std::max(hf_dev, std::abs(dilatation(f, pa) - 1.0));
    det_dev = std::max(det_dev, std::abs(f.jacobian(pa).determinant() - 0.5));
    g_dil_max = std::max(g_dil_max, dilatation(g, ph));
  }
  // analytic jacobians against central differences at a few points
  const double h = 1e-6;
  for (int k = 0; k < std::min(trials, 50); ++k) {
    for (const SmoothMap* m : {&g, &f}) {
      const GroupPoint p = random_point(m->source, rng);
      const Eigen::Matrix3d J = m->jacobian(p);
      for (int c = 0; c < 3; ++c) {
        GroupPoint pp = p, pm = p;
        double* fp = (c == 0) ? &pp.c1 : (c == 1) ? &pp.c2 : &pp.c3;
        double* fm = (c == 0) ? &pm.c1 : (c == 1) ? &pm.c2 : &pm.c3;
        *fp += h;
        *fm -= h;
        const GroupPoint qp = m->forward(pp), qm = m->forward(pm);
        const Eigen::Vector3d fd{(qp.c1 - qm.c1) / (2 * h), (qp.c2 - qm.c2) / (2 * h),
                                 (qp.c3 - qm.c3) / (2 * h)};
        jac_fd = std::max(jac_fd, (J.col(c) - fd).cwiseAbs().maxCoeff());
      }
    }
  }

  out.push_back(residual_check("g-round-trip", ginv_rt, 1e-10, RefOrigin::Exact));
  out.push_back(residual_check("g-pullback-residual", g_res, 1e-9, RefOrigin::Published));
  out.push_back(residual_check("g-pullback-factor-vs-closed-form", g_fac, 1e-9,
                               RefOrigin::Published, "factor 1/(4 e^y)"));
  out.push_back(residual_check("f-pullback-residual", f_res, 1e-9, RefOrigin::Published));
  out.push_back(residual_check("f-pullback-factor-vs-closed-form", f_fac, 1e-9,
                               RefOrigin::Published, "factor 2 lambda"));
  out.push_back(residual_check("f-dilatation-minus-one", hf_dev, 1e-9,
                               RefOrigin::Published, "H_f = 1 everywhere"));
  out.push_back(residual_check("f-jacobian-determinant-minus-half", det_dev, 1e-9,
                               RefOrigin::Published, "det Df = 1/2"));
  out.push_back(residual_check("map-jacobian-vs-fd", jac_fd, 1e-6, RefOrigin::Derived));
  {
    Check c;
    c.name = "g-dilatation-recorded-max";
    c.status = std::isfinite(g_dil_max) ? CheckStatus::Pass : CheckStatus::Fail;
    c.measured = g_dil_max;
    c.reference = 0.0;
    c.tolerance = 0.0;
    c.origin = RefOrigin::Derived;
    c.note = "finite and bounded on the sample box; no closed-form value";
    out.push_back(c);
  }

  // horizontality transport: g sends horizontal curves to horizontal curves.
  // Sources come from piecewise-constant control flows (their sampled chords
  // satisfy the contact condition exactly); the image defect is pure
  // resampling error, O(mesh^2).
  {
    double src_defect = 0.0, defect = 0.0, len_max = 0.0;
    for (int rep = 0; rep < 8; ++rep) {
      const int K = 4096;
      SampledCurve c;
      c.group = GroupId::Heisenberg;
      c.params.resize(K + 1);
      c.points.resize(K + 1);
      double x = rng.uniform(-1, 1), y = rng.uniform(-1, 1), t = rng.uniform(-1, 1);
      const double w1 = rng.uniform(0.5, 2.0), w2 = rng.uniform(0.5, 2.0);
      const double ph1 = rng.uniform(0, 6.28), ph2 = rng.uniform(0, 6.28);
      c.params[0] = 0.0;
      c.points[0] = {GroupId::Heisenberg, x, y, t};
      for (int k = 1; k <= K; ++k) {
        const double s = (k - 0.5) / K;
        const double ds = 1.0 / K;
        const double xd = std::cos(w1 * s * 6.28 + ph1);
        const double yd = std::sin(w2 * s * 6.28 + ph2);
        t += 2.0 * (y * xd - x * yd) * ds;  // constant along the segment
        x += xd * ds;
        y += yd * ds;
        c.params[k] = double(k) / K;
        c.points[k] = {GroupId::Heisenberg, x, y, t};
      }
      src_defect = std::max(src_defect, horizontality_defect(c));
      const SampledCurve mapped = map_curve(g, c);
      defect = std::max(defect, horizontality_defect(mapped));
      len_max = std::max(len_max, horizontal_length_exact_aa(mapped));
    }
    out.push_back(residual_check("h-control-flow-chord-defect", src_defect, 1e-10,
                                 RefOrigin::Exact,
                                 "piecewise-constant-control chords are exactly horizontal"));
    out.push_back(residual_check("g-horizontal-curve-transport", defect, 1e-6,
                                 RefOrigin::Derived,
                                 "sampled-chord defect of mapped horizontal curves"));
    Check c;
    c.name = "g-transported-length-finite";
    c.status = std::isfinite(len_max) && len_max > 0.0 ? CheckStatus::Pass
                                                       : CheckStatus::Fail;
    c.measured = len_max;
    c.origin = RefOrigin::Derived;
    c.note = "lengths of mapped horizontal curves stay finite";
    out.push_back(c);
  }
  return out;
}

}  // namespace srlab
