#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "srlab/checks.hpp"
#include "srlab/curves.hpp"
#include "srlab/rng.hpp"

#include <cmath>
#include <functional>
#include <numbers>
#include <sstream>

using namespace srlab;

namespace {

SampledCurve make_aa(int K, const std::function<void(double, double&, double&, double&)>& f) {
  SampledCurve c;
  c.group = GroupId::AffineAdditive;
  c.params.resize(K + 1);
  c.points.resize(K + 1);
  for (int k = 0; k <= K; ++k) {
    const double s = double(k) / K;
    double a, l, t;
    f(s, a, l, t);
    c.params[k] = s;
    c.points[k] = {GroupId::AffineAdditive, a, l, t};
  }
  return c;
}

// independent oracle: composite trapezoid quadrature of an analytic speed
double quad_oracle(const std::function<double(double)>& speed, int n = 200001) {
  double sum = 0.5 * (speed(0.0) + speed(1.0));
  for (int k = 1; k < n - 1; ++k) sum += speed(double(k) / (n - 1));
  return sum / (n - 1);
}

}  // namespace

TEST_CASE("horizontality defect") {
  // lambda ramp: tdot = adot = 0
  auto ramp = make_aa(64, [](double s, double& a, double& l, double& t) {
    a = 0;
    l = 1 + s;
    t = 0;
  });
  CHECK(horizontality_defect(ramp) == 0.0);
  // pure t motion at lambda = 1: defect = max 1/(2 lambda) = 0.5
  auto vert = make_aa(64, [](double s, double& a, double& l, double& t) {
    a = 0;
    l = 1;
    t = s;
  });
  CHECK(horizontality_defect(vert) == doctest::Approx(0.5).epsilon(1e-15));
  // straight x segment in the Heisenberg group
  SampledCurve seg;
  seg.group = GroupId::Heisenberg;
  for (int k = 0; k <= 16; ++k) {
    seg.params.push_back(k / 16.0);
    seg.points.push_back({GroupId::Heisenberg, k / 16.0, 0, 0});
  }
  CHECK(horizontality_defect(seg) == 0.0);
  CHECK(horizontal_length(seg) == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("horizontal length against quadrature oracles") {
  // lambda(s) = 1 - (1 - 1/n)s with n = 2: length int |ldot|/(2 lambda) ds
  const int n = 2;
  const double rate = 1.0 - 1.0 / n;
  const double oracle =
      quad_oracle([&](double s) { return rate / (2.0 * (1.0 - rate * s)); });
  CHECK(oracle == doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-9));
  auto gam = make_aa(4096, [&](double s, double& a, double& l, double& t) {
    a = 0;
    l = 1.0 - rate * s;
    t = 0;
  });
  CHECK(horizontal_length(gam) == doctest::Approx(0.34657359027997264).epsilon(1e-4));
  CHECK(horizontal_length_exact_aa(gam) ==
        doctest::Approx(0.5 * std::log(2.0)).epsilon(1e-14));

  // constant curve
  auto flat = make_aa(8, [](double, double& a, double& l, double& t) {
    a = 1;
    l = 2;
    t = 3;
  });
  CHECK(horizontal_length(flat) == 0.0);
}

TEST_CASE("reparameterization invariance") {
  Rng rng(37);
  const auto shape = [](double s, double& a, double& l, double& t) {
    a = 0;
    l = 1.0 + 0.8 * s;
    t = 0.3 * std::sin(3.0 * s);
  };
  auto uniform = make_aa(1024, shape);
  // random monotone resampling of the same underlying curve
  SampledCurve warped;
  warped.group = GroupId::AffineAdditive;
  std::vector<double> knots{0.0};
  for (int k = 1; k < 1024; ++k) knots.push_back(knots.back() + rng.uniform(0.2, 1.8));
  for (double& v : knots) v /= knots.back();
  knots.back() = 1.0;
  for (int k = 0; k <= 1023; ++k) {
    const double s = knots[k];
    double a, l, t;
    shape(s, a, l, t);
    warped.params.push_back(double(k) / 1023);
    warped.points.push_back({GroupId::AffineAdditive, a, l, t});
  }
  // defect of this curve is nonzero (it is not horizontal); compare raw
  // quadrature values with a permissive defect gate
  LengthOptions opts;
  opts.max_defect = 1.0;
  CHECK(std::abs(horizontal_length(uniform, opts) - horizontal_length(warped, opts)) < 1e-6);
}

TEST_CASE("projection and lift") {
  auto gam = make_aa(64, [](double s, double& a, double& l, double& t) {
    a = 5;
    l = 2;
    t = 3;
    (void)s;
  });
  const auto proj = project(gam);
  CHECK(proj[0].xi == 2.0);
  CHECK(proj[0].eta == 3.0);

  // lift of (1, s): a(1) = int 1/2 = 0.5, trapezoid is exact here
  std::vector<HyperbolicPoint> base;
  const int K = 4096;
  for (int k = 0; k <= K; ++k) base.push_back({1.0, double(k) / K});
  const SampledCurve lift = horizontal_lift(base, 0.0);
  CHECK(lift.points.back().c1 == doctest::Approx(0.5).epsilon(1e-6));
  const double oracle = quad_oracle([](double) { return 0.5; });
  CHECK(lift.points.back().c1 == doctest::Approx(oracle).epsilon(1e-9));

  // lift along t = 0 keeps a constant
  std::vector<HyperbolicPoint> ray;
  for (int k = 0; k <= 32; ++k) ray.push_back({1.0 + k / 32.0, 0.0});
  const SampledCurve lifted_ray = horizontal_lift(ray, 1.25);
  for (const auto& p : lifted_ray.points) CHECK(p.c1 == 1.25);

  // round trip is exact on the samples
  const auto back = project(lifted_ray);
  for (size_t k = 0; k < ray.size(); ++k) {
    CHECK(back[k].xi == ray[k].xi);
    CHECK(back[k].eta == ray[k].eta);
  }
}

TEST_CASE("projection is a length isometry on horizontal curves") {
  Rng rng(41);
  for (int rep = 0; rep < 100; ++rep) {
    // random smooth base curve, lifted: lift length equals base length by
    // construction of the quadrature
    std::vector<HyperbolicPoint> base;
    const int K = 256;
    const double l0 = rng.uniform(0.5, 2.0), amp = rng.uniform(-0.5, 0.5);
    const double w = rng.uniform(1.0, 4.0);
    for (int k = 0; k <= K; ++k) {
      const double s = double(k) / K;
      base.push_back({l0 * std::exp(0.4 * std::sin(w * s)), amp * std::cos(w * s)});
    }
    const SampledCurve lift = horizontal_lift(base, rng.uniform(-1, 1));
    LengthOptions opts;
    opts.max_defect = 1.0;  // O(mesh) defect of the discrete lift
    CHECK(std::abs(horizontal_length(lift, opts) - hyperbolic_polyline_length(base)) <
          1e-8);
  }
}

TEST_CASE("left translation invariance of length") {
  Rng rng(43);
  for (int rep = 0; rep < 100; ++rep) {
    std::vector<HyperbolicPoint> base;
    const int K = 128;
    for (int k = 0; k <= K; ++k) {
      const double s = double(k) / K;
      base.push_back({std::exp(0.5 * std::sin(2 * s + rep)), 0.3 * std::cos(s)});
    }
    const SampledCurve gam = horizontal_lift(base, 0.0);
    const GroupPoint p0 = random_point(GroupId::AffineAdditive, rng);
    SampledCurve moved = gam;
    for (auto& p : moved.points) p = multiply(p0, p);
    LengthOptions opts;
    opts.max_defect = 1.0;
    CHECK(std::abs(horizontal_length(gam, opts) - horizontal_length(moved, opts)) < 1e-8);
    CHECK(std::abs(horizontal_length_exact_aa(gam) - horizontal_length_exact_aa(moved)) <
          1e-8);
  }

  // Heisenberg and roto-translation: generic sampled curves, permissive
  // defect gate; the chord speeds only see translation-invariant data
  for (GroupId g : {GroupId::Heisenberg, GroupId::RotoTranslation}) {
    for (int rep = 0; rep < 50; ++rep) {
      SampledCurve c;
      c.group = g;
      const int K = 64;
      for (int k = 0; k <= K; ++k) {
        const double s = double(k) / K;
        c.params.push_back(s);
        c.points.push_back({g, std::sin(2 * s + rep), std::cos(3 * s), 0.4 * s});
      }
      const GroupPoint p0 = random_point(g, rng);
      SampledCurve moved = c;
      for (auto& p : moved.points) p = multiply(p0, p);
      LengthOptions opts;
      opts.max_defect = 1e9;
      CHECK(std::abs(horizontal_length(c, opts) - horizontal_length(moved, opts)) < 1e-8);
    }
  }
}

TEST_CASE("hyperbolic distance") {
  // (1,0) to (e,0): axis ray is a geodesic, quadrature oracle int dxi/(2 xi)
  const double oracle = quad_oracle(
      [](double s) { return (std::numbers::e - 1.0) / (2.0 * (1.0 + s * (std::numbers::e - 1.0))); });
  CHECK(oracle == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(hyperbolic_distance({1, 0}, {std::numbers::e, 0}) ==
        doctest::Approx(0.5).epsilon(1e-12));
  CHECK(hyperbolic_distance({2, 1}, {2, 1}) == 0.0);
  Rng rng(47);
  for (int k = 0; k < 200; ++k) {
    const HyperbolicPoint a{std::exp(rng.uniform(-2, 2)), rng.uniform(-3, 3)};
    const HyperbolicPoint b{std::exp(rng.uniform(-2, 2)), rng.uniform(-3, 3)};
    CHECK(hyperbolic_distance(a, b) == hyperbolic_distance(b, a));
    // geodesic sampling converges to the distance from above
    const auto pts = sample_geodesic(a, b, 512);
    CHECK(hyperbolic_polyline_length(pts) ==
          doctest::Approx(hyperbolic_distance(a, b)).epsilon(1e-4));
  }
}

TEST_CASE("geodesic lift holonomy closed form") {
  Rng rng(53);
  for (int k = 0; k < 100; ++k) {
    const HyperbolicPoint a{std::exp(rng.uniform(-1.5, 1.5)), rng.uniform(-2, 2)};
    const HyperbolicPoint b{std::exp(rng.uniform(-1.5, 1.5)), rng.uniform(-2, 2)};
    const auto pts = sample_geodesic(a, b, 4096);
    const SampledCurve lift = horizontal_lift(pts, 0.0);
    CHECK(lift.points.back().c1 ==
          doctest::Approx(geodesic_lift_holonomy(a, b)).epsilon(1e-6));
  }
}

TEST_CASE("curve csv round trip") {
  auto gam = make_aa(16, [](double s, double& a, double& l, double& t) {
    a = s;
    l = 1 + s;
    t = -s;
  });
  std::stringstream ss;
  write_curve_csv(ss, gam);
  const SampledCurve back = read_curve_csv(ss, GroupId::AffineAdditive);
  REQUIRE(back.points.size() == gam.points.size());
  for (size_t k = 0; k < back.points.size(); ++k) {
    CHECK(back.params[k] == gam.params[k]);
    CHECK(back.points[k].c1 == gam.points[k].c1);
    CHECK(back.points[k].c2 == gam.points[k].c2);
    CHECK(back.points[k].c3 == gam.points[k].c3);
  }
  std::stringstream bad("x,y\n1,2\n");
  CHECK_THROWS_AS(read_curve_csv(bad, GroupId::Heisenberg), std::invalid_argument);
}

TEST_CASE("curve validation") {
  SampledCurve c;
  c.group = GroupId::AffineAdditive;
  c.params = {0.0};
  c.points = {{GroupId::AffineAdditive, 0, 1, 0}};
  CHECK_THROWS_AS(validate_curve(c), std::invalid_argument);
  c.params = {0.0, 0.0};
  c.points.push_back({GroupId::AffineAdditive, 0, 1, 0});
  CHECK_THROWS_AS(validate_curve(c), std::invalid_argument);  // not increasing
  c.params = {0.0, 1.0};
  CHECK_NOTHROW(validate_curve(c));
  // horizontality gate
  SampledCurve steep;
  steep.group = GroupId::AffineAdditive;
  steep.params = {0.0, 1.0};
  steep.points = {{GroupId::AffineAdditive, 0, 1, 0}, {GroupId::AffineAdditive, 5, 1, 0}};
  CHECK_THROWS_AS(horizontal_length(steep), std::domain_error);
}
