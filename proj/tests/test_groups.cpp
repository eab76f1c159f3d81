#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "srlab/checks.hpp"
#include "srlab/groups.hpp"
#include "srlab/rng.hpp"

#include <cmath>
#include <numbers>

using namespace srlab;

namespace {

double pt_diff(const GroupPoint& p, const GroupPoint& q) {
  return std::max({std::abs(p.c1 - q.c1), std::abs(p.c2 - q.c2), std::abs(p.c3 - q.c3)});
}

}  // namespace

TEST_CASE("identities") {
  CHECK(pt_diff(identity(GroupId::AffineAdditive), {GroupId::AffineAdditive, 0, 1, 0}) == 0);
  CHECK(pt_diff(identity(GroupId::Heisenberg), {GroupId::Heisenberg, 0, 0, 0}) == 0);
  CHECK(pt_diff(identity(GroupId::RotoTranslation), {GroupId::RotoTranslation, 0, 0, 0}) == 0);
}

TEST_CASE("products match worked examples") {
  // affine-additive: (1,2,3)*(-1,0.5,4) = (0, 1, 2*4+3)
  CHECK(pt_diff(multiply({GroupId::AffineAdditive, 1, 2, 3},
                         {GroupId::AffineAdditive, -1, 0.5, 4}),
                {GroupId::AffineAdditive, 0, 1, 11}) == 0);
  // Heisenberg: (1,0)*(i,0): twist 2 Im(conj(1) i) = 2
  CHECK(pt_diff(multiply({GroupId::Heisenberg, 1, 0, 0}, {GroupId::Heisenberg, 0, 1, 0}),
                {GroupId::Heisenberg, 1, 1, 2}) == 0);
  // roto-translation: (0, pi/2)*(1, 0) = (i, pi/2)
  const GroupPoint r = multiply({GroupId::RotoTranslation, 0, 0, std::numbers::pi / 2},
                                {GroupId::RotoTranslation, 1, 0, 0});
  CHECK(r.c1 == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(r.c2 == doctest::Approx(1.0));
  CHECK(r.c3 == doctest::Approx(std::numbers::pi / 2));
}

TEST_CASE("inverses match worked examples") {
  CHECK(pt_diff(inverse({GroupId::AffineAdditive, 2, 4, 8}),
                {GroupId::AffineAdditive, -2, 0.25, -2}) == 0);
  CHECK(pt_diff(inverse({GroupId::Heisenberg, 3, -2, 5}),
                {GroupId::Heisenberg, -3, 2, -5}) == 0);
  // roto-translation inverse: (-e^{-it} z, -t)
  const GroupPoint p{GroupId::RotoTranslation, 1, 2, 0.7};
  const GroupPoint q = inverse(p);
  CHECK(pt_diff(multiply(q, p), identity(GroupId::RotoTranslation)) < 1e-15);
  CHECK(pt_diff(multiply(p, q), identity(GroupId::RotoTranslation)) < 1e-15);
}

TEST_CASE("group laws on random samples") {
  Rng rng(7);
  for (GroupId g : {GroupId::Heisenberg, GroupId::RotoTranslation, GroupId::AffineAdditive}) {
    for (int k = 0; k < 300; ++k) {
      const GroupPoint p = random_point(g, rng);
      const GroupPoint q = random_point(g, rng);
      const GroupPoint r = random_point(g, rng);
      CHECK(pt_diff(multiply(multiply(p, q), r), multiply(p, multiply(q, r))) < 1e-12);
      CHECK(pt_diff(multiply(p, inverse(p)), identity(g)) < 1e-12);
      CHECK(pt_diff(multiply(inverse(p), p), identity(g)) < 1e-12);
      CHECK(pt_diff(left_translate(identity(g), p), p) == 0);
      if (g == GroupId::AffineAdditive) {
        CHECK(multiply(p, q).c2 > 0);
        CHECK(inverse(p).c2 > 0);
      }
    }
  }
}

TEST_CASE("left translation examples") {
  CHECK(pt_diff(left_translate({GroupId::AffineAdditive, 1, 2, 0},
                               {GroupId::AffineAdditive, 0, 1, 5}),
                {GroupId::AffineAdditive, 1, 2, 10}) == 0);
  CHECK(pt_diff(left_translate({GroupId::Heisenberg, 0, 1, 0}, {GroupId::Heisenberg, 0, 1, 0}),
                {GroupId::Heisenberg, 0, 2, 0}) == 0);
}

TEST_CASE("translation jacobians") {
  // affine-additive: diag(1, lambda0, lambda0) independent of the base point
  const Eigen::Matrix3d J = left_translation_jacobian({GroupId::AffineAdditive, 0, 3, 0},
                                                      {GroupId::AffineAdditive, 1, 2, 3});
  CHECK((J - Eigen::Vector3d(1, 3, 3).asDiagonal().toDenseMatrix()).norm() == 0);
  CHECK((left_translation_jacobian(identity(GroupId::AffineAdditive),
                                   {GroupId::AffineAdditive, 1, 2, 3}) -
         Eigen::Matrix3d::Identity())
            .norm() == 0);

  // analytic vs central differences, step 1e-5
  Rng rng(11);
  const double h = 1e-5;
  for (GroupId g : {GroupId::Heisenberg, GroupId::RotoTranslation, GroupId::AffineAdditive}) {
    for (int rep = 0; rep < 100; ++rep) {
      const GroupPoint p0 = random_point(g, rng);
      const GroupPoint p = random_point(g, rng);
      const Eigen::Matrix3d A = left_translation_jacobian(p0, p);
      for (int c = 0; c < 3; ++c) {
        GroupPoint pp = p, pm = p;
        double* up = (c == 0) ? &pp.c1 : (c == 1) ? &pp.c2 : &pp.c3;
        double* um = (c == 0) ? &pm.c1 : (c == 1) ? &pm.c2 : &pm.c3;
        *up += h;
        *um -= h;
        const GroupPoint qp = multiply(p0, pp), qm = multiply(p0, pm);
        const Eigen::Vector3d fd{(qp.c1 - qm.c1) / (2 * h), (qp.c2 - qm.c2) / (2 * h),
                                 (qp.c3 - qm.c3) / (2 * h)};
        CHECK((A.col(c) - fd).cwiseAbs().maxCoeff() < 1e-6);
      }
    }
  }
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(multiply(identity(GroupId::Heisenberg), identity(GroupId::AffineAdditive)),
                  std::invalid_argument);
  CHECK_THROWS_AS(validate_point({GroupId::AffineAdditive, 0, -1, 0}), std::invalid_argument);
  CHECK_THROWS_AS(validate_point({GroupId::Heisenberg, 0, std::nan(""), 0}),
                  std::invalid_argument);
  CHECK_THROWS_AS(parse_group("nope"), std::invalid_argument);
}
