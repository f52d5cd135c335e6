#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "critlab/catalog.hpp"
#include "critlab/soliton.hpp"
#include "support/random_mla.hpp"

using namespace critlab;

TEST_CASE("Heisenberg x line soliton constant") {
  MetricLieAlgebra g = new_metric_lie_algebra(4, {{1, 2, 3, 1.0}});
  auto cert = algebraic_soliton_check(g);
  REQUIRE(cert.has_value());
  CHECK(cert->lambda == doctest::Approx(-1.5).epsilon(1e-10));
  CHECK(cert->residual < 1e-10);
  CHECK(cert->derivation_defect < 1e-10);
  // Ric - lambda I = diag(1,1,2,3/2) in this frame
  CHECK(cert->derivation(0, 0) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cert->derivation(2, 2) == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(cert->derivation(3, 3) == doctest::Approx(1.5).epsilon(1e-9));
}

TEST_CASE("diagonal abelian extensions certify with lambda = -(f^2+p^2+1)") {
  Rng rng(17);
  for (int trial = 0; trial < 12; ++trial) {
    double f = rng.uniform(-1, 1), p = rng.uniform(f, 1);
    MetricLieAlgebra g = mla_rr3(1, f, p, 0, 0, 0);
    auto cert = algebraic_soliton_check(g);
    REQUIRE(cert.has_value());
    CHECK(cert->lambda == doctest::Approx(-(f * f + p * p + 1)).epsilon(1e-9));
  }
}

TEST_CASE("non-soliton families yield no certificate") {
  // equal-expansion extension of the Heisenberg algebra, a=1
  CHECK(!algebraic_soliton_check(mla_rh3(1, 1, 0, 1, 0, 0), 1e-6).has_value());
  // E.5-type instance
  CHECK(!algebraic_soliton_check(mla_e11e2(1, -1, 0.5, 0.8, 0, 0), 1e-6).has_value());
}

TEST_CASE("einstein metrics certify trivially at lambda = tau/4") {
  MetricLieAlgebra hyp = mla_rr3(1, 1, 1, 0, 0, 0);
  auto cert = algebraic_soliton_check(hyp);
  REQUIRE(cert.has_value());
  CurvaturePackage pkg = curvature_package(hyp);
  CHECK(cert->lambda == doctest::Approx(pkg.tau / 4).epsilon(1e-10));
  double dev = 0;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) dev = std::max(dev, std::fabs(cert->derivation(i, j)));
  CHECK(dev < 1e-9);

  MetricLieAlgebra flat = new_metric_lie_algebra(4, {});
  auto fc = algebraic_soliton_check(flat);
  REQUIRE(fc.has_value());
  CHECK(fc->lambda == doctest::Approx(0.0));
}

TEST_CASE("certificate lambda stable under permuted frames") {
  Rng rng(23);
  MetricLieAlgebra g = mla_rr3(1, -0.5, 0.25, 0, 0, 0);
  auto base = algebraic_soliton_check(g);
  REQUIRE(base.has_value());
  int perm[4] = {1, 2, 0, 3};
  LinearMap pm;
  pm.dim = 4;
  for (int i = 0; i < 4; ++i) pm.m[i][perm[i]] = 1.0;
  auto permuted = algebraic_soliton_check(change_basis(g, pm, true));
  REQUIRE(permuted.has_value());
  CHECK(base->lambda == doctest::Approx(permuted->lambda).epsilon(1e-10));
  (void)rng;
}

TEST_CASE("certified solitons are zero-energy critical") {
  for (auto id : {"H.1", "H.2", "H.3", "R.1", "R.2", "R.3"}) {
    Rng rng(400);
    FamilyInstance inst = build_instance(id, sample_params(family_spec(id), rng));
    auto cert = algebraic_soliton_check(inst.mla);
    REQUIRE(cert.has_value());
    auto check = soliton_expected_criticality(*cert, inst.pkg);
    CHECK(check.consistent);
    CHECK(std::fabs(check.energy) < 1e-9);
  }
  // flat steady case reports trivially consistent
  MetricLieAlgebra flat = new_metric_lie_algebra(4, {});
  auto fc = algebraic_soliton_check(flat);
  auto check = soliton_expected_criticality(*fc, curvature_package(flat));
  CHECK(check.flat_steady);
  CHECK(check.consistent);
}
