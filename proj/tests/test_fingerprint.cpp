#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "critlab/catalog.hpp"
#include "critlab/errors.hpp"
#include "critlab/fingerprint.hpp"
#include "support/random_mla.hpp"

using namespace critlab;

TEST_CASE("third-order invariant of the t = -3 soliton") {
  FamilyInstance r1 = build_instance("R.1", {});
  Fingerprint fp = fingerprint(r1.pkg);
  CHECK(fp.mode == Fingerprint::Mode::Normal);
  CHECK(fp.kind == CriticalityResult::Kind::Unique);
  CHECK(fp.t_star == doctest::Approx(-3.0).epsilon(1e-10));
  CHECK(fp.r[2] == doctest::Approx(-8.0).epsilon(1e-10));  // |nabla ric|^2 / tau^3
}

TEST_CASE("third-order invariant separates R.5 at the t = -3 crossing") {
  double p = (1.0 - std::sqrt(33.0)) / 16.0;
  FamilyInstance r5 = build_instance("R.5", {{"p", p}});
  CHECK(r5.expected_t == doctest::Approx(-3.0).epsilon(1e-12));
  Fingerprint fp = fingerprint(r5.pkg);
  CHECK(fp.t_star == doctest::Approx(-3.0).epsilon(1e-9));
  CHECK(fp.r[2] == doctest::Approx(-776.0 / 81.0).epsilon(1e-9));

  Fingerprint fp1 = fingerprint(build_instance("R.1", {}).pkg);
  CHECK(distinct(fp1, fp, 1e-6));
}

TEST_CASE("einstein fingerprints have r1 = 1/4") {
  Fingerprint fp = fingerprint(curvature_package(mla_rr3(1, 1, 1, 0, 0, 0)));
  CHECK(fp.kind == CriticalityResult::Kind::AllT);
  CHECK(fp.r[0] == doctest::Approx(0.25).epsilon(1e-12));
}

TEST_CASE("fingerprint invariance under scaling and orthogonal frames") {
  Rng rng(55);
  for (int trial = 0; trial < 25; ++trial) {
    MetricLieAlgebra g = testgen::random_mla(rng);
    double norm = g.max_abs_c();
    if (norm > 0) g = scale_structure(g, 1.0 / norm);
    Fingerprint base = fingerprint(curvature_package(g));

    double s = rng.uniform(0.1, 10.0);
    Fingerprint scaled = fingerprint(curvature_package(scale_structure(g, s)));
    CHECK(base.mode == scaled.mode);
    CHECK(fingerprint_distance(base, scaled) < 1e-9);

    Fingerprint rotated = fingerprint(
        curvature_package(change_basis(g, testgen::random_orthogonal(4, rng), true)));
    CHECK(fingerprint_distance(base, rotated) < 1e-8);
  }
}

TEST_CASE("a metric is never distinct from its own scaling") {
  FamilyInstance h2 = build_instance("H.2", {{"a", 0.1}});
  Fingerprint f1 = fingerprint(curvature_package(h2.mla));
  Fingerprint f2 = fingerprint(curvature_package(scale_structure(h2.mla, 3.7)));
  CHECK(!distinct(f1, f2, 1e-8));
}

TEST_CASE("equal-t families are separated") {
  // both H.4 at a=1 and R x N^3 are F_{-1/3}-critical but not homothetic
  Fingerprint h4 = fingerprint(curvature_package(mla_rh3(1, 1, 0, 1, 0, 0)));
  Fingerprint sym2 = fingerprint(line_times_spaceform_package(1, -1.0));
  CHECK(h4.t_star == doctest::Approx(-1.0 / 3.0).epsilon(1e-9));
  CHECK(sym2.t_star == doctest::Approx(-1.0 / 3.0).epsilon(1e-12));
  CHECK(distinct(h4, sym2, 1e-6));
}

TEST_CASE("mode mismatch throws") {
  Fingerprint taufree = fingerprint(product_surfaces_package(1.0, -1.0));
  CHECK(taufree.mode == Fingerprint::Mode::TauFree);
  Fingerprint normal = fingerprint(line_times_spaceform_package(1, 1.0));
  CHECK(normal.mode == Fingerprint::Mode::Normal);
  CHECK_THROWS_AS(distinct(taufree, normal, 1e-6), ModeMismatch);
  CHECK(std::isinf(fingerprint_distance(taufree, normal)));

  Fingerprint flat = fingerprint(curvature_package(new_metric_lie_algebra(4, {})));
  CHECK(flat.mode == Fingerprint::Mode::Flat);
}

TEST_CASE("smooth invariant vector is scale-free and matches modes") {
  Rng rng(66);
  for (int trial = 0; trial < 15; ++trial) {
    MetricLieAlgebra g = testgen::random_mla(rng);
    auto v1 = invariant_vector(curvature_package(g));
    auto v2 = invariant_vector(curvature_package(scale_structure(g, 2.5)));
    for (int i = 0; i < 5; ++i) CHECK(v1[i] == doctest::Approx(v2[i]).epsilon(1e-9));
  }
  auto vflat = invariant_vector(curvature_package(new_metric_lie_algebra(4, {})));
  for (double comp : vflat) CHECK(comp == 0.0);
}
