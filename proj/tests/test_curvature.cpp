#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "critlab/catalog.hpp"
#include "critlab/curvature.hpp"
#include "critlab/errors.hpp"
#include "critlab/symbolic.hpp"
#include "support/oracle.hpp"
#include "support/random_mla.hpp"

using namespace critlab;

namespace {
MetricLieAlgebra heisenberg_r() { return new_metric_lie_algebra(4, {{1, 2, 3, 1.0}}); }
}  // namespace

TEST_CASE("connection: postconditions pin the Koszul signs") {
  Rng rng(300);
  for (int trial = 0; trial < 30; ++trial) {
    MetricLieAlgebra g = testgen::random_mla(rng);
    double gamma[4][4][4];
    connection(g, gamma);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j)
        for (int k = 0; k < 4; ++k) {
          // metric compatibility and vanishing torsion
          CHECK(gamma[i][j][k] == doctest::Approx(-gamma[i][k][j]).epsilon(1e-12));
          CHECK(gamma[i][j][k] - gamma[j][i][k] ==
                doctest::Approx(g.c[i][j][k]).epsilon(1e-12));
        }
  }
}

TEST_CASE("connection: Heisenberg x line components") {
  double gamma[4][4][4];
  connection(heisenberg_r(), gamma);
  CHECK(gamma[0][1][2] == doctest::Approx(0.5));   // nabla_{e1} e2 = e3/2
  CHECK(gamma[0][2][1] == doctest::Approx(-0.5));  // nabla_{e1} e3 = -e2/2
  CHECK(gamma[1][2][0] == doctest::Approx(0.5));   // nabla_{e2} e3 = e1/2
  CHECK(gamma[3][0][0] == doctest::Approx(0.0));
}

TEST_CASE("connection: diagonal abelian extension") {
  // [e_i, e_4] = a_i e_i makes nabla_{e_i} e_i = -a_i e_4, nabla_{e_i} e_4 = a_i e_i
  MetricLieAlgebra g = mla_rr3(0.7, -0.3, 0.2, 0, 0, 0);
  double gamma[4][4][4];
  connection(g, gamma);
  CHECK(gamma[0][0][3] == doctest::Approx(-0.7));
  CHECK(gamma[0][3][0] == doctest::Approx(0.7));
  CHECK(gamma[1][1][3] == doctest::Approx(0.3));
  CHECK(gamma[2][2][3] == doctest::Approx(-0.2));
  CHECK(gamma[3][3][0] == doctest::Approx(0.0));
}

TEST_CASE("abelian algebra is flat") {
  CurvaturePackage p = curvature_package(new_metric_lie_algebra(4, {}));
  CHECK(p.tau == 0.0);
  CHECK(p.norm_riem2 == 0.0);
  CHECK(p.norm_ric2 == 0.0);
  CHECK(p.norm_nabla_riem2 == 0.0);
}

TEST_CASE("Heisenberg x line: frozen curvature data") {
  CurvaturePackage p = curvature_package(heisenberg_r());
  CHECK(p.ric[0][0] == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(p.ric[1][1] == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(p.ric[2][2] == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(p.ric[3][3] == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(p.tau == doctest::Approx(-0.5).epsilon(1e-14));
  CHECK(p.norm_ric2 == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(p.norm_nabla_ric2 == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("scalar curvature closed forms (exact, all parameters symbolic)") {
  // R |x R^3: tau = -2(a^2+f^2+p^2+af+ap+fp)
  SymbolicCurvature rr3 = symbolic_critical_pair(symbolic_template_rr3());
  CHECK(rr3.core.tau ==
        poly_parse("-2*(a^2+f^2+p^2+a*f+a*p+f*p)"));

  // R |x H^3: tau = -(4(3a^2+3d^2+5ad)+F^2+H^2+gamma^2)/2
  SymbolicCurvature rh3 = symbolic_critical_pair(symbolic_template_rh3());
  CHECK(rh3.core.tau ==
        poly_parse("-1/2*(4*(3*a^2+3*d^2+5*a*d)+F^2+H^2+gamma^2)"));

  // R |x e(1,1)/e(2): tau = -((A^2+1)(l1-l2)^2 + 12 b^2 + C^2 + D^2)/2
  SymbolicCurvature e11 = symbolic_critical_pair(symbolic_template_e11e2());
  CHECK(e11.core.tau ==
        poly_parse("-1/2*((A^2+1)*(l1-l2)^2+12*b^2+C^2+D^2)"));

  // su(2) x R with tilt
  SymbolicCurvature su2 = symbolic_critical_pair(symbolic_template_su2r());
  CHECK(su2.core.tau ==
        poly_parse("-1/2*(l1^2+l2^2+l3^2-2*(l1*l2+l1*l3+l2*l3)"
                   "+k1^2*(l2-l3)^2+k2^2*(l1-l3)^2+k3^2*(l1-l2)^2)"));
}

TEST_CASE("product of surfaces") {
  CurvaturePackage p = product_surfaces_package(1.0, -1.0);
  CHECK(p.tau == doctest::Approx(0.0));
  CHECK(p.ric[0][0] == doctest::Approx(1.0));
  CHECK(p.ric[1][1] == doctest::Approx(1.0));
  CHECK(p.ric[2][2] == doctest::Approx(-1.0));
  CHECK(p.ric[3][3] == doctest::Approx(-1.0));
  CHECK(p.norm_ric2 == doctest::Approx(4.0));
  CHECK(p.norm_nabla_ric2 == 0.0);
  CHECK(p.norm_nabla_riem2 == 0.0);

  CurvaturePackage flat = product_surfaces_package(0.0, 0.0);
  CHECK(flat.norm_riem2 == 0.0);

  CurvaturePackage einstein = product_surfaces_package(0.7, 0.7);
  CHECK(is_einstein(einstein, 1e-12));
}

TEST_CASE("line times space form") {
  CurvaturePackage p1 = line_times_spaceform_package(1, 0.25);
  CHECK(p1.tau == doctest::Approx(1.5));
  CHECK(p1.ric[0][0] == doctest::Approx(0.0));
  CHECK(p1.ric[1][1] == doctest::Approx(0.5));

  CurvaturePackage p2 = line_times_spaceform_package(2, -1.0);
  CHECK(p2.tau == doctest::Approx(-2.0));
  CHECK(p2.norm_ric2 == doctest::Approx(2.0));

  CHECK(line_times_spaceform_package(2, 0.0).norm_riem2 == 0.0);
  CHECK_THROWS_AS(line_times_spaceform_package(3, 1.0), BadFactorDimension);
}

TEST_CASE("einstein test") {
  CHECK(is_einstein(product_surfaces_package(0.5, 0.5), 1e-12));
  CHECK(!is_einstein(curvature_package(heisenberg_r()), 1e-6));
  CHECK(is_einstein(curvature_package(new_metric_lie_algebra(4, {})), 1e-14));
  // hyperbolic space as a solvable group
  CHECK(is_einstein(curvature_package(mla_rr3(1, 1, 1, 0, 0, 0)), 1e-12));
}

TEST_CASE("sectional curvature") {
  CurvaturePackage p = product_surfaces_package(1.0, -1.0);
  CHECK(sectional_curvature(p, 0, 1) == doctest::Approx(1.0));
  CHECK(sectional_curvature(p, 2, 3) == doctest::Approx(-1.0));
  CHECK(sectional_curvature(p, 0, 2) == doctest::Approx(0.0));
  CHECK_THROWS_AS(sectional_curvature(p, 1, 1), EqualIndices);

  CurvaturePackage flat = curvature_package(new_metric_lie_algebra(4, {}));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) CHECK(sectional_curvature(flat, i, j) == 0.0);

  // diag(1,1,1) extension has constant curvature -1
  CurvaturePackage hyp = curvature_package(mla_rr3(1, 1, 1, 0, 0, 0));
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      if (i != j) CHECK(sectional_curvature(hyp, i, j) == doctest::Approx(-1.0));
}

TEST_CASE("tensor symmetries and Bianchi identities on random algebras") {
  Rng rng(100);
  for (int trial = 0; trial < 100; ++trial) {
    MetricLieAlgebra g = testgen::random_mla(rng, trial % 3 == 0);
    double scale = g.max_abs_c();
    if (scale > 0) g = scale_structure(g, 1.0 / scale);
    CurvaturePackage p = curvature_package(g);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        CHECK(p.ric[i][j] == doctest::Approx(p.ric[j][i]).epsilon(1e-10));
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l) {
            double r = p.riem[i][j][k][l];
            CHECK(r == doctest::Approx(-p.riem[j][i][k][l]).epsilon(1e-10));
            CHECK(r == doctest::Approx(-p.riem[i][j][l][k]).epsilon(1e-10));
            CHECK(r == doctest::Approx(p.riem[k][l][i][j]).epsilon(1e-10));
            double bianchi1 =
                p.riem[i][j][k][l] + p.riem[j][k][i][l] + p.riem[k][i][j][l];
            CHECK(std::fabs(bianchi1) < 1e-10);
            for (int m = 0; m < 4; ++m) {
              double bianchi2 = p.nabla_riem[m][i][j][k][l] +
                                p.nabla_riem[i][j][m][k][l] +
                                p.nabla_riem[j][m][i][k][l];
              CHECK(std::fabs(bianchi2) < 1e-10);
            }
          }
      }
    // tau = trace ric
    double tr = 0;
    for (int i = 0; i < 4; ++i) tr += p.ric[i][i];
    CHECK(p.tau == doctest::Approx(tr).epsilon(1e-12));
    // contracted second Bianchi with constant tau: div(ric) = 0
    for (int j = 0; j < 4; ++j) {
      double div = 0;
      for (int k = 0; k < 4; ++k) div += p.nabla_ric[k][k][j];
      CHECK(std::fabs(div) < 1e-10);
    }
  }
}

TEST_CASE("oracle equivalence: naive Koszul recomputation of R and ric") {
  Rng rng(200);
  for (int trial = 0; trial < 100; ++trial) {
    MetricLieAlgebra g = testgen::random_mla(rng, trial % 4 == 0);
    double scale = g.max_abs_c();
    if (scale > 0) g = scale_structure(g, 1.0 / scale);
    CurvaturePackage p = curvature_package(g);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        CHECK(p.ric[i][j] == doctest::Approx(oracle::ricci(g, i, j)).epsilon(1e-12));
        for (int k = 0; k < 4; ++k)
          for (int l = 0; l < 4; ++l)
            CHECK(p.riem[i][j][k][l] ==
                  doctest::Approx(oracle::riem(g, i, j, k, l)).epsilon(1e-12));
      }
  }
}

TEST_CASE("scaling moves curvature scalars with the right weights") {
  Rng rng(77);
  for (int trial = 0; trial < 20; ++trial) {
    MetricLieAlgebra g = testgen::random_mla(rng);
    double s = rng.uniform(0.2, 3.0);
    CurvaturePackage p = curvature_package(g);
    CurvaturePackage ps = curvature_package(scale_structure(g, s));
    double s2 = s * s;
    CHECK(ps.tau == doctest::Approx(s2 * p.tau).epsilon(1e-10));
    CHECK(ps.norm_ric2 == doctest::Approx(s2 * s2 * p.norm_ric2).epsilon(1e-10));
    CHECK(ps.norm_nabla_ric2 ==
          doctest::Approx(s2 * s2 * s2 * p.norm_nabla_ric2).epsilon(1e-10));
    CHECK(ps.norm_nabla_riem2 ==
          doctest::Approx(s2 * s2 * s2 * p.norm_nabla_riem2).epsilon(1e-10));
  }
}
