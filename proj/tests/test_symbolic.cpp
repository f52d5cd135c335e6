#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "critlab/catalog.hpp"
#include "critlab/errors.hpp"
#include "critlab/symbolic.hpp"
#include "critlab/util.hpp"

using namespace critlab;

TEST_CASE("abelian template has vanishing critical pair") {
  SymbolicTemplate abelian;  // all brackets zero
  SymbolicCurvature sc = symbolic_critical_pair(abelian);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      CHECK(sc.a[i][j].is_zero());
      CHECK(sc.b[i][j].is_zero());
    }
}

TEST_CASE("exact/float agreement of the critical pair on random rational points") {
  SymbolicCurvature sc = symbolic_critical_pair(symbolic_template_rr3());
  Rng rng(12);
  for (int trial = 0; trial < 50; ++trial) {
    std::map<std::string, double> pt;
    std::map<std::string, Rational> rpt;
    for (const char* name : {"a", "f", "p", "b", "c", "h"}) {
      int num = rng.uniform_int(-8, 8);
      pt[name] = num / 8.0;
      rpt[name] = Rational(num, 8);
    }
    MetricLieAlgebra g = mla_rr3(pt["a"], pt["f"], pt["p"], pt["b"], pt["c"], pt["h"]);
    auto [af, bf] = split_affine(curvature_package(g));
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) {
        CHECK(sc.a[i][j].evaluate(rpt).to_double() ==
              doctest::Approx(af.m[i][j]).epsilon(1e-12));
        CHECK(sc.b[i][j].evaluate(rpt).to_double() ==
              doctest::Approx(bf.m[i][j]).epsilon(1e-12));
      }
  }
}

TEST_CASE("B[4][4] of the diagonal template expands the closed-form tau") {
  // tau = -2(a^2+f^2+p^2+af+ap+fp); B = (tau^2/2) g - 2 tau ric, and
  // ric[4][4] = -(a^2+f^2+p^2) for the diagonal pattern.
  SymbolicTemplate tmpl;
  Polynomial a = Polynomial::variable("a"), f = Polynomial::variable("f"),
             p = Polynomial::variable("p");
  tmpl.set_bracket(0, 3, 0, a);
  tmpl.set_bracket(1, 3, 1, f);
  tmpl.set_bracket(2, 3, 2, p);
  SymbolicCurvature sc = symbolic_critical_pair(tmpl);
  Polynomial tau = poly_parse("-2*(a^2+f^2+p^2+a*f+a*p+f*p)");
  CHECK(sc.core.tau == tau);
  Polynomial ric44 = poly_parse("-(a^2+f^2+p^2)");
  CHECK(sc.core.ric[3][3] == ric44);
  Polynomial expected =
      tau * tau * Polynomial::constant(Rational(1, 2)) - Polynomial(2) * tau * ric44;
  CHECK(sc.b[3][3] == expected);
}

TEST_CASE("zero-energy identity of the nilpotent product, gamma symbolic") {
  SymbolicTemplate tmpl;
  tmpl.set_bracket(0, 1, 2, Polynomial::variable("gamma"));
  SymbolicCurvature sc = symbolic_critical_pair(tmpl);
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      Polynomial combo = sc.a[i][j] - Polynomial(3) * sc.b[i][j];
      CHECK(combo.is_zero());  // F_{-3} = 0 identically in gamma
    }
}

TEST_CASE("exact verification of the rational families") {
  for (const std::string& id : symbolically_verifiable_families()) {
    SymbolicProof proof = verify_family_symbolically(id);
    INFO("family ", id, ": ", proof.failure_detail);
    CHECK(proof.verified);
    CHECK(proof.components == 10);
  }
}

TEST_CASE("irrational families are rejected") {
  CHECK_THROWS_AS(verify_family_symbolically("R.5"), NotSymbolicallyVerifiable);
  CHECK_THROWS_AS(verify_family_symbolically("E.2"), NotSymbolicallyVerifiable);
}

TEST_CASE("H.2 combination is nonzero before reduction, zero after") {
  // The closed form needs the constraint ideal: D*A + N*B != 0 as polynomials
  // but reduces to zero modulo 4(a^2+d^2+ad)-3.
  SymbolicTemplate tmpl;
  Polynomial a = Polynomial::variable("a"), dvar = Polynomial::variable("d");
  tmpl.set_bracket(0, 1, 2, Polynomial(1));
  tmpl.set_bracket(0, 3, 0, a);
  tmpl.set_bracket(1, 3, 1, dvar);
  tmpl.set_bracket(2, 3, 2, a + dvar);
  SymbolicCurvature sc = symbolic_critical_pair(tmpl);
  Polynomial den = poly_parse("2*(4*a*d+5)");
  Polynomial num = Polynomial(-3);
  Polynomial constraint = poly_parse("4*(a^2+d^2+a*d)-3");
  MonomialOrder ord = MonomialOrder::grevlex({"a", "d"});
  bool some_nonzero = false;
  for (int i = 0; i < 4; ++i)
    for (int j = i; j < 4; ++j) {
      Polynomial combo = den * sc.a[i][j] + num * sc.b[i][j];
      if (!combo.is_zero()) some_nonzero = true;
      CHECK(normal_form(combo, {constraint}, ord).is_zero());
    }
  CHECK(some_nonzero);
}
