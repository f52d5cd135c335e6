#include "critlab/symbolic.hpp"

#include <map>

#include "critlab/errors.hpp"

namespace critlab {

namespace {
Polynomial var(const char* name) { return Polynomial::variable(name); }
}  // namespace

SymbolicTemplate symbolic_template_su2r() {
  SymbolicTemplate t;
  Polynomial l1 = var("l1"), l2 = var("l2"), l3 = var("l3");
  Polynomial k1 = var("k1"), k2 = var("k2"), k3 = var("k3");
  t.set_bracket(1, 2, 0, l1);
  t.set_bracket(0, 2, 1, -l2);
  t.set_bracket(0, 1, 2, l3);
  t.set_bracket(0, 3, 1, k3 * l2);
  t.set_bracket(0, 3, 2, -(k2 * l3));
  t.set_bracket(1, 3, 2, k1 * l3);
  t.set_bracket(1, 3, 0, -(k3 * l1));
  t.set_bracket(2, 3, 0, k2 * l1);
  t.set_bracket(2, 3, 1, -(k1 * l2));
  return t;
}

SymbolicTemplate symbolic_template_e11e2() {
  SymbolicTemplate t;
  Polynomial l1 = var("l1"), l2 = var("l2"), A = var("A"), b = var("b");
  Polynomial C = var("C"), D = var("D");
  t.set_bracket(1, 2, 0, l1);
  t.set_bracket(0, 2, 1, -l2);
  t.set_bracket(0, 3, 0, b);
  t.set_bracket(0, 3, 1, -(l2 * A));
  t.set_bracket(1, 3, 0, l1 * A);
  t.set_bracket(1, 3, 1, b);
  t.set_bracket(2, 3, 0, C);
  t.set_bracket(2, 3, 1, D);
  return t;
}

SymbolicTemplate symbolic_template_rh3() {
  SymbolicTemplate t;
  Polynomial g = var("gamma"), a = var("a"), c = var("c"), d = var("d");
  Polynomial F = var("F"), H = var("H");
  t.set_bracket(0, 1, 2, g);
  t.set_bracket(0, 3, 0, a);
  t.set_bracket(0, 3, 1, -c);
  t.set_bracket(0, 3, 2, H);
  t.set_bracket(1, 3, 0, c);
  t.set_bracket(1, 3, 1, d);
  t.set_bracket(1, 3, 2, F);
  t.set_bracket(2, 3, 2, a + d);
  return t;
}

SymbolicTemplate symbolic_template_rr3() {
  SymbolicTemplate t;
  Polynomial a = var("a"), f = var("f"), p = var("p");
  Polynomial b = var("b"), c = var("c"), h = var("h");
  t.set_bracket(0, 3, 0, a);
  t.set_bracket(0, 3, 1, b);
  t.set_bracket(0, 3, 2, c);
  t.set_bracket(1, 3, 0, -b);
  t.set_bracket(1, 3, 1, f);
  t.set_bracket(1, 3, 2, h);
  t.set_bracket(2, 3, 0, -c);
  t.set_bracket(2, 3, 1, -h);
  t.set_bracket(2, 3, 2, p);
  return t;
}

std::vector<Polynomial> symbolic_jacobiator(const SymbolicTemplate& tmpl) {
  std::vector<Polynomial> out;
  int n = tmpl.dim;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = j + 1; k < n; ++k)
        for (int m = 0; m < n; ++m) {
          Polynomial s;
          for (int l = 0; l < n; ++l)
            s = s + tmpl.c[i][j][l] * tmpl.c[l][k][m] +
                tmpl.c[j][k][l] * tmpl.c[l][i][m] +
                tmpl.c[k][i][l] * tmpl.c[l][j][m];
          out.push_back(s);
        }
  return out;
}

SymbolicCurvature symbolic_critical_pair(const SymbolicTemplate& tmpl) {
  SymbolicCurvature sc;
  sc.core = curvature_core<Polynomial>(tmpl.dim, tmpl.c);
  critical_pair(sc.core, sc.a, sc.b);
  return sc;
}

namespace {

struct RationalFamily {
  SymbolicTemplate tmpl;
  Polynomial t_num, t_den;              // t = t_num / t_den
  std::vector<Polynomial> constraints;  // may be empty (identity check)
};

RationalFamily rational_family(const std::string& id) {
  RationalFamily fam;
  SymbolicTemplate& t = fam.tmpl;
  const Polynomial one(1);

  if (id == "H.1") {
    t.set_bracket(0, 1, 2, one);
    fam.t_num = Polynomial(-3);
    fam.t_den = one;
  } else if (id == "H.2") {
    Polynomial a = var("a"), d = var("d");
    t.set_bracket(0, 1, 2, one);
    t.set_bracket(0, 3, 0, a);
    t.set_bracket(1, 3, 1, d);
    t.set_bracket(2, 3, 2, a + d);
    fam.t_num = Polynomial(-3);
    fam.t_den = poly_parse("2*(4*a*d+5)");
    fam.constraints = {poly_parse("4*(a^2+d^2+a*d)-3")};
  } else if (id == "H.3" || id == "R.2") {
    // The standard R.2 brackets carry 1/sqrt(2) factors; its isomorphically
    // homothetic model [e1,e2]=e3, [e2,e4]=-e1 has rational constants and the
    // same (homothety-invariant) critical parameter t = -3/2.
    t.set_bracket(0, 1, 2, one);
    t.set_bracket(1, 3, 0, Polynomial(-1));
    fam.t_num = Polynomial(-3);
    fam.t_den = Polynomial(2);
  } else if (id == "H.4") {
    Polynomial a = var("a");
    t.set_bracket(0, 1, 2, one);
    t.set_bracket(0, 3, 0, a);
    t.set_bracket(1, 3, 1, a);
    t.set_bracket(2, 3, 2, a + a);
    fam.t_num = poly_parse("-3*(4*a^2+1)");
    fam.t_den = poly_parse("44*a^2+1");
  } else if (id == "R.1") {
    t.set_bracket(0, 3, 0, one);
    t.set_bracket(0, 3, 2, one);
    t.set_bracket(2, 3, 0, Polynomial(-1));
    t.set_bracket(2, 3, 2, Polynomial(-1));
    fam.t_num = Polynomial(-3);
    fam.t_den = one;
  } else if (id == "R.3") {
    Polynomial f = var("f"), p = var("p");
    t.set_bracket(0, 3, 0, one);
    t.set_bracket(1, 3, 1, f);
    t.set_bracket(2, 3, 2, p);
    fam.t_num = -poly_parse("f^2+p^2+1");
    fam.t_den = poly_parse("2*(f^2+p^2+f*p+f+p+1)");
  } else if (id == "E.1") {
    t.set_bracket(0, 2, 1, one);
    t.set_bracket(1, 2, 0, one);
    fam.t_num = Polynomial(-1);
    fam.t_den = one;
  } else if (id == "E.3") {
    Polynomial D = var("D");
    t.set_bracket(0, 2, 1, Polynomial(-1));
    t.set_bracket(0, 3, 0, one);
    t.set_bracket(1, 2, 0, one);
    t.set_bracket(1, 3, 1, one);
    t.set_bracket(2, 3, 1, D);
    fam.t_num = -poly_parse("3*D^2+4");
    fam.t_den = poly_parse("D^2+12");
  } else {
    throw NotSymbolicallyVerifiable(
        "family " + id + " has irrational constraint data; use numeric verification");
  }
  return fam;
}

}  // namespace

std::vector<std::string> symbolically_verifiable_families() {
  return {"H.1", "H.2", "H.3", "H.4", "R.1", "R.2", "R.3", "E.1", "E.3"};
}

SymbolicProof verify_family_symbolically(const std::string& family_id) {
  RationalFamily fam = rational_family(family_id);
  SymbolicCurvature sc = symbolic_critical_pair(fam.tmpl);

  SymbolicProof proof;
  proof.family_id = family_id;
  MonomialOrder order = MonomialOrder::grevlex();
  proof.t_numerator = fam.t_num.to_string(order);
  proof.t_denominator = fam.t_den.to_string(order);
  for (const auto& g : fam.constraints) proof.constraints.push_back(g.to_string(order));

  proof.verified = true;
  for (int i = 0; i < 4 && proof.verified; ++i)
    for (int j = i; j < 4 && proof.verified; ++j) {
      Polynomial combo = fam.t_den * sc.a[i][j] + fam.t_num * sc.b[i][j];
      ++proof.components;
      Polynomial rem = fam.constraints.empty()
                           ? combo
                           : normal_form(combo, fam.constraints, order);
      if (!rem.is_zero()) {
        proof.verified = false;
        proof.failure_detail = "component (" + std::to_string(i + 1) + "," +
                               std::to_string(j + 1) + ") reduces to " +
                               rem.to_string(order);
      }
    }
  return proof;
}

}  // namespace critlab
