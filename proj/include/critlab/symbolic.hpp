#pragma once

#include <string>
#include <vector>

#include "critlab/curvature_core.hpp"
#include "critlab/polynomial.hpp"

namespace critlab {

template <>
struct RingOps<Polynomial> {
  static Polynomial from_ratio(long num, long den) {
    return Polynomial::constant(Rational(num, den));
  }
};

// Bracket pattern whose structure constants are polynomials in the family
// parameters (antisymmetry in the first two slots is the caller's contract;
// the builders below guarantee it).
struct SymbolicTemplate {
  int dim = 4;
  Polynomial c[4][4][4];

  void set_bracket(int i, int j, int k, const Polynomial& value) {
    c[i][j][k] = value;
    c[j][i][k] = -value;
  }
};

// The four group bracket patterns, with symbolic parameters.
SymbolicTemplate symbolic_template_su2r();   // vars l1,l2,l3,k1,k2,k3
SymbolicTemplate symbolic_template_e11e2();  // vars l1,l2,A,b,C,D
SymbolicTemplate symbolic_template_rh3();    // vars gamma,a,c,d,F,H
SymbolicTemplate symbolic_template_rr3();    // vars a,f,p,b,c,h

// All Jacobiator components (should be identically zero for honest templates).
std::vector<Polynomial> symbolic_jacobiator(const SymbolicTemplate& tmpl);

// Exact curvature invariants of a template.
struct SymbolicCurvature {
  CurvatureCore<Polynomial> core;
  Polynomial a[4][4];  // t-independent part of the critical tensor
  Polynomial b[4][4];  // t-linear part
};

SymbolicCurvature symbolic_critical_pair(const SymbolicTemplate& tmpl);

// Outcome of the exact verification of one family's closed-form t.
struct SymbolicProof {
  std::string family_id;
  bool verified = false;
  int components = 0;
  std::vector<std::string> constraints;   // constraint polynomials, canonical text
  std::string t_numerator, t_denominator;  // t = N/D, canonical text
  std::string failure_detail;
};

// For families whose constraints and t are rational in the parameters,
// checks normal_form(D*A_ij + N*B_ij, constraints, grevlex) == 0 exactly.
// Throws UnknownFamily / NotSymbolicallyVerifiable.
SymbolicProof verify_family_symbolically(const std::string& family_id);

// The ids accepted by verify_family_symbolically.
std::vector<std::string> symbolically_verifiable_families();

}  // namespace critlab
