#pragma once

#include <optional>

#include "critlab/algebra.hpp"
#include "critlab/criticality.hpp"

namespace critlab {

// Witness for Ric = lambda Id + D with D a derivation of the Lie algebra.
struct SolitonCertificate {
  double lambda = 0.0;
  Mat derivation;       // dim x dim matrix of D in the orthonormal frame
  double residual = 0.0;        // max |Ric - lambda I - D|
  double derivation_defect = 0.0;  // max |D[x,y] - [Dx,y] - [x,Dy]| over frame pairs
};

// Joint linear least squares over lambda and the derivation space; emits a
// certificate iff the residual is within tol. Absence means the metric is not
// an algebraic Ricci soliton at this tolerance.
std::optional<SolitonCertificate> algebraic_soliton_check(const MetricLieAlgebra& mla,
                                                          double tol = 1e-9);

// Consistency of a certified soliton with zero-energy criticality:
// solve_critical_t must report Unique with t = -|ric|^2/tau^2 and zero energy.
struct SolitonCriticalityCheck {
  bool consistent = false;
  bool flat_steady = false;  // tau ~ 0 case, reported as trivially consistent
  double t = 0.0;
  double energy = 0.0;
  double t_deviation = 0.0;
};

SolitonCriticalityCheck soliton_expected_criticality(const SolitonCertificate& cert,
                                                     const CurvaturePackage& pkg,
                                                     double tol = 1e-8);

}  // namespace critlab
