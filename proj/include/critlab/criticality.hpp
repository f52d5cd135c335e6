#pragma once

#include <utility>

#include "critlab/curvature.hpp"

namespace critlab {

struct SymMat {
  int dim = 0;
  double m[4][4] = {};

  double max_abs() const {
    double v = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) v = std::max(v, std::fabs(m[i][j]));
    return v;
  }
};

struct CriticalityResult {
  enum class Kind { AllT, Unique, NotCritical };
  Kind kind = Kind::NotCritical;
  double t = 0.0;        // meaningful iff kind == Unique
  double residual = 0.0; // max |F_t| at the reported t (t=0 for AllT/NotCritical)
  double a_norm = 0.0;   // max-norm of the t-independent part
  double b_norm = 0.0;   // max-norm of the t-linear part
};

struct EnergyValue {
  double t = 0.0;
  double energy = 0.0;  // |ric|^2 + t tau^2
};

constexpr double kCriticalTol = 1e-9;

// Gradient of the quadratic functional in the homogeneous reduction:
//   F_t = -lap(ric) + (2/n)(|ric|^2 + t tau^2) g - 2 R[ric] - 2 t tau ric.
SymMat critical_tensor(const CurvaturePackage& pkg, double t);

// F_t = A + t B, exactly affine in t.
std::pair<SymMat, SymMat> split_affine(const CurvaturePackage& pkg);

// Least-squares t* = -<A,B>/<B,B> (Frobenius pairing); classifies the metric
// as critical for all t, for a unique t, or for none.
CriticalityResult solve_critical_t(const CurvaturePackage& pkg, double tol = kCriticalTol);

EnergyValue energy(const CurvaturePackage& pkg, double t);

// t = -|ric|^2 / tau^2, the only candidate for zero-energy criticality.
// Throws ZeroScalarCurvature when |tau| <= tau_tol.
double zero_energy_t(const CurvaturePackage& pkg, double tau_tol = 1e-9);

// Tests -lap(ric) - 2R[ric] + 2 |ric|^2 ric / tau = 0 componentwise.
bool is_zero_energy_critical(const CurvaturePackage& pkg, double tol = kCriticalTol,
                             double tau_tol = 1e-9);

// First equation of the homogeneous system: tau (ric - tau/n g) = 0.
bool is_S_critical(const CurvaturePackage& pkg, double tol = kCriticalTol);

// Four-dimensional Bach-flatness test via F_{-1/3} = 0. Throws WrongDimension.
bool is_bach_flat(const CurvaturePackage& pkg, double tol = kCriticalTol);

}  // namespace critlab
