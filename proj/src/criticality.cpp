#include "critlab/criticality.hpp"

#include <cmath>

#include "critlab/errors.hpp"

namespace critlab {

std::pair<SymMat, SymMat> split_affine(const CurvaturePackage& pkg) {
  SymMat a, b;
  a.dim = b.dim = pkg.dim;
  double two_over_n = 2.0 / pkg.dim;
  for (int i = 0; i < pkg.dim; ++i)
    for (int j = 0; j < pkg.dim; ++j) {
      double delta = (i == j) ? 1.0 : 0.0;
      a.m[i][j] = -pkg.lap_ric[i][j] + two_over_n * pkg.norm_ric2 * delta -
                  2.0 * pkg.r_of_ric[i][j];
      b.m[i][j] = two_over_n * pkg.tau * pkg.tau * delta - 2.0 * pkg.tau * pkg.ric[i][j];
    }
  return {a, b};
}

SymMat critical_tensor(const CurvaturePackage& pkg, double t) {
  auto [a, b] = split_affine(pkg);
  SymMat f;
  f.dim = pkg.dim;
  for (int i = 0; i < pkg.dim; ++i)
    for (int j = 0; j < pkg.dim; ++j) f.m[i][j] = a.m[i][j] + t * b.m[i][j];
  return f;
}

CriticalityResult solve_critical_t(const CurvaturePackage& pkg, double tol) {
  auto [a, b] = split_affine(pkg);
  CriticalityResult res;
  res.a_norm = a.max_abs();
  res.b_norm = b.max_abs();
  if (res.b_norm <= tol) {
    res.kind = (res.a_norm <= tol) ? CriticalityResult::Kind::AllT
                                   : CriticalityResult::Kind::NotCritical;
    res.residual = res.a_norm;
    return res;
  }
  double ab = 0.0, bb = 0.0;
  for (int i = 0; i < pkg.dim; ++i)
    for (int j = 0; j < pkg.dim; ++j) {
      ab += a.m[i][j] * b.m[i][j];
      bb += b.m[i][j] * b.m[i][j];
    }
  double t_star = -ab / bb;
  double resid = 0.0;
  for (int i = 0; i < pkg.dim; ++i)
    for (int j = 0; j < pkg.dim; ++j)
      resid = std::max(resid, std::fabs(a.m[i][j] + t_star * b.m[i][j]));
  if (resid <= tol) {
    res.kind = CriticalityResult::Kind::Unique;
    res.t = t_star;
    res.residual = resid;
  } else {
    res.kind = CriticalityResult::Kind::NotCritical;
    res.residual = resid;
  }
  return res;
}

EnergyValue energy(const CurvaturePackage& pkg, double t) {
  return {t, pkg.norm_ric2 + t * pkg.tau * pkg.tau};
}

double zero_energy_t(const CurvaturePackage& pkg, double tau_tol) {
  if (std::fabs(pkg.tau) <= tau_tol)
    throw ZeroScalarCurvature("zero-energy t undefined: tau vanishes");
  return -pkg.norm_ric2 / (pkg.tau * pkg.tau);
}

bool is_zero_energy_critical(const CurvaturePackage& pkg, double tol, double tau_tol) {
  if (std::fabs(pkg.tau) <= tau_tol)
    throw ZeroScalarCurvature("zero-energy criticality test needs tau != 0");
  double worst = 0.0;
  for (int i = 0; i < pkg.dim; ++i)
    for (int j = 0; j < pkg.dim; ++j) {
      double v = -pkg.lap_ric[i][j] - 2.0 * pkg.r_of_ric[i][j] +
                 2.0 * pkg.norm_ric2 * pkg.ric[i][j] / pkg.tau;
      worst = std::max(worst, std::fabs(v));
    }
  return worst <= tol;
}

bool is_S_critical(const CurvaturePackage& pkg, double tol) {
  double mean = pkg.tau / pkg.dim;
  double worst = 0.0;
  for (int i = 0; i < pkg.dim; ++i)
    for (int j = 0; j < pkg.dim; ++j) {
      double dev = pkg.ric[i][j] - (i == j ? mean : 0.0);
      worst = std::max(worst, std::fabs(pkg.tau * dev));
    }
  return worst <= tol;
}

bool is_bach_flat(const CurvaturePackage& pkg, double tol) {
  if (pkg.dim != 4)
    throw WrongDimension("Bach-flatness via F_{-1/3} applies in dimension four");
  return critical_tensor(pkg, -1.0 / 3.0).max_abs() <= tol;
}

}  // namespace critlab
