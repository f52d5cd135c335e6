#include "critlab/curvature.hpp"

#include <cmath>

#include "critlab/errors.hpp"

namespace critlab {

void connection(const MetricLieAlgebra& mla, double gamma[4][4][4]) {
  for (int i = 0; i < mla.dim; ++i)
    for (int j = 0; j < mla.dim; ++j)
      for (int k = 0; k < mla.dim; ++k)
        gamma[i][j][k] =
            0.5 * (mla.c[i][j][k] - mla.c[j][k][i] + mla.c[k][i][j]);
}

namespace {

void finish_package(CurvaturePackage& pkg) {
  int n = pkg.dim;
  for (int m = 0; m < n; ++m)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
          for (int l = 0; l < n; ++l) {
            double acc = 0.0;
            for (int q = 0; q < n; ++q)
              acc -= pkg.gamma[m][i][q] * pkg.riem[q][j][k][l] +
                     pkg.gamma[m][j][q] * pkg.riem[i][q][k][l] +
                     pkg.gamma[m][k][q] * pkg.riem[i][j][q][l] +
                     pkg.gamma[m][l][q] * pkg.riem[i][j][k][q];
            pkg.nabla_riem[m][i][j][k][l] = acc;
          }

  pkg.norm_riem2 = 0.0;
  pkg.norm_nabla_ric2 = 0.0;
  pkg.norm_nabla_riem2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        pkg.norm_nabla_ric2 += pkg.nabla_ric[i][j][k] * pkg.nabla_ric[i][j][k];
        for (int l = 0; l < n; ++l) {
          pkg.norm_riem2 += pkg.riem[i][j][k][l] * pkg.riem[i][j][k][l];
          for (int m = 0; m < n; ++m)
            pkg.norm_nabla_riem2 +=
                pkg.nabla_riem[m][i][j][k][l] * pkg.nabla_riem[m][i][j][k][l];
        }
      }
    }
}

}  // namespace

CurvaturePackage curvature_package(const MetricLieAlgebra& mla) {
  CurvatureCore<double> core = curvature_core<double>(mla.dim, mla.c);
  CurvaturePackage pkg;
  pkg.dim = mla.dim;
  int n = mla.dim;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      pkg.ric[i][j] = core.ric[i][j];
      pkg.lap_ric[i][j] = core.lap_ric[i][j];
      pkg.r_of_ric[i][j] = core.r_of_ric[i][j];
      for (int k = 0; k < n; ++k) {
        pkg.gamma[i][j][k] = core.gamma[i][j][k];
        pkg.nabla_ric[i][j][k] = core.nabla_ric[i][j][k];
        for (int l = 0; l < n; ++l) pkg.riem[i][j][k][l] = core.riem[i][j][k][l];
      }
    }
  pkg.tau = core.tau;
  pkg.norm_ric2 = core.norm_ric2;
  finish_package(pkg);
  return pkg;
}

namespace {

// Fills riem with the constant-curvature pattern kappa on a block of frame
// indices, then derives ric/tau. Covariant derivatives stay zero: these are
// symmetric metrics in a parallel adapted frame (gamma = 0).
void add_space_form_block(CurvaturePackage& pkg, int lo, int hi, double kappa) {
  for (int i = lo; i <= hi; ++i)
    for (int j = lo; j <= hi; ++j)
      for (int k = lo; k <= hi; ++k)
        for (int l = lo; l <= hi; ++l)
          pkg.riem[i][j][k][l] +=
              kappa * ((j == k ? 1.0 : 0.0) * (i == l ? 1.0 : 0.0) -
                       (i == k ? 1.0 : 0.0) * (j == l ? 1.0 : 0.0));
}

void derive_scalars(CurvaturePackage& pkg) {
  int n = pkg.dim;
  pkg.tau = 0.0;
  pkg.norm_ric2 = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double acc = 0.0;
      for (int k = 0; k < n; ++k) acc += pkg.riem[i][k][k][j];
      pkg.ric[i][j] = acc;
    }
  for (int i = 0; i < n; ++i) pkg.tau += pkg.ric[i][i];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      pkg.norm_ric2 += pkg.ric[i][j] * pkg.ric[i][j];
      double acc = 0.0;
      for (int k = 0; k < n; ++k)
        for (int l = 0; l < n; ++l) acc += pkg.riem[i][k][l][j] * pkg.ric[k][l];
      pkg.r_of_ric[i][j] = acc;
    }
  finish_package(pkg);
}

}  // namespace

CurvaturePackage product_surfaces_package(double kappa1, double kappa2) {
  CurvaturePackage pkg;
  pkg.dim = 4;
  add_space_form_block(pkg, 0, 1, kappa1);
  add_space_form_block(pkg, 2, 3, kappa2);
  derive_scalars(pkg);
  return pkg;
}

CurvaturePackage line_times_spaceform_package(int ell, double kappa) {
  if (ell != 1 && ell != 2)
    throw BadFactorDimension("flat factor dimension must be 1 or 2, got " +
                             std::to_string(ell));
  CurvaturePackage pkg;
  pkg.dim = 4;
  add_space_form_block(pkg, ell, 3, kappa);
  derive_scalars(pkg);
  return pkg;
}

bool is_einstein(const CurvaturePackage& pkg, double tol) {
  double mean = pkg.tau / pkg.dim;
  for (int i = 0; i < pkg.dim; ++i)
    for (int j = 0; j < pkg.dim; ++j) {
      double target = (i == j) ? mean : 0.0;
      if (std::fabs(pkg.ric[i][j] - target) > tol) return false;
    }
  return true;
}

double sectional_curvature(const CurvaturePackage& pkg, int i, int j) {
  if (i == j) throw EqualIndices("sectional curvature needs two distinct directions");
  if (i < 0 || j < 0 || i >= pkg.dim || j >= pkg.dim)
    throw IndexOutOfRange("sectional curvature index outside frame");
  return pkg.riem[i][j][j][i];
}

}  // namespace critlab
