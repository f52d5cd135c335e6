#pragma once

#include "critlab/algebra.hpp"
#include "critlab/curvature_core.hpp"

namespace critlab {

// All frame-component curvature data of a homogeneous metric. Either computed
// from a metric Lie algebra or filled analytically for symmetric products.
struct CurvaturePackage {
  int dim = 0;
  double gamma[4][4][4] = {};
  double riem[4][4][4][4] = {};
  double ric[4][4] = {};
  double tau = 0.0;
  double nabla_ric[4][4][4] = {};
  double nabla_riem[4][4][4][4][4] = {};
  double lap_ric[4][4] = {};
  double r_of_ric[4][4] = {};
  double norm_ric2 = 0.0;
  double norm_riem2 = 0.0;
  double norm_nabla_ric2 = 0.0;
  double norm_nabla_riem2 = 0.0;
};

// Koszul connection coefficients alone (postconditions: metric compatibility
// gamma[i][j][k] = -gamma[i][k][j], torsion gamma[i][j][.]-gamma[j][i][.] = c[i][j][.]).
void connection(const MetricLieAlgebra& mla, double gamma[4][4][4]);

CurvaturePackage curvature_package(const MetricLieAlgebra& mla);

// Product of two constant-curvature surfaces N1(kappa1) x N2(kappa2);
// spans {e1,e2} and {e3,e4}.
CurvaturePackage product_surfaces_package(double kappa1, double kappa2);

// R^ell x N^{4-ell}(kappa) for ell in {1,2}. Throws BadFactorDimension.
CurvaturePackage line_times_spaceform_package(int ell, double kappa);

bool is_einstein(const CurvaturePackage& pkg, double tol);

// K(e_i,e_j) = riem[i][j][j][i]; round sphere positive. Throws EqualIndices.
double sectional_curvature(const CurvaturePackage& pkg, int i, int j);

}  // namespace critlab
