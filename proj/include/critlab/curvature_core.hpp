#pragma once

// Frame-component curvature pipeline for a left-invariant metric, generic over
// the coefficient ring so the float path and the exact rational path share one
// set of formulas.
//
// Conventions (fixed project-wide):
//   gamma[i][j][k] = <nabla_{e_i} e_j, e_k> = (c[i][j][k] - c[j][k][i] + c[k][i][j]) / 2
//   R(X,Y)Z = nabla_X nabla_Y Z - nabla_Y nabla_X Z - nabla_[X,Y] Z
//   riem[i][j][k][l] = <R(e_i,e_j) e_k, e_l>
//   ric[i][j] = sum_k riem[i][k][k][j]          (round sphere gets tau > 0)
//   rric[i][j] = sum_{k,l} riem[i][k][l][j] ric[k][l]   (so rric[g] = ric)
//   lap = rough Laplacian, trace of the second covariant derivative.

namespace critlab {

template <class S>
struct RingOps;  // from_ratio(num, den) -> S; specialized per coefficient type.

template <>
struct RingOps<double> {
  static double from_ratio(long num, long den) {
    return static_cast<double>(num) / static_cast<double>(den);
  }
};

template <class S>
struct CurvatureCore {
  int dim = 0;
  S gamma[4][4][4];
  S riem[4][4][4][4];
  S ric[4][4];
  S tau;
  S nabla_ric[4][4][4];
  S lap_ric[4][4];
  S r_of_ric[4][4];
  S norm_ric2;
};

template <class S>
CurvatureCore<S> curvature_core(int dim, const S c[4][4][4]) {
  CurvatureCore<S> out;
  out.dim = dim;
  const S half = RingOps<S>::from_ratio(1, 2);

  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        out.gamma[i][j][k] = (c[i][j][k] - c[j][k][i] + c[k][i][j]) * half;

  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l) {
          S acc = S();
          for (int m = 0; m < dim; ++m)
            acc = acc + out.gamma[j][k][m] * out.gamma[i][m][l] -
                  out.gamma[i][k][m] * out.gamma[j][m][l] -
                  c[i][j][m] * out.gamma[m][k][l];
          out.riem[i][j][k][l] = acc;
        }

  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      S acc = S();
      for (int k = 0; k < dim; ++k) acc = acc + out.riem[i][k][k][j];
      out.ric[i][j] = acc;
    }

  out.tau = S();
  for (int i = 0; i < dim; ++i) out.tau = out.tau + out.ric[i][i];

  out.norm_ric2 = S();
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      out.norm_ric2 = out.norm_ric2 + out.ric[i][j] * out.ric[i][j];

  // Frame components of ric are constant, so only connection terms survive.
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j)
      for (int k = 0; k < dim; ++k) {
        S acc = S();
        for (int m = 0; m < dim; ++m)
          acc = acc - out.gamma[i][j][m] * out.ric[m][k] -
                out.gamma[i][k][m] * out.ric[j][m];
        out.nabla_ric[i][j][k] = acc;
      }

  for (int j = 0; j < dim; ++j)
    for (int k = 0; k < dim; ++k) {
      S acc = S();
      for (int i = 0; i < dim; ++i)
        for (int m = 0; m < dim; ++m)
          acc = acc - out.gamma[i][i][m] * out.nabla_ric[m][j][k] -
                out.gamma[i][j][m] * out.nabla_ric[i][m][k] -
                out.gamma[i][k][m] * out.nabla_ric[i][j][m];
      out.lap_ric[j][k] = acc;
    }

  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      S acc = S();
      for (int k = 0; k < dim; ++k)
        for (int l = 0; l < dim; ++l)
          acc = acc + out.riem[i][k][l][j] * out.ric[k][l];
      out.r_of_ric[i][j] = acc;
    }

  return out;
}

// Affine split of the critical tensor: F_t = A + t B with
//   A = -lap(ric) + (2/n)|ric|^2 g - 2 R[ric],   B = (2/n) tau^2 g - 2 tau ric.
template <class S>
void critical_pair(const CurvatureCore<S>& core, S a_out[4][4], S b_out[4][4]) {
  const int n = core.dim;
  const S two_over_n = RingOps<S>::from_ratio(2, n);
  const S two = RingOps<S>::from_ratio(2, 1);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      S a = S() - core.lap_ric[i][j] - two * core.r_of_ric[i][j];
      S b = S() - two * core.tau * core.ric[i][j];
      if (i == j) {
        a = a + two_over_n * core.norm_ric2;
        b = b + two_over_n * core.tau * core.tau;
      }
      a_out[i][j] = a;
      b_out[i][j] = b;
    }
}

}  // namespace critlab
