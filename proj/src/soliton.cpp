#include "critlab/soliton.hpp"

#include <cmath>

#include "critlab/errors.hpp"

namespace critlab {

namespace {

double derivation_defect(const MetricLieAlgebra& mla, const Mat& d) {
  int n = mla.dim;
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        // Column-action convention D(e_l) = sum_k d(k,l) e_k.
        double lhs = 0.0;
        for (int l = 0; l < n; ++l) lhs += mla.c[i][j][l] * d(k, l);
        double rhs = 0.0;
        for (int l = 0; l < n; ++l)
          rhs += d(l, i) * mla.c[l][j][k] + d(l, j) * mla.c[i][l][k];
        worst = std::max(worst, std::fabs(lhs - rhs));
      }
  return worst;
}

}  // namespace

std::optional<SolitonCertificate> algebraic_soliton_check(const MetricLieAlgebra& mla,
                                                          double tol) {
  int n = mla.dim;
  CurvaturePackage pkg = curvature_package(mla);

  std::vector<Mat> ders = derivation_space(mla);
  int m = static_cast<int>(ders.size());

  // Equations: lambda delta_ij + sum_a x_a (D_a)_ij = ric_ij, all (i,j).
  Mat a(n * n, m + 1);
  std::vector<double> b(n * n, 0.0);
  int row = 0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j, ++row) {
      a(row, 0) = (i == j) ? 1.0 : 0.0;
      for (int k = 0; k < m; ++k) a(row, k + 1) = ders[k](i, j);
      b[row] = pkg.ric[i][j];
    }
  std::vector<double> x = least_squares(a, b);

  SolitonCertificate cert;
  cert.lambda = x[0];
  cert.derivation = Mat(n, n);
  for (int k = 0; k < m; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) cert.derivation(i, j) += x[k + 1] * ders[k](i, j);

  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      double v = pkg.ric[i][j] - (i == j ? cert.lambda : 0.0) - cert.derivation(i, j);
      worst = std::max(worst, std::fabs(v));
    }
  cert.residual = worst;
  cert.derivation_defect = derivation_defect(mla, cert.derivation);
  if (cert.residual > tol || cert.derivation_defect > tol) return std::nullopt;
  return cert;
}

SolitonCriticalityCheck soliton_expected_criticality(const SolitonCertificate& cert,
                                                     const CurvaturePackage& pkg,
                                                     double tol) {
  (void)cert;
  SolitonCriticalityCheck check;
  if (std::fabs(pkg.tau) <= 1e-9) {
    // Homogeneous steady solitons are flat; nothing left to verify.
    check.flat_steady = true;
    check.consistent = pkg.norm_riem2 <= tol;
    return check;
  }
  double t_expected = zero_energy_t(pkg);
  CriticalityResult crit = solve_critical_t(pkg);
  check.t = crit.t;
  check.t_deviation = std::fabs(crit.t - t_expected);
  check.energy = energy(pkg, crit.t).energy;
  check.consistent = crit.kind == CriticalityResult::Kind::Unique &&
                     check.t_deviation <= tol && std::fabs(check.energy) <= tol;
  return check;
}

}  // namespace critlab
