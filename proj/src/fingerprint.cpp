#include "critlab/fingerprint.hpp"

#include <cmath>
#include <limits>

#include "critlab/errors.hpp"

namespace critlab {

Fingerprint fingerprint(const CurvaturePackage& pkg, double tol) {
  Fingerprint fp;
  CriticalityResult crit = solve_critical_t(pkg, tol);
  fp.kind = crit.kind;
  fp.t_star = crit.t;

  double rho2 = pkg.norm_ric2;
  double riem2 = pkg.norm_riem2;
  // Curvature five orders below the criticality tolerance counts as flat; the
  // ratio components are 0/0 there. Calibrated for unit-normalized constants.
  if (rho2 + riem2 <= 1e-10) {
    fp.mode = Fingerprint::Mode::Flat;
    fp.r = {0, 0, 0, 0};
    return fp;
  }
  // tau is second order like sqrt(rho2); compare scale-free.
  if (pkg.tau * pkg.tau > 1e-14 * rho2) {
    fp.mode = Fingerprint::Mode::Normal;
    double t2 = pkg.tau * pkg.tau;
    double t3 = t2 * pkg.tau;
    fp.r = {rho2 / t2, riem2 / t2, pkg.norm_nabla_ric2 / t3,
            pkg.norm_nabla_riem2 / t3};
  } else {
    fp.mode = Fingerprint::Mode::TauFree;
    double r32 = std::pow(rho2, 1.5);
    fp.r = {riem2 / rho2, pkg.norm_nabla_ric2 / r32, pkg.norm_nabla_riem2 / r32, 0.0};
  }
  return fp;
}

double fingerprint_distance(const Fingerprint& f1, const Fingerprint& f2) {
  if (f1.mode != f2.mode) return std::numeric_limits<double>::infinity();
  double d = 0.0;
  using Kind = CriticalityResult::Kind;
  if (f1.kind == Kind::Unique && f2.kind == Kind::Unique)
    d = std::fabs(f1.t_star - f2.t_star);
  else if (f1.kind != f2.kind)
    return std::numeric_limits<double>::infinity();
  for (int i = 0; i < 4; ++i) d = std::max(d, std::fabs(f1.r[i] - f2.r[i]));
  return d;
}

bool distinct(const Fingerprint& f1, const Fingerprint& f2, double tol) {
  if (f1.mode != f2.mode)
    throw ModeMismatch("fingerprints use different fallback modes (" +
                       f1.mode_name() + " vs " + f2.mode_name() + ")");
  return fingerprint_distance(f1, f2) > tol;
}

std::array<double, 5> invariant_vector(const CurvaturePackage& pkg) {
  double q2 = pkg.norm_ric2 + pkg.norm_riem2;
  if (q2 <= 1e-10) return {0, 0, 0, 0, 0};
  double q = std::sqrt(q2);
  double q3 = q2 * q;
  return {pkg.tau / q, pkg.norm_ric2 / q2, pkg.norm_riem2 / q2,
          pkg.norm_nabla_ric2 / q3, pkg.norm_nabla_riem2 / q3};
}

}  // namespace critlab
