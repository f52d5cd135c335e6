#pragma once

#include <array>
#include <string>

#include "critlab/criticality.hpp"

namespace critlab {

// Homothety-class invariants. In the generic case (tau != 0) the components
// are the dimensionless ratios
//   r1 = |ric|^2 tau^-2, r2 = |R|^2 tau^-2, r3 = |nabla ric|^2 tau^-3,
//   r4 = |nabla R|^2 tau^-3,
// together with the critical parameter t (or an all-t marker). When tau
// vanishes the ratios fall back to tau-free ones; a flat metric is its own
// mode. Equal fingerprints do NOT prove homothety; reports say "not separated".
struct Fingerprint {
  enum class Mode { Normal, TauFree, Flat };

  CriticalityResult::Kind kind = CriticalityResult::Kind::NotCritical;
  double t_star = 0.0;  // least-squares t; meaningful iff kind == Unique
  Mode mode = Mode::Normal;
  std::array<double, 4> r = {0, 0, 0, 0};

  std::string mode_name() const {
    switch (mode) {
      case Mode::Normal: return "normal";
      case Mode::TauFree: return "tau-free";
      case Mode::Flat: return "flat";
    }
    return "?";
  }
};

Fingerprint fingerprint(const CurvaturePackage& pkg, double tol = kCriticalTol);

// True iff some comparable component differs by more than tol.
// Throws ModeMismatch when the two fingerprints use different fallback modes.
bool distinct(const Fingerprint& f1, const Fingerprint& f2, double tol);

// Max component difference; +infinity on mode mismatch (never throws).
double fingerprint_distance(const Fingerprint& f1, const Fingerprint& f2);

// Scale-invariant curvature vector that stays smooth across tau = 0 and
// Einstein loci; used to match numerical search hits against the catalog.
//   q = sqrt(|ric|^2 + |R|^2),
//   v = (tau/q, |ric|^2/q^2, |R|^2/q^2, |nabla ric|^2/q^3, |nabla R|^2/q^3).
// Flat metrics map to the zero vector.
std::array<double, 5> invariant_vector(const CurvaturePackage& pkg);

}  // namespace critlab
