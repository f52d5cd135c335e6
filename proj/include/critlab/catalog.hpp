#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "critlab/algebra.hpp"
#include "critlab/criticality.hpp"
#include "critlab/fingerprint.hpp"
#include "critlab/soliton.hpp"
#include "critlab/util.hpp"

namespace critlab {

// Sampling interval for one free parameter (union of closed/open pieces).
// `unbounded_hi` marks pieces whose mathematical domain continues past the
// sampling cap `hi`; the catalog matcher extends such pieces (the closed-form
// builders are valid on the whole tail).
struct ParamInterval {
  double lo, hi;
  bool open_lo = false, open_hi = false;
  bool unbounded_hi = false;
};

struct ParamSpec {
  std::string name;
  std::vector<ParamInterval> pieces;
  bool integral = false;  // branch/representative selectors
};

struct TRange {
  bool all_t = false;
  double lo = 0.0, hi = 0.0;   // hull; lo = -inf encoded as -1e300
  bool open_lo = false, open_hi = false;
};

struct FamilySpec {
  std::string id;
  std::string group;
  std::string description;
  std::vector<ParamSpec> params;
  // Defining polynomials solved for the dependent parameters (text form
  // parsable by poly_parse when the coefficients are rational).
  std::vector<std::string> constraint_polynomials;
  bool zero_energy = false;
  bool soliton = false;
  TRange t_range;
  std::string alias_of;     // non-empty for SOLV.* entries
  std::string symbolic_id;  // non-empty when verify_family_symbolically applies
};

// A concrete member of a family: dependent constraints solved, metric built.
struct FamilyInstance {
  std::string family_id;
  std::map<std::string, double> params;  // free and solved parameters
  bool has_brackets = false;
  MetricLieAlgebra mla;  // valid iff has_brackets
  CurvaturePackage pkg;
  bool expected_all_t = false;
  double expected_t = 0.0;  // valid iff !expected_all_t
  double expected_energy = 0.0;
  bool expected_soliton = false;
};

// The four group bracket patterns with explicit parameters (all of them
// satisfy the Jacobi identity for every parameter value).
MetricLieAlgebra mla_su2r(double l1, double l2, double l3, double k1, double k2,
                          double k3);
MetricLieAlgebra mla_e11e2(double l1, double l2, double A, double b, double C, double D);
MetricLieAlgebra mla_rh3(double gamma, double a, double c, double d, double F, double H);
MetricLieAlgebra mla_rr3(double a, double f, double p, double b, double c, double h);

const std::vector<FamilySpec>& list_families();
const FamilySpec& family_spec(const std::string& id);  // throws UnknownFamily

// Resolves dependent parameters and builds the metric. Throws OutOfDomain for
// parameters outside the stated ranges, NoRoot if a constraint solve fails.
FamilyInstance build_instance(const std::string& id,
                              const std::map<std::string, double>& free_params);

double family_t(const std::string& id, const std::map<std::string, double>& free_params);
double family_energy(const std::string& id,
                     const std::map<std::string, double>& free_params);

// Draws admissible free parameters uniformly (open endpoints excluded by a
// 1e-6 margin, excluded points rejected and resampled).
std::map<std::string, double> sample_params(const FamilySpec& spec, Rng& rng);

struct SampleCheck {
  std::map<std::string, double> params;
  double jacobi = 0.0;
  double residual = 0.0;        // max |F_t| on unit-normalized constants
  double t = 0.0;               // solver t (NaN-free; 0 for AllT)
  bool all_t = false;
  double t_error = 0.0;         // |t - closed form|
  double energy = 0.0;
  double energy_error = 0.0;
  bool soliton = false;
  bool soliton_checked = false;  // false for analytic-package families
  Fingerprint fp;
  bool t_in_range = true;
  bool pass = false;
};

struct VerificationReport {
  std::string family_id;
  int samples = 0;
  int failures = 0;
  double worst_residual = 0.0;
  double worst_t_error = 0.0;
  double worst_energy_error = 0.0;
  std::vector<SampleCheck> checks;
  bool pass() const { return failures == 0; }
};

VerificationReport verify_family(const std::string& id, int samples, double tol,
                                 uint64_t seed, int threads = 1);

// Change-of-basis identifications between product models and their images in
// the solvable classification.
struct AliasIdentification {
  std::string alias_id;    // catalog id of the product model
  std::string target_id;   // catalog id it maps onto
  std::map<std::string, double> target_params;
  LinearMap map;           // orthogonal frame map
  double scale;            // structure-constant scale applied after the map
};

std::vector<AliasIdentification> alias_identifications();

// Machine-readable classification table.
std::string families_json();

// Special parameter choices that are F_{-1/3}-critical (Bach-flat).
std::vector<std::pair<std::string, std::map<std::string, double>>> bach_flat_specials();

// Nearest catalog point to a given invariant vector (plus critical t when both
// sides are uniquely critical); used to match numerical search hits.
struct CatalogMatch {
  std::string family_id;
  std::map<std::string, double> params;
  double distance = 1e300;
};

CatalogMatch match_to_catalog(const std::array<double, 5>& invariants,
                              const CriticalityResult& crit);

// Root constants of the classification, refined by bisection at load.
double catalog_zeta();     // real root of 8p^3+15p^2+3p+1
double catalog_theta();    // real root of 192t^3+1152t^2+1865t+923

}  // namespace critlab
