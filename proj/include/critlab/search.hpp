#pragma once

#include <functional>
#include <string>
#include <vector>

#include "critlab/catalog.hpp"

namespace critlab {

struct SearchParam {
  std::string name;
  double lo, hi;
};

// A bracket pattern with box-constrained free parameters and one homothety
// normalization already fixed.
struct SearchTemplateSpec {
  std::string id;
  std::string description;
  std::vector<SearchParam> params;
  double t_lo = -8.0, t_hi = 1.0;
  std::function<MetricLieAlgebra(const std::vector<double>&)> build;
};

const std::vector<SearchTemplateSpec>& search_templates();
const SearchTemplateSpec& search_template(const std::string& id);  // UnknownFamily

struct SearchHit {
  std::vector<double> params;
  double t = 0.0;
  double residual = 0.0;  // max |F_t| on unit-normalized constants
  CriticalityResult crit;
  Fingerprint fp;
  std::array<double, 5> invariants{};
  CatalogMatch match;  // nearest catalog point (filled when requested)
};

struct SearchOptions {
  bool t_free = true;
  double fixed_t = 0.0;  // used when !t_free
  int starts = 64;
  uint64_t seed = 0;
  double tol = 1e-9;
  int max_iterations = 500;
  int threads = 1;
  bool match_catalog = true;
};

struct SearchOutcome {
  std::vector<SearchHit> hits;  // deduplicated, sorted by residual then invariants
  int starts = 0;
  int converged = 0;
  std::string diagnostics;
};

// Multistart damped least-squares minimization of sum F_t[i][j]^2 over
// (parameters, t). All-starts failure is reported in the outcome, never thrown.
SearchOutcome search_critical(const SearchTemplateSpec& tmpl, const SearchOptions& opts);

}  // namespace critlab
