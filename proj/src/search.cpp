#include "critlab/search.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "critlab/errors.hpp"
#include "critlab/linalg.hpp"

namespace critlab {

const std::vector<SearchTemplateSpec>& search_templates() {
  static const std::vector<SearchTemplateSpec> templates = [] {
    std::vector<SearchTemplateSpec> out;
    {
      SearchTemplateSpec t;
      t.id = "su2xR";
      t.description = "unimodular Milnor frame on su(2) + tilted line, lambda1 = 1";
      t.params = {{"l2", 0.25, 3}, {"l3", 0.25, 3}, {"k1", -1, 1}, {"k2", -1, 1},
                  {"k3", -1, 1}};
      t.build = [](const std::vector<double>& x) {
        return mla_su2r(1.0, x[0], x[1], x[2], x[3], x[4]);
      };
      out.push_back(std::move(t));
    }
    {
      SearchTemplateSpec t;
      t.id = "sl2xR";
      t.description = "Milnor frame with mixed signs (sl(2,R)) + tilted line";
      t.params = {{"l2", -3, -0.25}, {"l3", 0.25, 3}, {"k1", -1, 1}, {"k2", -1, 1},
                  {"k3", -1, 1}};
      t.build = [](const std::vector<double>& x) {
        return mla_su2r(1.0, x[0], x[1], x[2], x[3], x[4]);
      };
      out.push_back(std::move(t));
    }
    {
      SearchTemplateSpec t;
      t.id = "e11e2";
      t.description = "semidirect extensions of e(1,1)/e(2), lambda1 = 1";
      t.params = {{"l2", -2, 2}, {"A", -1.5, 1.5}, {"b", -2, 2}, {"C", -1.5, 1.5},
                  {"D", -1.5, 1.5}};
      t.build = [](const std::vector<double>& x) {
        return mla_e11e2(1.0, x[0], x[1], x[2], x[3], x[4]);
      };
      out.push_back(std::move(t));
    }
    {
      SearchTemplateSpec t;
      t.id = "rh3";
      t.description = "semidirect extensions of the Heisenberg algebra, gamma = 1";
      t.params = {{"a", -2, 2}, {"c", -1.5, 1.5}, {"d", -2, 2}, {"F", -1.2, 1.2},
                  {"H", -1.2, 1.2}};
      t.build = [](const std::vector<double>& x) {
        return mla_rh3(1.0, x[0], x[1], x[2], x[3], x[4]);
      };
      out.push_back(std::move(t));
    }
    {
      SearchTemplateSpec t;
      t.id = "rr3";
      t.description = "semidirect extensions of the abelian algebra, a = 1";
      t.params = {{"f", -2.5, 2.5}, {"p", -2.5, 2.5}, {"b", -2, 2}, {"c", -2, 2},
                  {"h", -2, 2}};
      t.build = [](const std::vector<double>& x) {
        return mla_rr3(1.0, x[0], x[1], x[2], x[3], x[4]);
      };
      out.push_back(std::move(t));
    }
    return out;
  }();
  return templates;
}

const SearchTemplateSpec& search_template(const std::string& id) {
  for (const auto& t : search_templates())
    if (t.id == id) return t;
  throw UnknownFamily("unknown search template: " + id +
                      " (available: su2xR, sl2xR, e11e2, rh3, rr3)");
}

namespace {

// Residual = upper-triangular components of F_t.
void eval_residual(const SearchTemplateSpec& tmpl, bool t_free, double fixed_t,
                   const std::vector<double>& x, std::vector<double>& r) {
  size_t np = tmpl.params.size();
  std::vector<double> p(x.begin(), x.begin() + np);
  double t = t_free ? x[np] : fixed_t;
  MetricLieAlgebra mla = tmpl.build(p);
  CurvatureCore<double> core = curvature_core<double>(mla.dim, mla.c);
  double a[4][4], b[4][4];
  critical_pair(core, a, b);
  r.clear();
  for (int i = 0; i < mla.dim; ++i)
    for (int j = i; j < mla.dim; ++j) r.push_back(a[i][j] + t * b[i][j]);
}

double cost_of(const std::vector<double>& r) {
  double c = 0.0;
  for (double v : r) c += v * v;
  return c;
}

struct StartResult {
  bool converged = false;
  std::vector<double> x;
  double residual_raw = 0.0;
};

StartResult run_start(const SearchTemplateSpec& tmpl, const SearchOptions& opts,
                      uint64_t start_seed) {
  Rng rng(start_seed);
  size_t np = tmpl.params.size();
  size_t nx = np + (opts.t_free ? 1 : 0);

  std::vector<double> lo(nx), hi(nx), x(nx);
  for (size_t k = 0; k < np; ++k) {
    lo[k] = tmpl.params[k].lo;
    hi[k] = tmpl.params[k].hi;
  }
  if (opts.t_free) {
    lo[np] = tmpl.t_lo;
    hi[np] = tmpl.t_hi;
  }
  for (size_t k = 0; k < nx; ++k) x[k] = rng.uniform(lo[k], hi[k]);

  std::vector<double> r, r_trial, col;
  eval_residual(tmpl, opts.t_free, opts.fixed_t, x, r);
  double cost = cost_of(r);
  double lambda = 1e-3;

  for (int iter = 0; iter < opts.max_iterations; ++iter) {
    double rmax = 0.0;
    for (double v : r) rmax = std::max(rmax, std::fabs(v));
    if (rmax < 1e-13) break;

    int m = static_cast<int>(r.size());
    Mat jac(m, static_cast<int>(nx));
    for (size_t k = 0; k < nx; ++k) {
      double h = 1e-6 * std::max(1.0, std::fabs(x[k]));
      std::vector<double> xk = x;
      xk[k] = std::min(x[k] + h, hi[k]);
      if (xk[k] == x[k]) xk[k] = x[k] - h;  // step inward at the upper wall
      double dh = xk[k] - x[k];
      eval_residual(tmpl, opts.t_free, opts.fixed_t, xk, col);
      for (int i = 0; i < m; ++i) jac(i, k) = (col[i] - r[i]) / dh;
    }

    Mat jtj = jac.transposed() * jac;
    std::vector<double> jtr(nx, 0.0);
    for (size_t k = 0; k < nx; ++k)
      for (int i = 0; i < m; ++i) jtr[k] += jac(i, static_cast<int>(k)) * r[i];

    bool stepped = false;
    for (int damp = 0; damp < 16 && !stepped; ++damp) {
      Mat sys = jtj;
      for (size_t k = 0; k < nx; ++k)
        sys(static_cast<int>(k), static_cast<int>(k)) +=
            lambda * (jtj(static_cast<int>(k), static_cast<int>(k)) + 1e-12);
      std::vector<double> neg(jtr);
      for (auto& v : neg) v = -v;
      std::vector<double> delta;
      if (!solve_square(sys, neg, delta, 0.0)) {
        lambda *= 10;
        continue;
      }
      std::vector<double> xt(nx);
      for (size_t k = 0; k < nx; ++k)
        xt[k] = std::clamp(x[k] + delta[k], lo[k], hi[k]);
      eval_residual(tmpl, opts.t_free, opts.fixed_t, xt, r_trial);
      double trial_cost = cost_of(r_trial);
      if (trial_cost < cost) {
        x = xt;
        r = r_trial;
        cost = trial_cost;
        lambda = std::max(lambda * 0.4, 1e-12);
        stepped = true;
      } else {
        lambda *= 2.5;
      }
    }
    if (!stepped) break;  // stalled
  }

  StartResult out;
  out.x = x;
  double rmax = 0.0;
  for (double v : r) rmax = std::max(rmax, std::fabs(v));
  out.residual_raw = rmax;
  out.converged = rmax <= opts.tol * 10;  // final verdict uses the normalized residual
  return out;
}

}  // namespace

SearchOutcome search_critical(const SearchTemplateSpec& tmpl, const SearchOptions& opts) {
  SearchOutcome outcome;
  outcome.starts = opts.starts;
  std::vector<StartResult> results(opts.starts);
  parallel_for(opts.starts, opts.threads, [&](int s) {
    results[s] = run_start(tmpl, opts, derive_seed(opts.seed, static_cast<uint64_t>(s)));
  });

  size_t np = tmpl.params.size();
  std::vector<SearchHit> hits;
  int converged = 0;
  for (const auto& res : results) {
    if (!res.converged) continue;
    std::vector<double> p(res.x.begin(), res.x.begin() + np);
    double t = opts.t_free ? res.x[np] : opts.fixed_t;
    MetricLieAlgebra mla = tmpl.build(p);
    double scale = mla.max_abs_c();
    MetricLieAlgebra nmla = scale > 0 ? scale_structure(mla, 1.0 / scale) : mla;
    CurvaturePackage pkg = curvature_package(nmla);
    auto [a, b] = split_affine(pkg);
    double rmax = 0.0;
    for (int i = 0; i < pkg.dim; ++i)
      for (int j = 0; j < pkg.dim; ++j)
        rmax = std::max(rmax, std::fabs(a.m[i][j] + t * b.m[i][j]));
    if (rmax > opts.tol) continue;
    ++converged;

    SearchHit hit;
    hit.params = p;
    hit.t = t;
    hit.residual = rmax;
    hit.crit = solve_critical_t(pkg, opts.tol);
    hit.fp = fingerprint(pkg, opts.tol);
    hit.invariants = invariant_vector(pkg);
    hits.push_back(std::move(hit));
  }
  outcome.converged = converged;

  // Deterministic order, then deduplication by invariant distance.
  std::sort(hits.begin(), hits.end(), [](const SearchHit& x, const SearchHit& y) {
    if (x.residual != y.residual) return x.residual < y.residual;
    for (int i = 0; i < 5; ++i)
      if (x.invariants[i] != y.invariants[i]) return x.invariants[i] < y.invariants[i];
    return x.t < y.t;
  });
  std::vector<SearchHit> unique_hits;
  for (auto& hit : hits) {
    bool dup = false;
    for (const auto& kept : unique_hits) {
      double d = 0.0;
      for (int i = 0; i < 5; ++i)
        d = std::max(d, std::fabs(hit.invariants[i] - kept.invariants[i]));
      bool both_unique = hit.crit.kind == CriticalityResult::Kind::Unique &&
                         kept.crit.kind == CriticalityResult::Kind::Unique;
      if (both_unique) d = std::max(d, std::fabs(hit.crit.t - kept.crit.t));
      if (hit.crit.kind == kept.crit.kind && d <= 1e-5) {
        dup = true;
        break;
      }
    }
    if (!dup) unique_hits.push_back(std::move(hit));
  }

  if (opts.match_catalog)
    for (auto& hit : unique_hits)
      hit.match = match_to_catalog(hit.invariants, hit.crit);

  if (unique_hits.empty()) {
    std::ostringstream diag;
    diag << "no start converged below tol=" << opts.tol << " (" << opts.starts
         << " starts)";
    outcome.diagnostics = diag.str();
  }
  outcome.hits = std::move(unique_hits);
  return outcome;
}

}  // namespace critlab
