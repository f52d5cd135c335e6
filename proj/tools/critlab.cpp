// critlab: verification and search driver for critical homogeneous metrics.

#include <CLI11.hpp>
#include <cstdio>
#include <fstream>
#include <iostream>

#include "critlab/errors.hpp"
#include "critlab/report.hpp"
#include "critlab/symbolic.hpp"

using namespace critlab;

namespace {

void write_output(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text << "\n";
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw FileNotFound("cannot open output file: " + out_path);
  out << text;
}

// Loads a metric file and keeps both the as-given and unit-normalized packages.
struct LoadedMetric {
  MetricLieAlgebra mla;
  CurvaturePackage pkg;         // as given
  CurvaturePackage normalized;  // max |c| = 1
  double scale = 1.0;
};

LoadedMetric load_metric(const std::string& path) {
  LoadedMetric lm;
  lm.mla = load_metric_file(path);
  lm.pkg = curvature_package(lm.mla);
  double norm = lm.mla.max_abs_c();
  lm.scale = norm > 0 ? norm : 1.0;
  lm.normalized =
      norm > 0 ? curvature_package(scale_structure(lm.mla, 1.0 / norm)) : lm.pkg;
  return lm;
}

Jv criticality_json(const CriticalityResult& crit) {
  Jv j = Jv::obj();
  switch (crit.kind) {
    case CriticalityResult::Kind::AllT: j.set("kind", Jv::str("all-t")); break;
    case CriticalityResult::Kind::Unique: j.set("kind", Jv::str("unique")); break;
    case CriticalityResult::Kind::NotCritical:
      j.set("kind", Jv::str("not-critical"));
      break;
  }
  if (crit.kind == CriticalityResult::Kind::Unique) j.set("t", Jv::num(crit.t));
  j.set("residual", Jv::num(crit.residual));
  j.set("a_norm", Jv::num(crit.a_norm));
  j.set("b_norm", Jv::num(crit.b_norm));
  return j;
}

Jv metric_analysis(const LoadedMetric& lm, double tol) {
  Jv j = Jv::obj();
  j.set("label", Jv::str(lm.mla.label));
  j.set("normalization", Jv::num(lm.scale));
  j.set("jacobi_defect", Jv::num(jacobi_defect(lm.mla)));
  j.set("unimodular", Jv::boolean(is_unimodular(lm.mla)));
  CriticalityResult crit = solve_critical_t(lm.normalized, tol);
  j.set("criticality", criticality_json(crit));
  Jv scalars = Jv::obj();
  scalars.set("tau", Jv::num(lm.pkg.tau));
  scalars.set("ric_norm2", Jv::num(lm.pkg.norm_ric2));
  scalars.set("riem_norm2", Jv::num(lm.pkg.norm_riem2));
  scalars.set("nabla_ric_norm2", Jv::num(lm.pkg.norm_nabla_ric2));
  scalars.set("nabla_riem_norm2", Jv::num(lm.pkg.norm_nabla_riem2));
  j.set("scalars", std::move(scalars));
  j.set("fingerprint", fingerprint_json(fingerprint(lm.normalized, tol)));
  if (crit.kind == CriticalityResult::Kind::Unique)
    j.set("energy_at_t", Jv::num(energy(lm.pkg, crit.t).energy));
  if (lm.pkg.dim == 4)
    j.set("bach_flat", Jv::boolean(is_bach_flat(lm.normalized, tol)));
  auto cert = algebraic_soliton_check(lm.mla, tol);
  if (cert) {
    Jv s = Jv::obj();
    s.set("lambda", Jv::num(cert->lambda));
    s.set("residual", Jv::num(cert->residual));
    j.set("soliton", std::move(s));
  } else {
    j.set("soliton", Jv::null());
  }
  return j;
}

int run(int argc, char** argv) {
  CLI::App app{"critical homogeneous metric verification and search"};
  app.require_subcommand(1);

  int threads = 0;
  app.add_option("--threads", threads,
                 "worker threads (default: CRITLAB_THREADS or hardware)");

  bool exit_fail = false;

  // ---- list-families
  auto* cmd_list = app.add_subcommand("list-families", "print the classification");
  std::string list_format = "table";
  std::string list_out;
  cmd_list->add_option("--format", list_format, "table|json")
      ->check(CLI::IsMember({"table", "json"}));
  cmd_list->add_option("--out", list_out, "write to file instead of stdout");
  cmd_list->callback([&] {
    if (list_format == "json") {
      write_output(families_json(), list_out);
      return;
    }
    std::ostringstream os;
    os << "id       group                        zero-energy soliton  t-range\n";
    for (const auto& spec : list_families()) {
      std::string trange;
      char num[64];
      if (spec.t_range.all_t) {
        trange = "all t";
      } else if (spec.t_range.lo <= -1e299) {
        std::snprintf(num, sizeof(num), "(-inf, %.6g)", spec.t_range.hi);
        trange = num;
      } else if (spec.t_range.lo == spec.t_range.hi) {
        std::snprintf(num, sizeof(num), "t = %.6g", spec.t_range.lo);
        trange = num;
      } else {
        std::snprintf(num, sizeof(num), "%c%.6g, %.6g%c",
                      spec.t_range.open_lo ? '(' : '[', spec.t_range.lo,
                      spec.t_range.hi, spec.t_range.open_hi ? ')' : ']');
        trange = num;
      }
      std::string alias = spec.alias_of.empty() ? "" : ("  (= " + spec.alias_of + ")");
      char line[256];
      std::snprintf(line, sizeof(line), "%-8s %-28s %-11s %-8s %s%s\n",
                    spec.id.c_str(), spec.group.c_str(),
                    spec.zero_energy ? "yes" : "no", spec.soliton ? "yes" : "no",
                    trange.c_str(), alias.c_str());
      os << line;
    }
    write_output(os.str(), list_out);
  });

  // ---- verify
  auto* cmd_verify =
      app.add_subcommand("verify", "verify families against their closed forms");
  std::string verify_family_id;
  bool verify_all = false;
  int samples = 16;
  double tol = 1e-9;
  uint64_t seed = 0;
  std::string out_path;
  std::string format = "json";
  cmd_verify->add_option("--family", verify_family_id, "family id (e.g. R.3)");
  cmd_verify->add_flag("--all", verify_all, "verify every family");
  cmd_verify->add_option("--samples", samples, "samples per family")->default_val(16);
  cmd_verify->add_option("--tol", tol, "residual tolerance")->default_val(1e-9);
  cmd_verify->add_option("--seed", seed, "sampling seed")->default_val(0);
  cmd_verify->add_option("--out", out_path, "write report to file");
  cmd_verify->add_option("--format", format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd_verify->callback([&] {
    if (!verify_all && verify_family_id.empty())
      throw UnknownFamily("verify needs --family ID or --all");
    std::vector<std::string> ids;
    if (verify_all)
      for (const auto& spec : list_families()) ids.push_back(spec.id);
    else
      ids.push_back(verify_family_id);
    std::vector<VerificationReport> reports;
    int nthreads = resolve_threads(threads);
    for (const auto& id : ids)
      reports.push_back(verify_family(id, samples, tol, seed, nthreads));
    bool all_pass = true;
    for (const auto& rep : reports) all_pass = all_pass && rep.pass();
    if (format == "csv") {
      write_output(verification_csv(reports), out_path);
    } else {
      Jv env = report_envelope(
          verify_all ? "verify --all" : "verify " + verify_family_id, seed);
      Jv items = Jv::arr();
      for (const auto& rep : reports) items.push(verification_json(rep));
      env.set("items", std::move(items));
      env.set("pass", Jv::boolean(all_pass));
      write_output(env.dump(), out_path);
    }
    if (!all_pass) exit_fail = true;
  });

  // ---- check
  auto* cmd_check = app.add_subcommand("check", "classify the metric in FILE");
  std::string file_path;
  double fixed_t = 0.0;
  cmd_check->add_option("file", file_path, "metric spec JSON")->required();
  auto* topt = cmd_check->add_option("--t", fixed_t, "evaluate F_t at this t");
  cmd_check->add_option("--tol", tol, "tolerance")->default_val(1e-9);
  cmd_check->add_option("--out", out_path, "write report to file");
  cmd_check->callback([&] {
    LoadedMetric lm = load_metric(file_path);
    Jv env = report_envelope("check " + file_path, 0);
    Jv item = metric_analysis(lm, tol);
    if (topt->count() > 0) {
      SymMat f = critical_tensor(lm.normalized, fixed_t);
      item.set("residual_at_t", Jv::num(f.max_abs()));
      item.set("critical_at_t", Jv::boolean(f.max_abs() <= tol));
      if (f.max_abs() > tol) exit_fail = true;
    } else if (solve_critical_t(lm.normalized, tol).kind ==
               CriticalityResult::Kind::NotCritical) {
      exit_fail = true;
    }
    Jv items = Jv::arr();
    items.push(std::move(item));
    env.set("items", std::move(items));
    write_output(env.dump(), out_path);
  });

  // ---- solve-t
  auto* cmd_solve =
      app.add_subcommand("solve-t", "solve the critical parameter for FILE");
  cmd_solve->add_option("file", file_path, "metric spec JSON")->required();
  cmd_solve->add_option("--tol", tol)->default_val(1e-9);
  cmd_solve->add_option("--out", out_path);
  cmd_solve->callback([&] {
    LoadedMetric lm = load_metric(file_path);
    CriticalityResult crit = solve_critical_t(lm.normalized, tol);
    Jv env = report_envelope("solve-t " + file_path, 0);
    Jv items = Jv::arr();
    items.push(criticality_json(crit));
    env.set("items", std::move(items));
    write_output(env.dump(), out_path);
    if (crit.kind == CriticalityResult::Kind::NotCritical) exit_fail = true;
  });

  // ---- energy
  auto* cmd_energy =
      app.add_subcommand("energy", "energy |ric|^2 + t tau^2 of the metric in FILE");
  cmd_energy->add_option("file", file_path)->required();
  auto* eopt = cmd_energy->add_option("--t", fixed_t, "functional parameter");
  cmd_energy->add_option("--out", out_path);
  cmd_energy->callback([&] {
    LoadedMetric lm = load_metric(file_path);
    double t_used = fixed_t;
    if (eopt->count() == 0) {
      CriticalityResult crit = solve_critical_t(lm.normalized, 1e-9);
      if (crit.kind != CriticalityResult::Kind::Unique)
        throw OutOfDomain("energy needs --t VALUE unless the metric has a unique t");
      t_used = crit.t;
    }
    Jv env = report_envelope("energy " + file_path, 0);
    Jv item = Jv::obj();
    item.set("t", Jv::num(t_used));
    item.set("energy", Jv::num(energy(lm.pkg, t_used).energy));
    item.set("energy_normalized", Jv::num(energy(lm.normalized, t_used).energy));
    Jv items = Jv::arr();
    items.push(std::move(item));
    env.set("items", std::move(items));
    write_output(env.dump(), out_path);
  });

  // ---- invariants
  auto* cmd_inv = app.add_subcommand("invariants", "scalar invariants and fingerprint");
  cmd_inv->add_option("file", file_path)->required();
  cmd_inv->add_option("--out", out_path);
  cmd_inv->callback([&] {
    LoadedMetric lm = load_metric(file_path);
    Jv env = report_envelope("invariants " + file_path, 0);
    Jv items = Jv::arr();
    items.push(metric_analysis(lm, 1e-9));
    env.set("items", std::move(items));
    write_output(env.dump(), out_path);
  });

  // ---- soliton
  auto* cmd_soliton = app.add_subcommand("soliton", "algebraic Ricci soliton check");
  cmd_soliton->add_option("file", file_path)->required();
  cmd_soliton->add_option("--tol", tol)->default_val(1e-9);
  cmd_soliton->add_option("--out", out_path);
  cmd_soliton->callback([&] {
    LoadedMetric lm = load_metric(file_path);
    auto cert = algebraic_soliton_check(lm.mla, tol);
    Jv env = report_envelope("soliton " + file_path, 0);
    Jv item = Jv::obj();
    if (cert) {
      item.set("soliton", Jv::boolean(true));
      item.set("lambda", Jv::num(cert->lambda));
      item.set("residual", Jv::num(cert->residual));
      item.set("derivation_defect", Jv::num(cert->derivation_defect));
      Jv rows = Jv::arr();
      for (int i = 0; i < lm.mla.dim; ++i) {
        Jv row = Jv::arr();
        for (int j = 0; j < lm.mla.dim; ++j) row.push(Jv::num(cert->derivation(i, j)));
        rows.push(std::move(row));
      }
      item.set("derivation", std::move(rows));
      auto chk = soliton_expected_criticality(*cert, lm.pkg);
      item.set("zero_energy_consistent", Jv::boolean(chk.consistent));
    } else {
      item.set("soliton", Jv::boolean(false));
      exit_fail = true;
    }
    Jv items = Jv::arr();
    items.push(std::move(item));
    env.set("items", std::move(items));
    write_output(env.dump(), out_path);
  });

  // ---- search
  auto* cmd_search =
      app.add_subcommand("search", "multistart search for critical metrics");
  std::string template_id;
  int starts = 64;
  cmd_search->add_option("--template", template_id, "su2xR|sl2xR|e11e2|rh3|rr3")
      ->required();
  cmd_search->add_option("--starts", starts)->default_val(64);
  cmd_search->add_option("--seed", seed)->default_val(0);
  cmd_search->add_option("--tol", tol)->default_val(1e-9);
  cmd_search->add_option("--out", out_path);
  cmd_search->callback([&] {
    const SearchTemplateSpec& tmpl = search_template(template_id);
    SearchOptions opts;
    opts.starts = starts;
    opts.seed = seed;
    opts.tol = tol;
    opts.threads = resolve_threads(threads);
    SearchOutcome out = search_critical(tmpl, opts);
    Jv env = report_envelope("search --template " + template_id, seed);
    env.set("starts", Jv::integer(out.starts));
    env.set("converged", Jv::integer(out.converged));
    Jv items = Jv::arr();
    for (const auto& hit : out.hits) items.push(search_hit_json(tmpl, hit));
    env.set("items", std::move(items));
    if (!out.diagnostics.empty()) env.set("diagnostics", Jv::str(out.diagnostics));
    write_output(env.dump(), out_path);
  });

  // ---- symbolic
  auto* cmd_symbolic = app.add_subcommand("symbolic", "exact closed-form verification");
  std::string sym_family;
  bool sym_all = false;
  cmd_symbolic->add_option("--family", sym_family, "family id with rational data");
  cmd_symbolic->add_flag("--all", sym_all, "verify every rational family");
  cmd_symbolic->add_option("--out", out_path);
  cmd_symbolic->callback([&] {
    std::vector<std::string> ids;
    if (sym_all)
      ids = symbolically_verifiable_families();
    else if (!sym_family.empty())
      ids.push_back(sym_family);
    else
      throw UnknownFamily("symbolic needs --family ID or --all");
    Jv env = report_envelope(sym_all ? "symbolic --all" : "symbolic " + sym_family, 0);
    Jv items = Jv::arr();
    bool all_ok = true;
    for (const auto& id : ids) {
      SymbolicProof proof = verify_family_symbolically(id);
      Jv item = Jv::obj();
      item.set("family", Jv::str(proof.family_id));
      item.set("verified", Jv::boolean(proof.verified));
      item.set("components", Jv::integer(proof.components));
      item.set("t_numerator", Jv::str(proof.t_numerator));
      item.set("t_denominator", Jv::str(proof.t_denominator));
      Jv cons = Jv::arr();
      for (const auto& c : proof.constraints) cons.push(Jv::str(c));
      item.set("constraints", std::move(cons));
      if (!proof.verified) item.set("failure", Jv::str(proof.failure_detail));
      items.push(std::move(item));
      all_ok = all_ok && proof.verified;
    }
    env.set("items", std::move(items));
    env.set("pass", Jv::boolean(all_ok));
    write_output(env.dump(), out_path);
    if (!all_ok) exit_fail = true;
  });

  // ---- report (full catalog verification in one document)
  auto* cmd_report = app.add_subcommand("report", "full catalog verification report");
  cmd_report->add_option("--format", format, "json|csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd_report->add_option("--samples", samples)->default_val(16);
  cmd_report->add_option("--seed", seed)->default_val(0);
  cmd_report->add_option("--out", out_path);
  cmd_report->callback([&] {
    std::vector<VerificationReport> reports;
    int nthreads = resolve_threads(threads);
    for (const auto& spec : list_families())
      reports.push_back(verify_family(spec.id, samples, 1e-9, seed, nthreads));
    bool all_pass = true;
    for (const auto& rep : reports) all_pass = all_pass && rep.pass();
    if (format == "csv") {
      write_output(verification_csv(reports), out_path);
    } else {
      Jv env = report_envelope("report", seed);
      Jv items = Jv::arr();
      for (const auto& rep : reports) items.push(verification_json(rep));
      env.set("items", std::move(items));
      env.set("pass", Jv::boolean(all_pass));
      write_output(env.dump(), out_path);
    }
    if (!all_pass) exit_fail = true;
  });

  CLI11_PARSE(app, argc, argv);
  return exit_fail ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
