#include "critlab/report.hpp"

#include <sstream>

namespace critlab {

Jv Jv::num(double v) {
  Jv j(Kind::Number);
  j.scalar_ = format_double17(v);
  return j;
}

Jv Jv::integer(long long v) {
  Jv j(Kind::Number);
  j.scalar_ = std::to_string(v);
  return j;
}

Jv Jv::str(std::string v) {
  Jv j(Kind::String);
  j.scalar_ = std::move(v);
  return j;
}

Jv Jv::boolean(bool v) {
  Jv j(Kind::Bool);
  j.scalar_ = v ? "true" : "false";
  return j;
}

Jv Jv::null() { return Jv(Kind::Null); }

Jv& Jv::set(const std::string& key, Jv v) {
  members_.emplace_back(key, std::move(v));
  return *this;
}

Jv& Jv::push(Jv v) {
  elements_.push_back(std::move(v));
  return *this;
}

namespace {
void escape_into(std::ostringstream& os, const std::string& s) {
  os << '"';
  for (char ch : s) {
    switch (ch) {
      case '"': os << "\\\""; break;
      case '\\': os << "\\\\"; break;
      case '\n': os << "\\n"; break;
      case '\t': os << "\\t"; break;
      case '\r': os << "\\r"; break;
      default:
        if (static_cast<unsigned char>(ch) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", ch);
          os << buf;
        } else {
          os << ch;
        }
    }
  }
  os << '"';
}
}  // namespace

std::string Jv::dump() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::Object: {
      os << '{';
      bool first = true;
      for (const auto& [k, v] : members_) {
        if (!first) os << ',';
        first = false;
        escape_into(os, k);
        os << ':' << v.dump();
      }
      os << '}';
      break;
    }
    case Kind::Array: {
      os << '[';
      bool first = true;
      for (const auto& v : elements_) {
        if (!first) os << ',';
        first = false;
        os << v.dump();
      }
      os << ']';
      break;
    }
    case Kind::Number:
    case Kind::Bool:
      os << scalar_;
      break;
    case Kind::String:
      escape_into(os, scalar_);
      break;
    case Kind::Null:
      os << "null";
      break;
  }
  return os.str();
}

Jv report_envelope(const std::string& command, uint64_t seed) {
  Jv env = Jv::obj();
  env.set("schema", Jv::integer(1));
  env.set("tool", Jv::str("critlab"));
  env.set("version", Jv::str(kToolVersion));
  env.set("command", Jv::str(command));
  env.set("seed", Jv::integer(static_cast<long long>(seed)));
  return env;
}

Jv fingerprint_json(const Fingerprint& fp) {
  Jv j = Jv::obj();
  switch (fp.kind) {
    case CriticalityResult::Kind::AllT: j.set("t", Jv::str("all")); break;
    case CriticalityResult::Kind::Unique: j.set("t", Jv::num(fp.t_star)); break;
    case CriticalityResult::Kind::NotCritical: j.set("t", Jv::null()); break;
  }
  j.set("mode", Jv::str(fp.mode_name()));
  Jv ratios = Jv::arr();
  for (double r : fp.r) ratios.push(Jv::num(r));
  j.set("ratios", std::move(ratios));
  return j;
}

Jv sample_check_json(const SampleCheck& check) {
  Jv j = Jv::obj();
  Jv params = Jv::obj();
  for (const auto& [k, v] : check.params) params.set(k, Jv::num(v));
  j.set("params", std::move(params));
  j.set("jacobi", Jv::num(check.jacobi));
  j.set("residual", Jv::num(check.residual));
  if (check.all_t)
    j.set("t", Jv::str("all"));
  else
    j.set("t", Jv::num(check.t));
  j.set("t_error", Jv::num(check.t_error));
  j.set("energy", Jv::num(check.energy));
  j.set("energy_error", Jv::num(check.energy_error));
  if (check.soliton_checked) j.set("soliton", Jv::boolean(check.soliton));
  j.set("fingerprint", fingerprint_json(check.fp));
  j.set("pass", Jv::boolean(check.pass));
  return j;
}

Jv verification_json(const VerificationReport& report) {
  Jv j = Jv::obj();
  j.set("family", Jv::str(report.family_id));
  j.set("samples", Jv::integer(report.samples));
  j.set("failures", Jv::integer(report.failures));
  j.set("worst_residual", Jv::num(report.worst_residual));
  j.set("worst_t_error", Jv::num(report.worst_t_error));
  j.set("worst_energy_error", Jv::num(report.worst_energy_error));
  Jv checks = Jv::arr();
  for (const auto& check : report.checks) checks.push(sample_check_json(check));
  j.set("checks", std::move(checks));
  j.set("pass", Jv::boolean(report.pass()));
  return j;
}

Jv search_hit_json(const SearchTemplateSpec& tmpl, const SearchHit& hit) {
  Jv j = Jv::obj();
  Jv params = Jv::obj();
  for (size_t k = 0; k < tmpl.params.size(); ++k)
    params.set(tmpl.params[k].name, Jv::num(hit.params[k]));
  j.set("params", std::move(params));
  j.set("t", Jv::num(hit.t));
  j.set("residual", Jv::num(hit.residual));
  j.set("fingerprint", fingerprint_json(hit.fp));
  Jv inv = Jv::arr();
  for (double v : hit.invariants) inv.push(Jv::num(v));
  j.set("invariants", std::move(inv));
  if (!hit.match.family_id.empty()) {
    Jv m = Jv::obj();
    m.set("family", Jv::str(hit.match.family_id));
    Jv mp = Jv::obj();
    for (const auto& [k, v] : hit.match.params) mp.set(k, Jv::num(v));
    m.set("params", std::move(mp));
    m.set("distance", Jv::num(hit.match.distance));
    j.set("match", std::move(m));
  }
  return j;
}

std::string verification_csv(const std::vector<VerificationReport>& reports) {
  std::ostringstream os;
  os << "id,params,t,residual,energy,soliton,r1,r2,r3,r4,pass\n";
  for (const auto& report : reports) {
    for (const auto& check : report.checks) {
      os << report.family_id << ",";
      bool first = true;
      os << '"';
      for (const auto& [k, v] : check.params) {
        if (!first) os << ';';
        first = false;
        os << k << '=' << format_double17(v);
      }
      os << '"' << ',';
      if (check.all_t)
        os << "all";
      else
        os << format_double17(check.t);
      os << ',' << format_double17(check.residual) << ','
         << format_double17(check.energy) << ','
         << (check.soliton_checked ? (check.soliton ? "true" : "false") : "n/a");
      for (double r : check.fp.r) os << ',' << format_double17(r);
      os << ',' << (check.pass ? "true" : "false") << '\n';
    }
  }
  return os.str();
}

}  // namespace critlab
