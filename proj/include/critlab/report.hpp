#pragma once

#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "critlab/catalog.hpp"
#include "critlab/search.hpp"

namespace critlab {

inline constexpr const char* kToolVersion = "0.1.0";

// Order-preserving JSON value with fixed float formatting (17 significant
// digits), so reports are byte-identical for identical inputs and seed.
class Jv {
 public:
  static Jv obj() { return Jv(Kind::Object); }
  static Jv arr() { return Jv(Kind::Array); }
  static Jv num(double v);
  static Jv integer(long long v);
  static Jv str(std::string v);
  static Jv boolean(bool v);
  static Jv null();

  Jv& set(const std::string& key, Jv v);
  Jv& push(Jv v);
  std::string dump() const;

 private:
  enum class Kind { Object, Array, Number, String, Bool, Null };
  explicit Jv(Kind k) : kind_(k) {}
  Kind kind_ = Kind::Null;
  std::string scalar_;
  std::vector<std::pair<std::string, Jv>> members_;
  std::vector<Jv> elements_;
};

// Standard report envelope: {"schema":1,"tool":...,"version":...,"command":...,
// "seed":...,"items":[...]}.
Jv report_envelope(const std::string& command, uint64_t seed);

Jv fingerprint_json(const Fingerprint& fp);
Jv sample_check_json(const SampleCheck& check);
Jv verification_json(const VerificationReport& report);
Jv search_hit_json(const SearchTemplateSpec& tmpl, const SearchHit& hit);

// CSV with columns: id,params,t,residual,energy,soliton,r1,r2,r3,r4,pass
std::string verification_csv(const std::vector<VerificationReport>& reports);

}  // namespace critlab
