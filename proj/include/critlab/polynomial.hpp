#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "critlab/rational.hpp"

namespace critlab {

using Exponents = std::vector<int>;

// Total monomial order: lex or graded reverse lex, with explicit variable
// precedence (first name ranks highest). Variables absent from `precedence`
// rank after it, alphabetically.
struct MonomialOrder {
  enum class Kind { Lex, Grevlex };
  Kind kind = Kind::Grevlex;
  std::vector<std::string> precedence;

  static MonomialOrder lex(std::vector<std::string> precedence = {}) {
    return {Kind::Lex, std::move(precedence)};
  }
  static MonomialOrder grevlex(std::vector<std::string> precedence = {}) {
    return {Kind::Grevlex, std::move(precedence)};
  }

  // Permutation mapping rank -> position in `vars` (vars must be sorted).
  std::vector<int> ranking(const std::vector<std::string>& vars) const;

  // Compares exponent vectors already permuted into rank order.
  bool less_ranked(const Exponents& a, const Exponents& b) const;
};

// Exact multivariate polynomial over rationals. Variables are kept sorted by
// name; the term map never stores zero coefficients, so equality is
// representational.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(long long constant);  // NOLINT(google-explicit-constructor)
  explicit Polynomial(const Rational& constant);
  static Polynomial variable(const std::string& name);
  static Polynomial constant(const Rational& value);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  const std::vector<std::string>& vars() const { return vars_; }
  const std::map<Exponents, Rational>& terms() const { return terms_; }
  int total_degree() const;

  Polynomial operator+(const Polynomial& o) const;
  Polynomial operator-(const Polynomial& o) const;
  Polynomial operator*(const Polynomial& o) const;
  Polynomial operator-() const;
  Polynomial pow(int e) const;
  Polynomial scaled(const Rational& k) const;

  bool operator==(const Polynomial& o) const;
  bool operator!=(const Polynomial& o) const { return !(*this == o); }

  Rational evaluate(const std::map<std::string, Rational>& point) const;
  double evaluate_double(const std::map<std::string, double>& point) const;

  // Canonical text (terms descending in `order`), e.g. "4*a^2+4*a*d-3".
  std::string to_string(const MonomialOrder& order = MonomialOrder::grevlex()) const;

  // Re-expresses this polynomial on a superset variable list (sorted).
  Polynomial aligned_to(const std::vector<std::string>& vars) const;

 private:
  void prune();
  std::vector<std::string> vars_;
  std::map<Exponents, Rational> terms_;
  friend Polynomial unify(const Polynomial& a, const Polynomial& b, Polynomial& b_out);
};

// Text grammar: identifiers, integer/rational literals `p/q`, + - * ^ and
// parentheses; whitespace-insensitive. Throws ParseError.
Polynomial poly_parse(const std::string& text);

// Multivariate division remainder: no term of the result is divisible by any
// leading term of G; f - result lies in <G>. Deterministic: divisors are
// tried in list order, leading terms taken in `order`.
Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& g,
                       const MonomialOrder& order);

struct GroebnerLimits {
  int max_basis = 2000;
  int max_degree = 40;
};

struct GroebnerResult {
  bool aborted = false;
  std::string abort_reason;
  std::vector<Polynomial> basis;  // reduced basis (monic, sorted) when !aborted
};

// Buchberger with the normal selection strategy and the two classical
// pair-skipping criteria; aborts cleanly on limit breach.
GroebnerResult buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                          const GroebnerLimits& limits = {});

}  // namespace critlab
