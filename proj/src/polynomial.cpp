#include "critlab/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "critlab/errors.hpp"

namespace critlab {

std::vector<int> MonomialOrder::ranking(const std::vector<std::string>& vars) const {
  std::vector<int> rank;
  rank.reserve(vars.size());
  std::vector<bool> used(vars.size(), false);
  for (const auto& name : precedence) {
    auto it = std::find(vars.begin(), vars.end(), name);
    if (it == vars.end()) continue;
    int idx = static_cast<int>(it - vars.begin());
    if (!used[idx]) {
      rank.push_back(idx);
      used[idx] = true;
    }
  }
  for (size_t i = 0; i < vars.size(); ++i)
    if (!used[i]) rank.push_back(static_cast<int>(i));
  return rank;
}

bool MonomialOrder::less_ranked(const Exponents& a, const Exponents& b) const {
  if (kind == Kind::Lex) {
    for (size_t i = 0; i < a.size(); ++i)
      if (a[i] != b[i]) return a[i] < b[i];
    return false;
  }
  int da = std::accumulate(a.begin(), a.end(), 0);
  int db = std::accumulate(b.begin(), b.end(), 0);
  if (da != db) return da < db;
  // grevlex: with equal degree, the last variable (lowest rank) in which the
  // exponents differ decides; the one with the LARGER exponent there is smaller.
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] > b[i];
  return false;
}

Polynomial::Polynomial(long long constant) {
  if (constant != 0) terms_[{}] = Rational(constant);
}

Polynomial::Polynomial(const Rational& constant) {
  if (!constant.is_zero()) terms_[{}] = constant;
}

Polynomial Polynomial::constant(const Rational& value) { return Polynomial(value); }

Polynomial Polynomial::variable(const std::string& name) {
  Polynomial p;
  p.vars_ = {name};
  p.terms_[{1}] = Rational(1);
  return p;
}

bool Polynomial::is_constant() const {
  if (terms_.empty()) return true;
  if (terms_.size() > 1) return false;
  const auto& e = terms_.begin()->first;
  return std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
}

int Polynomial::total_degree() const {
  int d = 0;
  for (const auto& [e, c] : terms_)
    d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

void Polynomial::prune() {
  for (auto it = terms_.begin(); it != terms_.end();)
    it = it->second.is_zero() ? terms_.erase(it) : std::next(it);
}

Polynomial Polynomial::aligned_to(const std::vector<std::string>& vars) const {
  Polynomial out;
  out.vars_ = vars;
  std::vector<int> pos(vars_.size(), -1);
  for (size_t i = 0; i < vars_.size(); ++i) {
    auto it = std::find(vars.begin(), vars.end(), vars_[i]);
    if (it == vars.end()) throw Error("aligned_to: target variable list not a superset");
    pos[i] = static_cast<int>(it - vars.begin());
  }
  for (const auto& [e, c] : terms_) {
    Exponents ne(vars.size(), 0);
    for (size_t i = 0; i < e.size(); ++i) ne[pos[i]] = e[i];
    out.terms_[ne] = c;
  }
  return out;
}

// Aligns a and b onto the sorted union of their variables; returns a', sets b'.
Polynomial unify(const Polynomial& a, const Polynomial& b, Polynomial& b_out) {
  if (a.vars_ == b.vars_) {
    b_out = b;
    return a;
  }
  std::set<std::string> names(a.vars_.begin(), a.vars_.end());
  names.insert(b.vars_.begin(), b.vars_.end());
  std::vector<std::string> vars(names.begin(), names.end());
  b_out = b.aligned_to(vars);
  return a.aligned_to(vars);
}

Polynomial Polynomial::operator+(const Polynomial& o) const {
  Polynomial b;
  Polynomial a = unify(*this, o, b);
  for (const auto& [e, c] : b.terms_) {
    auto [it, inserted] = a.terms_.emplace(e, c);
    if (!inserted) it->second = it->second + c;
  }
  a.prune();
  return a;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& [e, c] : r.terms_) c = -c;
  return r;
}

Polynomial Polynomial::operator-(const Polynomial& o) const { return *this + (-o); }

Polynomial Polynomial::operator*(const Polynomial& o) const {
  Polynomial b;
  Polynomial a = unify(*this, o, b);
  Polynomial r;
  r.vars_ = a.vars_;
  for (const auto& [ea, ca] : a.terms_)
    for (const auto& [eb, cb] : b.terms_) {
      Exponents e(ea.size());
      for (size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
      auto [it, inserted] = r.terms_.emplace(e, ca * cb);
      if (!inserted) it->second = it->second + ca * cb;
    }
  r.prune();
  return r;
}

Polynomial Polynomial::pow(int e) const {
  if (e < 0) throw Error("negative polynomial power");
  Polynomial r(1);
  Polynomial base = *this;
  while (e > 0) {
    if (e & 1) r = r * base;
    base = base * base;
    e >>= 1;
  }
  return r;
}

Polynomial Polynomial::scaled(const Rational& k) const {
  if (k.is_zero()) return Polynomial();
  Polynomial r = *this;
  for (auto& [e, c] : r.terms_) c = c * k;
  return r;
}

bool Polynomial::operator==(const Polynomial& o) const {
  Polynomial b;
  Polynomial a = unify(*this, o, b);
  return a.terms_ == b.terms_;
}

Rational Polynomial::evaluate(const std::map<std::string, Rational>& point) const {
  Rational total(0);
  for (const auto& [e, c] : terms_) {
    Rational term = c;
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = point.find(vars_[i]);
      if (it == point.end()) throw Error("evaluate: missing value for " + vars_[i]);
      Rational p(1);
      for (int k = 0; k < e[i]; ++k) p = p * it->second;
      term = term * p;
    }
    total = total + term;
  }
  return total;
}

double Polynomial::evaluate_double(const std::map<std::string, double>& point) const {
  double total = 0.0;
  for (const auto& [e, c] : terms_) {
    double term = c.to_double();
    for (size_t i = 0; i < e.size(); ++i) {
      if (e[i] == 0) continue;
      auto it = point.find(vars_[i]);
      if (it == point.end()) throw Error("evaluate: missing value for " + vars_[i]);
      term *= std::pow(it->second, e[i]);
    }
    total += term;
  }
  return total;
}

std::string Polynomial::to_string(const MonomialOrder& order) const {
  if (terms_.empty()) return "0";
  std::vector<int> rank = order.ranking(vars_);
  auto ranked = [&](const Exponents& e) {
    Exponents r(e.size());
    for (size_t i = 0; i < rank.size(); ++i) r[i] = e[rank[i]];
    return r;
  };
  std::vector<const std::pair<const Exponents, Rational>*> sorted;
  for (const auto& t : terms_) sorted.push_back(&t);
  std::sort(sorted.begin(), sorted.end(), [&](auto* a, auto* b) {
    return order.less_ranked(ranked(b->first), ranked(a->first));
  });
  std::ostringstream os;
  bool first = true;
  for (auto* t : sorted) {
    Rational c = t->second;
    if (!first) os << (c.sign() < 0 ? "-" : "+");
    else if (c.sign() < 0) os << "-";
    first = false;
    Rational mag = c.sign() < 0 ? -c : c;
    bool has_var = std::any_of(t->first.begin(), t->first.end(), [](int x) { return x > 0; });
    if (!has_var || mag != Rational(1)) os << mag.to_string();
    bool star = !has_var || mag != Rational(1);
    for (size_t i = 0; i < t->first.size(); ++i) {
      if (t->first[i] == 0) continue;
      if (star) os << "*";
      os << vars_[i];
      if (t->first[i] > 1) os << "^" << t->first[i];
      star = true;
    }
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Parser

namespace {

struct Lexer {
  const std::string& text;
  size_t pos = 0;

  void skip_ws() {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
  char peek() {
    skip_ws();
    return pos < text.size() ? text[pos] : '\0';
  }
  char take() {
    char c = peek();
    if (pos < text.size()) ++pos;
    return c;
  }
};

struct Parser {
  Lexer lex;

  Polynomial parse_expr() {
    Polynomial acc;
    int sign = 1;
    if (lex.peek() == '+' || lex.peek() == '-') sign = (lex.take() == '-') ? -1 : 1;
    acc = parse_term().scaled(Rational(sign));
    while (true) {
      char c = lex.peek();
      if (c != '+' && c != '-') break;
      lex.take();
      Polynomial t = parse_term();
      acc = (c == '+') ? acc + t : acc - t;
    }
    return acc;
  }

  Polynomial parse_term() {
    Polynomial acc = parse_factor();
    while (lex.peek() == '*') {
      lex.take();
      acc = acc * parse_factor();
    }
    return acc;
  }

  Polynomial parse_factor() {
    Polynomial base = parse_atom();
    if (lex.peek() == '^') {
      lex.take();
      std::string digits = read_digits();
      if (digits.empty()) throw ParseError("exponent expected after '^'");
      base = base.pow(std::stoi(digits));
    }
    return base;
  }

  Polynomial parse_atom() {
    char c = lex.peek();
    if (c == '(') {
      lex.take();
      Polynomial inner = parse_expr();
      if (lex.peek() != ')') throw ParseError("missing ')'");
      lex.take();
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string num = read_digits();
      lex.skip_ws();
      if (lex.pos < lex.text.size() && lex.text[lex.pos] == '/') {
        ++lex.pos;
        std::string den = read_digits();
        if (den.empty()) throw ParseError("denominator expected after '/'");
        return Polynomial::constant(Rational(BigInt::from_decimal(num),
                                             BigInt::from_decimal(den)));
      }
      return Polynomial::constant(Rational(BigInt::from_decimal(num), BigInt(1)));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string name;
      lex.skip_ws();
      while (lex.pos < lex.text.size() &&
             (std::isalnum(static_cast<unsigned char>(lex.text[lex.pos])) ||
              lex.text[lex.pos] == '_')) {
        name.push_back(lex.text[lex.pos]);
        ++lex.pos;
      }
      return Polynomial::variable(name);
    }
    throw ParseError(std::string("unexpected character '") + c + "' in polynomial");
  }

  std::string read_digits() {
    lex.skip_ws();
    std::string out;
    while (lex.pos < lex.text.size() &&
           std::isdigit(static_cast<unsigned char>(lex.text[lex.pos]))) {
      out.push_back(lex.text[lex.pos]);
      ++lex.pos;
    }
    return out;
  }
};

}  // namespace

Polynomial poly_parse(const std::string& text) {
  Parser p{Lexer{text}};
  Polynomial result = p.parse_expr();
  if (p.lex.peek() != '\0')
    throw ParseError("trailing input in polynomial at position " +
                     std::to_string(p.lex.pos));
  return result;
}

// ---------------------------------------------------------------------------
// Division and Buchberger

namespace {

struct Led {
  Exponents exp;      // on the common variable list
  Rational coeff;
};

Exponents ranked(const Exponents& e, const std::vector<int>& rank) {
  Exponents r(e.size());
  for (size_t i = 0; i < rank.size(); ++i) r[i] = e[rank[i]];
  return r;
}

Led leading_term(const Polynomial& p, const MonomialOrder& order,
                 const std::vector<int>& rank) {
  const auto& terms = p.terms();
  auto best = terms.begin();
  Exponents best_ranked = ranked(best->first, rank);
  for (auto it = std::next(terms.begin()); it != terms.end(); ++it) {
    Exponents r = ranked(it->first, rank);
    if (order.less_ranked(best_ranked, r)) {
      best = it;
      best_ranked = r;
    }
  }
  return {best->first, best->second};
}

bool divides(const Exponents& a, const Exponents& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Polynomial monomial_poly(const std::vector<std::string>& vars, const Exponents& e,
                         const Rational& c) {
  Polynomial m = Polynomial::constant(c);
  for (size_t i = 0; i < vars.size(); ++i)
    if (e[i] > 0) m = m * Polynomial::variable(vars[i]).pow(e[i]);
  return m;
}

std::vector<std::string> common_vars(const Polynomial& f, const std::vector<Polynomial>& g) {
  std::set<std::string> names(f.vars().begin(), f.vars().end());
  for (const auto& p : g) names.insert(p.vars().begin(), p.vars().end());
  return {names.begin(), names.end()};
}

}  // namespace

Polynomial normal_form(const Polynomial& f, const std::vector<Polynomial>& g,
                       const MonomialOrder& order) {
  if (g.empty()) throw Error("normal_form: empty divisor list");
  std::vector<std::string> vars = common_vars(f, g);
  std::vector<int> rank = order.ranking(vars);

  std::vector<Polynomial> divisors;
  std::vector<Led> leads;
  for (const auto& p : g) {
    if (p.is_zero()) throw Error("normal_form: zero divisor polynomial");
    Polynomial q = p.aligned_to(vars);
    leads.push_back(leading_term(q, order, rank));
    divisors.push_back(std::move(q));
  }

  Polynomial work = f.aligned_to(vars);
  Polynomial remainder;
  while (!work.is_zero()) {
    Led lt = leading_term(work, order, rank);
    bool reduced = false;
    for (size_t i = 0; i < divisors.size(); ++i) {
      if (!divides(leads[i].exp, lt.exp)) continue;
      Exponents q(lt.exp.size());
      for (size_t k = 0; k < q.size(); ++k) q[k] = lt.exp[k] - leads[i].exp[k];
      Polynomial factor = monomial_poly(vars, q, lt.coeff / leads[i].coeff);
      work = work - factor * divisors[i];
      reduced = true;
      break;
    }
    if (!reduced) {
      Polynomial mono = monomial_poly(vars, lt.exp, lt.coeff);
      remainder = remainder + mono;
      work = work - mono;
    }
  }
  return remainder;
}

GroebnerResult buchberger(const std::vector<Polynomial>& gens, const MonomialOrder& order,
                          const GroebnerLimits& limits) {
  GroebnerResult result;
  std::vector<Polynomial> basis;
  for (const auto& p : gens)
    if (!p.is_zero()) basis.push_back(p);
  if (basis.empty()) {
    result.abort_reason = "all generators are zero";
    result.aborted = true;
    return result;
  }

  std::vector<std::string> vars = common_vars(basis.front(), basis);
  std::vector<int> rank = order.ranking(vars);
  for (auto& p : basis) p = p.aligned_to(vars);

  auto lead = [&](const Polynomial& p) { return leading_term(p, order, rank); };

  std::vector<Led> leads;
  for (const auto& p : basis) leads.push_back(lead(p));

  auto lcm_exp = [](const Exponents& a, const Exponents& b) {
    Exponents r(a.size());
    for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
    return r;
  };

  std::set<std::pair<int, int>> pending, done;
  for (size_t i = 0; i < basis.size(); ++i)
    for (size_t j = i + 1; j < basis.size(); ++j)
      pending.insert({static_cast<int>(i), static_cast<int>(j)});

  while (!pending.empty()) {
    // normal selection: the pair with the smallest lcm in the order
    auto chosen = pending.begin();
    Exponents chosen_lcm = ranked(lcm_exp(leads[chosen->first].exp, leads[chosen->second].exp), rank);
    for (auto it = std::next(pending.begin()); it != pending.end(); ++it) {
      Exponents l = ranked(lcm_exp(leads[it->first].exp, leads[it->second].exp), rank);
      if (order.less_ranked(l, chosen_lcm)) {
        chosen = it;
        chosen_lcm = l;
      }
    }
    auto [i, j] = *chosen;
    pending.erase(chosen);
    done.insert({i, j});

    Exponents lij = lcm_exp(leads[i].exp, leads[j].exp);

    // first criterion: coprime leading monomials reduce to zero
    {
      int sum = 0;
      for (size_t k = 0; k < lij.size(); ++k) sum += lij[k];
      int si = 0, sj = 0;
      for (size_t k = 0; k < lij.size(); ++k) {
        si += leads[i].exp[k];
        sj += leads[j].exp[k];
      }
      if (sum == si + sj) continue;
    }
    // chain criterion: some k with lm(k) | lcm and both mixed pairs handled
    {
      bool skip = false;
      for (int k = 0; k < static_cast<int>(basis.size()) && !skip; ++k) {
        if (k == i || k == j) continue;
        if (!divides(leads[k].exp, lij)) continue;
        auto key_ik = std::minmax(i, k);
        auto key_jk = std::minmax(j, k);
        if (done.count({key_ik.first, key_ik.second}) &&
            done.count({key_jk.first, key_jk.second}))
          skip = true;
      }
      if (skip) continue;
    }

    // s-polynomial
    Exponents qi(lij.size()), qj(lij.size());
    for (size_t k = 0; k < lij.size(); ++k) {
      qi[k] = lij[k] - leads[i].exp[k];
      qj[k] = lij[k] - leads[j].exp[k];
    }
    Polynomial s = monomial_poly(vars, qi, Rational(1) / leads[i].coeff) * basis[i] -
                   monomial_poly(vars, qj, Rational(1) / leads[j].coeff) * basis[j];
    if (s.is_zero()) continue;
    Polynomial r = normal_form(s, basis, order);
    if (r.is_zero()) continue;

    if (r.total_degree() > limits.max_degree) {
      result.aborted = true;
      result.abort_reason = "degree limit exceeded (" + std::to_string(r.total_degree()) +
                            " > " + std::to_string(limits.max_degree) + ")";
      return result;
    }
    if (static_cast<int>(basis.size()) + 1 > limits.max_basis) {
      result.aborted = true;
      result.abort_reason = "basis size limit exceeded";
      return result;
    }

    r = r.aligned_to(vars);
    basis.push_back(r);
    leads.push_back(lead(r));
    int newest = static_cast<int>(basis.size()) - 1;
    for (int k = 0; k < newest; ++k) pending.insert({k, newest});
  }

  // Inter-reduce to the unique reduced basis: drop redundant leading terms,
  // fully reduce tails, normalize to monic.
  std::vector<Polynomial> reduced;
  for (size_t i = 0; i < basis.size(); ++i) {
    bool redundant = false;
    for (size_t j = 0; j < basis.size(); ++j) {
      if (i == j) continue;
      if (divides(leads[j].exp, leads[i].exp)) {
        // keep the one with the smaller leading term; ties keep lowest index
        if (leads[j].exp != leads[i].exp || j < i) {
          redundant = true;
          break;
        }
      }
    }
    if (!redundant) reduced.push_back(basis[i]);
  }
  for (size_t i = 0; i < reduced.size(); ++i) {
    std::vector<Polynomial> others;
    for (size_t j = 0; j < reduced.size(); ++j)
      if (j != i) others.push_back(reduced[j]);
    if (!others.empty()) reduced[i] = normal_form(reduced[i], others, order).aligned_to(vars);
    if (reduced[i].is_zero()) {
      reduced.erase(reduced.begin() + static_cast<long>(i));
      --i;
      continue;
    }
    Led lt = leading_term(reduced[i], order, rank);
    reduced[i] = reduced[i].scaled(Rational(1) / lt.coeff);
  }
  std::sort(reduced.begin(), reduced.end(), [&](const Polynomial& a, const Polynomial& b) {
    Led la = leading_term(a.aligned_to(vars), order, rank);
    Led lb = leading_term(b.aligned_to(vars), order, rank);
    return order.less_ranked(ranked(la.exp, rank), ranked(lb.exp, rank));
  });
  result.basis = std::move(reduced);
  return result;
}

}  // namespace critlab
