#include "critlab/rational.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "critlab/errors.hpp"

namespace critlab {

BigInt::BigInt(long long v) {
  neg_ = v < 0;
  unsigned long long mag = neg_ ? -static_cast<unsigned long long>(v)
                                : static_cast<unsigned long long>(v);
  while (mag) {
    limbs_.push_back(static_cast<uint32_t>(mag & 0xffffffffu));
    mag >>= 32;
  }
}

void BigInt::trim() {
  while (!limbs_.empty() && limbs_.back() == 0) limbs_.pop_back();
  if (limbs_.empty()) neg_ = false;
}

BigInt BigInt::from_decimal(const std::string& digits) {
  BigInt r;
  size_t start = 0;
  bool neg = false;
  if (start < digits.size() && (digits[start] == '+' || digits[start] == '-')) {
    neg = digits[start] == '-';
    ++start;
  }
  if (start == digits.size()) throw ParseError("empty integer literal");
  for (size_t i = start; i < digits.size(); ++i) {
    char ch = digits[i];
    if (ch < '0' || ch > '9') throw ParseError("invalid digit in integer literal");
    // r = r*10 + d
    uint64_t carry = static_cast<uint64_t>(ch - '0');
    for (auto& limb : r.limbs_) {
      uint64_t cur = static_cast<uint64_t>(limb) * 10u + carry;
      limb = static_cast<uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    while (carry) {
      r.limbs_.push_back(static_cast<uint32_t>(carry & 0xffffffffu));
      carry >>= 32;
    }
  }
  r.trim();
  r.neg_ = neg && !r.limbs_.empty();
  return r;
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  if (!r.limbs_.empty()) r.neg_ = !r.neg_;
  return r;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  r.neg_ = false;
  return r;
}

int BigInt::cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

std::vector<uint32_t> BigInt::add_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
  std::vector<uint32_t> r(std::max(a.size(), b.size()) + 1, 0);
  uint64_t carry = 0;
  for (size_t i = 0; i < r.size(); ++i) {
    uint64_t s = carry;
    if (i < a.size()) s += a[i];
    if (i < b.size()) s += b[i];
    r[i] = static_cast<uint32_t>(s & 0xffffffffu);
    carry = s >> 32;
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

// Requires |a| >= |b|.
std::vector<uint32_t> BigInt::sub_mag(const std::vector<uint32_t>& a,
                                      const std::vector<uint32_t>& b) {
  std::vector<uint32_t> r = a;
  int64_t borrow = 0;
  for (size_t i = 0; i < r.size(); ++i) {
    int64_t cur = static_cast<int64_t>(r[i]) - borrow - (i < b.size() ? b[i] : 0);
    if (cur < 0) {
      cur += int64_t{1} << 32;
      borrow = 1;
    } else {
      borrow = 0;
    }
    r[i] = static_cast<uint32_t>(cur);
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
  BigInt r;
  if (neg_ == o.neg_) {
    r.limbs_ = add_mag(limbs_, o.limbs_);
    r.neg_ = neg_;
  } else {
    int c = cmp_mag(limbs_, o.limbs_);
    if (c == 0) return BigInt();
    if (c > 0) {
      r.limbs_ = sub_mag(limbs_, o.limbs_);
      r.neg_ = neg_;
    } else {
      r.limbs_ = sub_mag(o.limbs_, limbs_);
      r.neg_ = o.neg_;
    }
  }
  r.trim();
  return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
  if (is_zero() || o.is_zero()) return BigInt();
  BigInt r;
  r.limbs_.assign(limbs_.size() + o.limbs_.size(), 0);
  for (size_t i = 0; i < limbs_.size(); ++i) {
    uint64_t carry = 0;
    for (size_t j = 0; j < o.limbs_.size(); ++j) {
      uint64_t cur = static_cast<uint64_t>(limbs_[i]) * o.limbs_[j] +
                     r.limbs_[i + j] + carry;
      r.limbs_[i + j] = static_cast<uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    size_t k = i + o.limbs_.size();
    while (carry) {
      uint64_t cur = static_cast<uint64_t>(r.limbs_[k]) + carry;
      r.limbs_[k] = static_cast<uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  r.neg_ = neg_ != o.neg_;
  r.trim();
  return r;
}

bool BigInt::operator<(const BigInt& o) const {
  if (neg_ != o.neg_) return neg_;
  int c = cmp_mag(limbs_, o.limbs_);
  return neg_ ? c > 0 : c < 0;
}

void BigInt::shr1() {
  uint32_t carry = 0;
  for (size_t i = limbs_.size(); i-- > 0;) {
    uint32_t next = limbs_[i] & 1u;
    limbs_[i] = (limbs_[i] >> 1) | (carry << 31);
    carry = next;
  }
  trim();
}

void BigInt::shl(unsigned bits) {
  for (unsigned b = 0; b < bits; ++b) {
    uint32_t carry = 0;
    for (auto& limb : limbs_) {
      uint32_t next = limb >> 31;
      limb = (limb << 1) | carry;
      carry = next;
    }
    if (carry) limbs_.push_back(carry);
  }
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a.neg_ = b.neg_ = false;
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  unsigned shift = 0;
  while (a.even() && b.even()) {
    a.shr1();
    b.shr1();
    ++shift;
  }
  while (a.even()) a.shr1();
  while (!b.is_zero()) {
    while (b.even()) b.shr1();
    if (cmp_mag(a.limbs_, b.limbs_) > 0) std::swap(a.limbs_, b.limbs_);
    b.limbs_ = sub_mag(b.limbs_, a.limbs_);
  }
  a.shl(shift);
  return a;
}

namespace {

// Inverse of an odd 32-bit integer modulo 2^32 (Newton iteration).
uint32_t inv32(uint32_t a) {
  uint32_t x = a;  // correct to 5 bits
  for (int i = 0; i < 5; ++i) x *= 2u - a * x;
  return x;
}

}  // namespace

// Jebelean exact division: valid whenever d divides n evenly.
BigInt BigInt::divide_exact(const BigInt& n, const BigInt& d) {
  if (d.is_zero()) throw Error("exact division by zero");
  if (n.is_zero()) return BigInt();
  BigInt num = n.abs(), den = d.abs();
  // Make the divisor odd; d | n means the 2-adic valuation of n dominates.
  while (den.even()) {
    den.shr1();
    num.shr1();
  }
  size_t qlen = num.limbs_.size() - den.limbs_.size() + 1;
  uint32_t inv = inv32(den.limbs_[0]);
  std::vector<uint32_t> rem = num.limbs_;
  rem.resize(num.limbs_.size() + 1, 0);
  std::vector<uint32_t> q(qlen, 0);
  for (size_t i = 0; i < qlen; ++i) {
    uint32_t qi = rem[i] * inv;
    q[i] = qi;
    if (qi == 0) continue;
    // rem -= qi * den, aligned at limb i
    uint64_t borrow = 0, carry = 0;
    for (size_t j = 0; j < den.limbs_.size(); ++j) {
      uint64_t prod = static_cast<uint64_t>(qi) * den.limbs_[j] + carry;
      carry = prod >> 32;
      uint64_t sub = static_cast<uint64_t>(rem[i + j]) - (prod & 0xffffffffu) - borrow;
      rem[i + j] = static_cast<uint32_t>(sub & 0xffffffffu);
      borrow = (sub >> 63) & 1u;
    }
    size_t k = i + den.limbs_.size();
    while ((carry || borrow) && k < rem.size()) {
      uint64_t sub = static_cast<uint64_t>(rem[k]) - carry - borrow;
      rem[k] = static_cast<uint32_t>(sub & 0xffffffffu);
      borrow = (sub >> 63) & 1u;
      carry = 0;
      ++k;
    }
  }
  BigInt r;
  r.limbs_ = std::move(q);
  r.neg_ = n.neg_ != d.neg_;
  r.trim();
  return r;
}

std::string BigInt::to_string() const {
  if (is_zero()) return "0";
  std::vector<uint32_t> work = limbs_;
  std::string digits;
  while (!work.empty()) {
    // divide magnitude by 1e9, collecting the remainder
    uint64_t rem = 0;
    for (size_t i = work.size(); i-- > 0;) {
      uint64_t cur = (rem << 32) | work[i];
      work[i] = static_cast<uint32_t>(cur / 1000000000ull);
      rem = cur % 1000000000ull;
    }
    while (!work.empty() && work.back() == 0) work.pop_back();
    for (int d = 0; d < 9; ++d) {
      digits.push_back(static_cast<char>('0' + rem % 10));
      rem /= 10;
    }
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  if (neg_) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

double BigInt::to_double() const {
  double r = 0.0;
  for (size_t i = limbs_.size(); i-- > 0;) r = r * 4294967296.0 + limbs_[i];
  return neg_ ? -r : r;
}

Rational::Rational(long long num, long long den) : num_(num), den_(den) { normalize(); }

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void Rational::normalize() {
  if (den_.is_zero()) throw Error("rational with zero denominator");
  if (den_.negative()) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  BigInt g = BigInt::gcd(num_, den_);
  if (g != BigInt(1)) {
    num_ = BigInt::divide_exact(num_, g);
    den_ = BigInt::divide_exact(den_, g);
  }
}

std::string Rational::to_string() const {
  if (den_ == BigInt(1)) return num_.to_string();
  return num_.to_string() + "/" + den_.to_string();
}

double Rational::to_double() const { return num_.to_double() / den_.to_double(); }

Rational Rational::operator+(const Rational& o) const {
  return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}
Rational Rational::operator-(const Rational& o) const {
  return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}
Rational Rational::operator*(const Rational& o) const {
  return Rational(num_ * o.num_, den_ * o.den_);
}
Rational Rational::operator/(const Rational& o) const {
  if (o.is_zero()) throw Error("rational division by zero");
  return Rational(num_ * o.den_, den_ * o.num_);
}
Rational Rational::operator-() const { return Rational(-num_, den_); }

bool Rational::operator<(const Rational& o) const {
  return num_ * o.den_ < o.num_ * den_;
}

Rational Rational::parse(const std::string& text) {
  auto slash = text.find('/');
  if (slash == std::string::npos)
    return Rational(BigInt::from_decimal(text), BigInt(1));
  return Rational(BigInt::from_decimal(text.substr(0, slash)),
                  BigInt::from_decimal(text.substr(slash + 1)));
}

}  // namespace critlab
