#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace critlab {

// Arbitrary-precision signed integer: sign-magnitude, base 2^32 limbs.
// Supports exactly what the rational/polynomial layer needs: add, sub, mul,
// comparisons, binary gcd, decimal conversion.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);  // NOLINT(google-explicit-constructor)
  static BigInt from_decimal(const std::string& digits);

  bool is_zero() const { return limbs_.empty(); }
  bool negative() const { return neg_; }
  BigInt operator-() const;
  BigInt abs() const;

  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;

  bool operator==(const BigInt& o) const { return neg_ == o.neg_ && limbs_ == o.limbs_; }
  bool operator!=(const BigInt& o) const { return !(*this == o); }
  bool operator<(const BigInt& o) const;

  static BigInt gcd(BigInt a, BigInt b);

  // Exact quotient n/d; requires d != 0 and d | n.
  static BigInt divide_exact(const BigInt& n, const BigInt& d);

  std::string to_string() const;
  double to_double() const;

 private:
  static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b);
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a,
                                       const std::vector<uint32_t>& b);
  void trim();
  void shr1();
  void shl(unsigned bits);
  bool even() const { return limbs_.empty() || (limbs_[0] & 1u) == 0; }

  bool neg_ = false;
  std::vector<uint32_t> limbs_;  // little-endian, no leading zeros
};

// Exact rational with normalized sign (denominator always positive) and
// reduced fraction invariant.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long v) : num_(v), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(long long num, long long den);
  Rational(BigInt num, BigInt den);

  // Parses "p", "-p", or "p/q" with arbitrary-size decimal literals.
  static Rational parse(const std::string& text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  int sign() const { return num_.is_zero() ? 0 : (num_.negative() ? -1 : 1); }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;  // throws on division by zero
  Rational operator-() const;

  bool operator==(const Rational& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Rational& o) const { return !(*this == o); }
  bool operator<(const Rational& o) const;

  std::string to_string() const;
  double to_double() const;

 private:
  void normalize();
  BigInt num_, den_;
};

}  // namespace critlab
