#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace treeval {

// Arbitrary-precision signed integer, sign-magnitude with base-2^32 limbs.
// Only the operations the project needs: ring ops, divmod, pow, decimal io.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);
  static BigInt from_string(const std::string& s);

  bool is_zero() const { return sign_ == 0; }
  bool is_negative() const { return sign_ < 0; }
  int sign() const { return sign_; }

  BigInt operator-() const;
  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;
  BigInt operator/(const BigInt& o) const;  // truncated toward zero
  BigInt operator%(const BigInt& o) const;  // sign follows dividend

  bool operator==(const BigInt& o) const { return compare(o) == 0; }
  bool operator!=(const BigInt& o) const { return compare(o) != 0; }
  bool operator<(const BigInt& o) const { return compare(o) < 0; }
  bool operator<=(const BigInt& o) const { return compare(o) <= 0; }
  bool operator>(const BigInt& o) const { return compare(o) > 0; }
  bool operator>=(const BigInt& o) const { return compare(o) >= 0; }

  int compare(const BigInt& o) const;

  static BigInt pow(const BigInt& base, unsigned long long exp);
  static BigInt pow2(unsigned long long exp);  // 1 << exp, built directly
  static BigInt gcd(BigInt a, BigInt b);

  // Floor of log2; requires a positive value.
  unsigned long long bit_length() const;
  double to_double() const;
  // Value if it fits in long long, throws otherwise.
  long long to_ll() const;

  std::string to_string() const;

 private:
  int sign_ = 0;
  std::vector<uint32_t> mag_;  // little-endian, no trailing zeros

  static int cmp_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> add_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> sub_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static std::vector<uint32_t> mul_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b);
  static void divmod_mag(const std::vector<uint32_t>& a, const std::vector<uint32_t>& b,
                         std::vector<uint32_t>& q, std::vector<uint32_t>& r);
  static void trim(std::vector<uint32_t>& v);
  BigInt make(int sign, std::vector<uint32_t> mag) const;
};

// Exact rational number over BigInt. Always normalized: den > 0, gcd(num,den) = 1.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long v) : num_(v), den_(1) {}
  Rational(long long num, long long den);
  Rational(BigInt num, BigInt den);

  static Rational from_string(const std::string& s);  // "p", "-p", or "p/q"

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_integer() const;

  Rational operator-() const;
  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;

  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }

  bool operator==(const Rational& o) const { return compare(o) == 0; }
  bool operator!=(const Rational& o) const { return compare(o) != 0; }
  bool operator<(const Rational& o) const { return compare(o) < 0; }
  bool operator<=(const Rational& o) const { return compare(o) <= 0; }
  bool operator>(const Rational& o) const { return compare(o) > 0; }
  bool operator>=(const Rational& o) const { return compare(o) >= 0; }

  int compare(const Rational& o) const;

  double to_double() const;
  std::string to_string() const;  // "p/q", or "p" when integral

 private:
  BigInt num_, den_;
  void normalize();
};

}  // namespace treeval
