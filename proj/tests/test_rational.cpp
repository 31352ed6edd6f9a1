#include "doctest.h"
#include "treeval/rational.hpp"

using treeval::BigInt;
using treeval::Rational;

TEST_CASE("bigint basic arithmetic") {
  CHECK(BigInt(0).to_string() == "0");
  CHECK((BigInt(123456789) * BigInt(987654321)).to_string() == "121932631112635269");
  CHECK((BigInt(-5) + BigInt(3)).to_string() == "-2");
  CHECK((BigInt(1) - BigInt(10)).to_string() == "-9");
  CHECK(BigInt::from_string("-12345678901234567890123456789").to_string() ==
        "-12345678901234567890123456789");
}

TEST_CASE("bigint multiplication and division agree") {
  // (a*b)/b == a and (a*b)%b == 0 on values spanning several limbs
  BigInt a = BigInt::pow(BigInt(7), 50);
  BigInt b = BigInt::pow(BigInt(13), 37);
  BigInt p = a * b;
  CHECK(p / b == a);
  CHECK((p % b).is_zero());
  BigInt q = (p + BigInt(5)) / b;
  BigInt r = (p + BigInt(5)) % b;
  CHECK(q * b + r == p + BigInt(5));
  CHECK(r == BigInt(5));
}

TEST_CASE("bigint pow and decimal io") {
  CHECK(BigInt::pow(BigInt(2), 64).to_string() == "18446744073709551616");
  CHECK(BigInt::pow(BigInt(10), 30).to_string() == "1" + std::string(30, '0'));
  BigInt big = BigInt::from_string("98765432109876543210987654321098765432109876543210");
  CHECK(BigInt::from_string(big.to_string()) == big);
}

TEST_CASE("bigint bit_length") {
  CHECK(BigInt(1).bit_length() == 0);
  CHECK(BigInt(2).bit_length() == 1);
  CHECK(BigInt(255).bit_length() == 7);
  CHECK(BigInt(256).bit_length() == 8);
  CHECK(BigInt::pow(BigInt(2), 100).bit_length() == 100);
}

TEST_CASE("rational normalization and arithmetic") {
  Rational half(1, 2);
  Rational third(1, 3);
  CHECK((half + third).to_string() == "5/6");
  CHECK((half - half).is_zero());
  CHECK((half * third).to_string() == "1/6");
  CHECK((half / third).to_string() == "3/2");
  CHECK(Rational(4, 8) == Rational(1, 2));
  CHECK(Rational(-2, -4) == half);
  CHECK(Rational(2, -4).to_string() == "-1/2");
  CHECK(Rational(6, 3).is_integer());
}

TEST_CASE("rational ordering") {
  CHECK(Rational(5, 2) < Rational(8, 3));
  CHECK(Rational(8, 3) < Rational(3));
  CHECK(Rational(-1, 2) < Rational(0));
}

TEST_CASE("rational string round trip") {
  for (const char* s : {"5/2", "8/3", "-7/12", "42", "0"}) {
    CHECK(Rational::from_string(s).to_string() == s);
  }
}
