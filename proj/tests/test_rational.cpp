#include <doctest.h>

#include <limits>

#include "pwreg/rational.hpp"

using namespace pwreg;

TEST_CASE("snap of exact dyadics") {
  CHECK(rat_from_double_exact(0.5) == Rational(1, 2));
  CHECK(rat_from_double_exact(-0.75) == Rational(-3, 4));
  CHECK(rat_from_double_exact(3.0) == Rational(3));
}

TEST_CASE("snap of 0.1 is the IEEE-754 bit pattern") {
  Rational r = rat_from_double_exact(0.1);
  Rational expected(mpz_class("3602879701896397"),
                    mpz_class("36028797018963968"));  // 2^55
  expected.canonicalize();
  CHECK(r == expected);
  CHECK(rat_to_double(r) == 0.1);
}

TEST_CASE("snap rejects non-finite input") {
  CHECK_THROWS_AS(rat_from_double_exact(std::numeric_limits<double>::quiet_NaN()),
                  NonFinite);
  CHECK_THROWS_AS(rat_from_double_exact(std::numeric_limits<double>::infinity()),
                  NonFinite);
}

TEST_CASE("string parsing and printing") {
  CHECK(rat_from_string("3/4") == Rational(3, 4));
  CHECK(rat_from_string("-6/8") == Rational(-3, 4));
  CHECK(rat_from_string("5") == Rational(5));
  CHECK(rat_to_string(Rational(7, 2)) == "7/2");
  CHECK_THROWS_AS(rat_from_string("abc"), BadInput);
  CHECK_THROWS_AS(rat_from_string(""), BadInput);
}
