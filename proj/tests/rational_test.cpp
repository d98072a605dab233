#include "doctest.h"
#include "perturb_rank/errors.hpp"
#include "perturb_rank/rational.hpp"

using namespace perturb_rank;

TEST_CASE("parse and print") {
  CHECK(to_string(parse_rational("3")) == "3");
  CHECK(to_string(parse_rational("-1/8")) == "-1/8");
  CHECK(to_string(parse_rational("2/4")) == "1/2");
  CHECK(to_string(parse_rational("0/7")) == "0");
  CHECK(to_string(parse_rational("-0")) == "0");
  CHECK(parse_rational("+6/2") == Rational(3));
}

TEST_CASE("canonical form") {
  Rational r = parse_rational("-12/18");
  CHECK(r.get_num() == -2);
  CHECK(r.get_den() == 3);
  CHECK(parse_rational("0").get_den() == 1);
}

TEST_CASE("malformed input") {
  CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
  CHECK_THROWS_AS(parse_rational(""), ParseError);
  CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
  CHECK_THROWS_AS(parse_rational("1/"), ParseError);
  CHECK_THROWS_AS(parse_rational("abc"), ParseError);
  CHECK_THROWS_AS(parse_rational("1 /2"), ParseError);
  CHECK_THROWS_AS(parse_rational("6/-1"), ParseError);
}

TEST_CASE("vector helpers") {
  RationalVector a{Rational(1, 2), Rational(1, 3)};
  RationalVector b{Rational(2), Rational(3)};
  CHECK(dot(a, b) == 2);
  CHECK(is_zero_vector({Rational(0), Rational(0)}));
  CHECK_FALSE(is_zero_vector(a));
}
