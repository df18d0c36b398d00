#include <doctest.h>

#include <stdexcept>

#include "lcm/rational.hpp"

using lcm::Rat;

TEST_CASE("rational arithmetic stays reduced") {
  CHECK(Rat(2, 4) == Rat(1, 2));
  CHECK(Rat(-2, -4) == Rat(1, 2));
  CHECK(Rat(2, -4) == Rat(-1, 2));
  CHECK((Rat(1, 3) + Rat(1, 6)) == Rat(1, 2));
  CHECK((Rat(3, 2) * Rat(2, 3)) == Rat(1));
  CHECK((Rat(1, 2) - Rat(2, 3)) == Rat(-1, 6));
  CHECK((Rat(5, 6) / Rat(5, 3)) == Rat(1, 2));
  CHECK(-Rat(1, 2) == Rat(-1, 2));
}

TEST_CASE("rational ordering is exact") {
  CHECK(Rat(1, 3) < Rat(34, 100));
  CHECK(Rat(2, 3) > Rat(66, 100));
  CHECK(Rat(7, 3) >= Rat(7, 3));
  CHECK(!(Rat(1, 3) < Rat(1, 3)));
}

TEST_CASE("floor and next_integer at boundaries") {
  CHECK(Rat(7, 2).floor() == 3);
  CHECK(Rat(-7, 2).floor() == -4);
  CHECK(Rat(3).floor() == 3);
  CHECK(Rat(-3).floor() == -3);
  // next_integer is the smallest integer strictly above
  CHECK(Rat(3).next_integer() == 4);
  CHECK(Rat(5, 2).next_integer() == 3);
  CHECK(Rat(-1, 2).next_integer() == 0);
  CHECK(Rat(0).next_integer() == 1);
}

TEST_CASE("parse and format round-trip") {
  CHECK(Rat::parse("3/4") == Rat(3, 4));
  CHECK(Rat::parse("-3/4") == Rat(-3, 4));
  CHECK(Rat::parse("6/8") == Rat(3, 4));
  CHECK(Rat::parse("5") == Rat(5));
  CHECK(Rat(3, 4).str() == "3/4");
  CHECK(Rat(-1, 2).str() == "-1/2");
  CHECK(Rat(7).str() == "7");
  CHECK(Rat::parse(Rat(22, 7).str()) == Rat(22, 7));
  CHECK_THROWS_AS(Rat::parse(""), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(Rat::parse("a/b"), std::invalid_argument);
}

TEST_CASE("division by zero and overflow throw") {
  CHECK_THROWS_AS(Rat(1) / Rat(0), std::domain_error);
  const Rat big(INT64_MAX / 2, 1);
  CHECK_THROWS_AS(big * big, std::overflow_error);
}

TEST_CASE("to_double is the obvious quotient") {
  CHECK(Rat(1, 2).to_double() == doctest::Approx(0.5));
  CHECK(Rat(-1, 3).to_double() == doctest::Approx(-1.0 / 3.0));
}
