#include "doctest.h"

#include "coresched/rational.hpp"

using coresched::Rat;

TEST_CASE("rationals normalize and reduce") {
  CHECK(Rat(6, 4) == Rat(3, 2));
  CHECK(Rat(-6, 4) == Rat(-3, 2));
  CHECK(Rat(6, -4) == Rat(-3, 2));
  CHECK(Rat(0, 7) == Rat(0));
  CHECK(Rat(5).is_integer());
  CHECK_FALSE(Rat(5, 2).is_integer());
}

TEST_CASE("arithmetic is exact") {
  CHECK(Rat(1, 3) + Rat(1, 6) == Rat(1, 2));
  CHECK(Rat(7, 2) - Rat(3) == Rat(1, 2));
  CHECK(Rat(2, 3) * Rat(9, 4) == Rat(3, 2));
  CHECK(Rat(5) / Rat(1, 64) == Rat(320));
  Rat acc;
  for (int i = 0; i < 64; ++i) acc += Rat(1, 64);
  CHECK(acc == Rat(1));
}

TEST_CASE("comparisons use cross products, not doubles") {
  CHECK(Rat(1, 3) < Rat(34, 100));
  CHECK(Rat(10, 3) > Rat(3));
  CHECK(Rat(2, 4) <= Rat(1, 2));
  CHECK(Rat(2, 4) >= Rat(1, 2));
  CHECK(coresched::rat_max(Rat(3, 2), Rat(10, 7)) == Rat(3, 2));
  CHECK(coresched::rat_min(Rat(3, 2), Rat(10, 7)) == Rat(10, 7));
}

TEST_CASE("string round trip") {
  CHECK(Rat(7).str() == "7");
  CHECK(Rat(22, 8).str() == "11/4");
  CHECK(Rat::parse("11/4") == Rat(11, 4));
  CHECK(Rat::parse("-3") == Rat(-3));
  CHECK(Rat::parse("64") == Rat(64));
  CHECK_FALSE(Rat::parse("x").has_value());
  CHECK_FALSE(Rat::parse("1/0").has_value());
  CHECK_FALSE(Rat::parse("").has_value());
}

TEST_CASE("division by zero throws") {
  CHECK_THROWS_AS(Rat(1) / Rat(0), std::invalid_argument);
  CHECK_THROWS_AS(Rat(1, 0), std::invalid_argument);
}
