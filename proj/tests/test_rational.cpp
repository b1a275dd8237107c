#include <doctest.h>

#include "fieldtopo/rational.hpp"

using fieldtopo::Rational;

TEST_CASE("rationals are stored reduced") {
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-3, 6).num() == -1);
    CHECK(Rational(-3, 6).den() == 2);
    CHECK(Rational(3, -6) == Rational(-1, 2));
    CHECK(Rational(0, 7).den() == 1);
}

TEST_CASE("arithmetic is exact") {
    CHECK(Rational(1, 3) + Rational(1, 6) == Rational(1, 2));
    CHECK(Rational(1, 4) - Rational(1, 4) == Rational(0));
    CHECK(Rational(7, 4) * Rational(4, 7) == Rational(1));
    CHECK(-Rational(1, 2) == Rational(-1, 2));
    CHECK(Rational(1, 2) < Rational(2, 3));
}

TEST_CASE("zero denominator is rejected") {
    CHECK_THROWS_AS(Rational(1, 0), std::invalid_argument);
}

TEST_CASE("formatting") {
    CHECK(Rational(7, 4).str() == "7/4");
    CHECK(Rational(-2).str() == "-2");
    CHECK(Rational(6, 3).str() == "2");
}
