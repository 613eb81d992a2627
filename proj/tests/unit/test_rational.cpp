#include "eqcheck/rational.hpp"

#include <doctest.h>

using namespace eqcheck;

TEST_CASE("rationals always print numerator and denominator") {
    CHECK(to_string(Rat(1)) == "1/1");
    CHECK(to_string(Rat(0)) == "0/1");
    CHECK(to_string(Rat(6, 8)) == "3/4");
    CHECK(to_string(Rat(-1, 2)) == "-1/2");
}

TEST_CASE("parse_rat inverts to_string") {
    for (const char* s : {"0/1", "1/1", "3/4", "15/64", "7"}) {
        Rat r = parse_rat(s);
        CHECK(parse_rat(to_string(r)) == r);
    }
    CHECK(parse_rat("2/4") == Rat(1, 2));
    CHECK_THROWS_AS(parse_rat("x"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rat("1/0"), std::invalid_argument);
}

TEST_CASE("dyadic values and exponents") {
    CHECK(pow2(0) == 1);
    CHECK(pow2(70) == BigInt("1180591620717411303424"));
    CHECK(dyadic_to_rat({BigInt(6), 3}) == Rat(3, 4));
    CHECK(dyadic_exponent(Rat(3, 4)) == 2u);
    CHECK(dyadic_exponent(Rat(1)) == 0u);
    CHECK(dyadic_exponent(Rat(0)) == 0u);
    CHECK_FALSE(dyadic_exponent(Rat(1, 3)).has_value());
}
