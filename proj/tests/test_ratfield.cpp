#include "doctest.h"
#include "support.hpp"

#include "cubic/ratfield.hpp"

using namespace cubic;
using cubic::testing::rng;

TEST_SUITE("ratfield") {

TEST_CASE("valuation of simple elements") {
    CHECK(valuation(parse_ratfn("t^2 + t^3")) == 2);
    CHECK(valuation(RatFn(7)) == 0);
    CHECK(valuation(parse_ratfn("(t + t^2)/(t^3)")) == -2);
    CHECK_THROWS_AS(valuation(RatFn()), ValuationError);
    CHECK_FALSE(valuation_or_none(RatFn()).has_value());
    CHECK(*valuation_or_none(RatFn::t_power(-3)) == -3);
}

TEST_CASE("leading coefficients") {
    CHECK(leading_coefficient(parse_ratfn("3*t^2 + t^3")) == Rational(3));
    CHECK(leading_coefficient(parse_ratfn("(2*t)/(4 + t)")) == Rational(1, 2));
    CHECK(leading_coefficient(parse_ratfn("(-1)/(t)")) == Rational(-1));
    CHECK(valuation(parse_ratfn("(-1)/(t)")) == -1);
    CHECK_THROWS_AS(leading_coefficient(RatFn()), ValuationError);
}

TEST_CASE("field arithmetic") {
    const RatFn t2 = RatFn::t_power(2), t3 = RatFn::t_power(3);
    const RatFn m = field_arithmetic(t2, t3, FieldOp::mul);
    CHECK(m == RatFn::t_power(5));
    CHECK(valuation(m) == 5);
    CHECK(field_arithmetic(RatFn::t_power(1), -RatFn::t_power(1), FieldOp::add).is_zero());
    const RatFn s = field_arithmetic(parse_ratfn("t + t^2"), -RatFn::t_power(1), FieldOp::add);
    CHECK(s == t2);
    CHECK(valuation(s) == 2);
    CHECK_THROWS(field_arithmetic(t2, RatFn(), FieldOp::div));
}

TEST_CASE("canonical form") {
    // (t^2 - 1)/(2t - 2) = (t + 1)/2
    const RatFn f = parse_ratfn("(-1 + t^2)/(-2 + 2*t)");
    CHECK(f.denominator() == QPoly(Rational(1)));
    CHECK(f == parse_ratfn("(1 + t)") * RatFn(Rational(1, 2)));
    CHECK(to_string(parse_ratfn("(2*t)/(4 + t)")) == "(2*t)/(4 + t)");
    CHECK(to_string(parse_ratfn("t^3 + 3*t^2")) == "3*t^2 + t^3");
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse_ratfn("t^"), ParseError);
    CHECK_THROWS_AS(parse_ratfn("(1 + t"), ParseError);
    CHECK_THROWS_AS(parse_ratfn("x"), ParseError);
    CHECK_THROWS(parse_ratfn("(1)/(0)"));
}

TEST_CASE("oracle t^k P/Q") {
    for (int n = 0; n < 200; ++n) {
        const auto k = testing::random_known(rng());
        REQUIRE(valuation(k.f) == k.val);
        REQUIRE(leading_coefficient(k.f) == k.lc);
    }
}

TEST_CASE("round trip through text") {
    for (int n = 0; n < 200; ++n) {
        const auto k = testing::random_known(rng());
        const std::string s = to_string(k.f);
        REQUIRE(parse_ratfn(s) == k.f);
        REQUIRE(to_string(parse_ratfn(s)) == s);
    }
}

TEST_CASE("valuation properties on 1000 pairs") {
    const auto c = testing::valuation_suite(1000, 11);
    INFO(c.detail);
    CHECK(c.ok);
}

}
