#include <doctest.h>

#include "gptlab/rational.hpp"

using namespace gptlab;

TEST_CASE("rationals serialize in lowest terms with the sign on the numerator")
{
    CHECK(to_string(Rational(1, 2)) == "1/2");
    CHECK(to_string(Rational(-22, 7)) == "-22/7");
    CHECK(to_string(Rational(2, 4)) == "1/2");
    CHECK(to_string(Rational(5, 1)) == "5");
    CHECK(to_string(Rational(0)) == "0");
    CHECK(to_string(Rational(3, -6)) == "-1/2");
}

TEST_CASE("parse_rational round-trips and canonicalizes")
{
    CHECK(parse_rational("2/4") == Rational(1, 2));
    CHECK(parse_rational("-22/7") == Rational(-22, 7));
    CHECK(parse_rational("5") == Rational(5));
    CHECK(parse_rational("0/9") == Rational(0));
    for (const char* text : {"1/2", "-3", "0", "123456789123456789/987654321"})
        CHECK(to_string(parse_rational(text)) == text);
}

TEST_CASE("parse_rational rejects malformed input")
{
    for (const char* bad : {"", "/", "1/", "/2", "1/0", "1/-2", "a", "1.5", "--1", "1/2/3", " 1"})
        CHECK_THROWS_AS(parse_rational(bad), UsageError);
}

TEST_CASE("lex_less orders vectors entrywise")
{
    const RatVec a = make_vec({0, 1});
    const RatVec b = make_vec({0, 2});
    const RatVec c = make_vec({1, 0});
    CHECK(lex_less(a, b));
    CHECK(lex_less(b, c));
    CHECK(!lex_less(c, a));
    CHECK(!lex_less(a, a));
}
