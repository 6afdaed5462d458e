#include <doctest.h>

#include <boost/multiprecision/mpfr.hpp>

#include "gptlab/approx.hpp"
#include "gptlab/rational.hpp"

using namespace gptlab;

namespace {
const Rational kMicro(1, 1000000);
const Rational kNano(1, 1000000000);
}

TEST_CASE("rational trigonometric values come out exactly")
{
    CHECK(approx_rational(TrigExpr::cos(Rational(4, 4)), kMicro) == 1);
    CHECK(approx_rational(TrigExpr::cos(Rational(1, 3)), kMicro) == Rational(-1, 2));
    CHECK(approx_rational(TrigExpr::cos(Rational(1, 4)), kMicro) == 0);
    CHECK(approx_rational(TrigExpr::sin(Rational(1, 2)), kMicro) == 0);
    CHECK(approx_rational(TrigExpr::sin(Rational(1, 4)), kMicro) == 1);
}

TEST_CASE("scale factors multiply through")
{
    CHECK(approx_rational(TrigExpr::cos(Rational(1, 2), 0, Rational(3, 7)), kMicro) ==
          Rational(-3, 7));
}

TEST_CASE("pentagon radius coordinate lands within eps of a root-only evaluation")
{
    using F = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<60>>;
    const F s5 = sqrt(F(5));
    // r5 * cos(2*pi/5) where r5^2 = 1/cos(pi/5) = 4/(1+sqrt(5)).
    const F oracle = sqrt(4 / (s5 + 1)) * (s5 - 1) / 4;
    const Rational q = approx_rational(TrigExpr::cos(Rational(1, 5), Rational(1, 5)), kNano);
    CHECK(abs(q - static_cast<Rational>(oracle)) < kNano);
}

TEST_CASE("convergents stop at the minimal adequate denominator")
{
    // sqrt(sec(pi/4)) * cos(2*pi/8) = 2^(1/4) * sqrt(2)/2 ~ 0.8409, whose
    // convergents are 0, 1, 5/6, 16/19, ...; at eps = 1/30 the answer is 5/6.
    const Rational q =
        approx_rational(TrigExpr::cos(Rational(1, 8), Rational(1, 4)), Rational(1, 30));
    CHECK(q == Rational(5, 6));
}

TEST_CASE("approx_rational rejects nonpositive and sub-band tolerances")
{
    CHECK_THROWS_AS(approx_rational(TrigExpr::cos(Rational(1, 3)), Rational(0)), UsageError);
    CHECK_THROWS_AS(approx_rational(TrigExpr::cos(Rational(1, 3)), Rational(-1, 2)), UsageError);
    const Rational tiny(1, boost::multiprecision::pow(boost::multiprecision::mpz_int(10), 75));
    CHECK_THROWS_AS(approx_rational(TrigExpr::cos(Rational(1, 3)), tiny), UsageError);
}
