#include "gptlab/approx.hpp"

#include <boost/multiprecision/mpfr.hpp>

#include "gptlab/errors.hpp"

namespace gptlab {

namespace {

using boost::multiprecision::mpz_int;

// floor(p/q) with exact integer arithmetic.
mpz_int rational_floor(const Rational& q)
{
    const mpz_int num = numerator(q);
    const mpz_int den = denominator(q);
    mpz_int quot = num / den;  // truncated
    if (num < 0 && quot * den != num)
        --quot;
    return quot;
}

// Evaluates the expression at the given decimal precision. MPFR operations
// are correctly rounded, so the result is accurate to within a few ulps of
// the working precision.
template <unsigned Digits>
boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<Digits>> evaluate(const TrigExpr& x)
{
    using F = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<Digits>>;
    const F pi = boost::math::constants::pi<F>();
    F value = static_cast<F>(x.scale);
    if (x.sec_turns != 0)
    {
        const F sec_arg = pi * static_cast<F>(x.sec_turns);
        value *= sqrt(1 / cos(sec_arg));
    }
    const F angle = 2 * pi * static_cast<F>(x.angle_turns);
    if (x.fn == TrigExpr::Fn::Cos)
        value *= F(cos(angle));
    else
        value *= F(sin(angle));
    return value;
}

}  // namespace

Rational approx_rational(const TrigExpr& x, const Rational& eps)
{
    if (eps <= 0)
        throw UsageError("approx_rational: eps must be positive");

    // Two working precisions; their agreement certifies the guard band.
    const auto v_low = evaluate<90>(x);
    const auto v_high = evaluate<160>(x);
    const Rational band = Rational(1, mpz_int("1" + std::string(70, '0')));  // 10^-70
    const Rational center = static_cast<Rational>(v_high);
    if (abs(center - static_cast<Rational>(v_low)) > band)
        throw InternalInconsistencyError("approx_rational: precision levels disagree");
    // The true value lies within [center - band, center + band]: the 160-digit
    // evaluation is a chain of a handful of correctly rounded operations on
    // arguments of moderate size, so its total error is far below 10^-70.

    if (eps <= 2 * band)
        throw UsageError("approx_rational: eps below the evaluation guard band (10^-69)");

    // Walk the continued-fraction convergents of the center; denominators
    // increase strictly, so the first convergent inside the bound has the
    // minimal denominator among convergents.
    mpz_int h_prev = 0, h_curr = 1;  // numerator recurrence seeds h_{-2}, h_{-1}
    mpz_int k_prev = 1, k_curr = 0;  // denominator recurrence seeds k_{-2}, k_{-1}
    Rational remainder = center;
    while (true)
    {
        const mpz_int a = rational_floor(remainder);
        const mpz_int h_next = a * h_curr + h_prev;
        const mpz_int k_next = a * k_curr + k_prev;
        const Rational convergent(h_next, k_next);
        if (abs(convergent - center) + band < eps)
            return convergent;
        const Rational frac = remainder - Rational(a);
        if (frac == 0)
            throw InternalInconsistencyError("approx_rational: exhausted convergents without meeting eps");
        remainder = Rational(1) / frac;
        h_prev = h_curr;
        h_curr = h_next;
        k_prev = k_curr;
        k_curr = k_next;
    }
}

}  // namespace gptlab
