#ifndef GPTLAB_APPROX_HPP
#define GPTLAB_APPROX_HPP

#include "gptlab/rational.hpp"

namespace gptlab {

/**
 * A real number of the form
 *
 *     scale * sqrt(1 / cos(pi * sec_turns)) * fn(2 * pi * angle_turns)
 *
 * with fn either cos or sin. sec_turns = 0 makes the radius factor 1. This
 * covers every coordinate of the regular-polygon state spaces.
 */
struct TrigExpr
{
    enum class Fn
    {
        Cos,
        Sin
    };

    Fn fn = Fn::Cos;
    Rational angle_turns = 0;
    Rational sec_turns = 0;
    Rational scale = 1;

    static TrigExpr cos(Rational angle_turns, Rational sec_turns = 0, Rational scale = 1)
    {
        return {Fn::Cos, std::move(angle_turns), std::move(sec_turns), std::move(scale)};
    }
    static TrigExpr sin(Rational angle_turns, Rational sec_turns = 0, Rational scale = 1)
    {
        return {Fn::Sin, std::move(angle_turns), std::move(sec_turns), std::move(scale)};
    }
};

/**
 * Continued-fraction convergent q of x with |q - x| < eps, of minimal
 * denominator among the convergents achieving the bound. The expression is
 * evaluated with high-precision MPFR arithmetic enclosed in a guard
 * interval; only this function ever touches inexact numbers.
 */
Rational approx_rational(const TrigExpr& x, const Rational& eps);

}  // namespace gptlab

#endif  // GPTLAB_APPROX_HPP
