#ifndef GPTLAB_LP_HPP
#define GPTLAB_LP_HPP

#include <optional>
#include <vector>

#include "gptlab/rational.hpp"

namespace gptlab {

struct LinearConstraint
{
    RatVec coeffs;
    Rational rhs;
};

/**
 * A linear program over free rational variables: equalities coeffs·x = rhs,
 * inequalities coeffs·x <= rhs, and an optional objective to maximize.
 */
struct LinearProgram
{
    int variables = 0;

    std::vector<LinearConstraint> equalities;
    std::vector<LinearConstraint> inequalities;
    std::optional<RatVec> objective;

    explicit LinearProgram(int variable_count = 0) : variables(variable_count) {}

    void add_eq(RatVec coeffs, Rational rhs);
    /** coeffs·x <= rhs */
    void add_le(RatVec coeffs, Rational rhs);
    /** coeffs·x >= rhs, stored as the negated <= row. */
    void add_ge(RatVec coeffs, Rational rhs);
};

/**
 * Proof of infeasibility: multipliers such that
 *   sum_k ineq[k] * inequalities[k]  +  sum_j eq[j] * equalities[j]
 * has all-zero coefficients and a strictly negative right-hand side,
 * with every inequality multiplier nonnegative.
 */
struct FarkasCertificate
{
    RatVec eq_multipliers;
    RatVec ineq_multipliers;
};

struct LpResult
{
    bool feasible = false;
    RatVec witness;
    FarkasCertificate certificate;
};

/**
 * Exact feasibility via phase-1 simplex with Bland's rule. Feasible results
 * carry a point satisfying every constraint exactly; infeasible results
 * carry a verified Farkas certificate.
 */
LpResult lp_feasible(const LinearProgram& lp);

struct LpOptimum
{
    enum class Status
    {
        Optimal,
        Infeasible,
        Unbounded
    };
    Status status = Status::Infeasible;
    Rational value;
    RatVec argmax;
    FarkasCertificate certificate;
};

/** Exact two-phase simplex maximizing lp.objective (required). */
LpOptimum lp_maximize(const LinearProgram& lp);

/** Does x satisfy every constraint of lp exactly? */
bool satisfies(const LinearProgram& lp, const RatVec& x);

/** Re-contract a certificate against the constraint rows and check it. */
bool farkas_valid(const LinearProgram& lp, const FarkasCertificate& cert);

}  // namespace gptlab

#endif  // GPTLAB_LP_HPP
