#include <doctest.h>

#include "gptlab/fourier_motzkin.hpp"
#include "gptlab/lp.hpp"
#include "lp_corpus.hpp"

using namespace gptlab;

TEST_CASE("a box is feasible and the witness satisfies it exactly")
{
    LinearProgram lp(1);
    lp.add_ge(make_vec({1}), 0);  // x >= 0
    lp.add_le(make_vec({1}), 1);  // x <= 1
    const LpResult result = lp_feasible(lp);
    REQUIRE(result.feasible);
    // The witness is some basic solution of the box; exactness is the contract.
    CHECK(satisfies(lp, result.witness));
}

TEST_CASE("an empty interval is infeasible with a verified certificate")
{
    LinearProgram lp(1);
    lp.add_le(make_vec({1}), 0);  // x <= 0
    lp.add_ge(make_vec({1}), 1);  // x >= 1
    const LpResult result = lp_feasible(lp);
    REQUIRE(!result.feasible);
    CHECK(farkas_valid(lp, result.certificate));
    // The two rows sum (after scaling) to 0 <= -1.
    CHECK(result.certificate.ineq_multipliers(0) > 0);
    CHECK(result.certificate.ineq_multipliers(1) > 0);
}

TEST_CASE("equalities alone can be infeasible")
{
    LinearProgram lp(2);
    lp.add_eq(make_vec({1, 1}), 1);
    lp.add_eq(make_vec({2, 2}), 3);
    const LpResult result = lp_feasible(lp);
    REQUIRE(!result.feasible);
    CHECK(farkas_valid(lp, result.certificate));
}

TEST_CASE("maximization finds the exact optimum")
{
    LinearProgram lp(2);
    lp.add_ge(make_vec({1, 0}), 0);
    lp.add_ge(make_vec({0, 1}), 0);
    lp.add_le(make_vec({1, 1}), Rational(3, 2));
    lp.add_le(make_vec({1, 0}), 1);
    lp.objective = make_vec({2, 1});
    const LpOptimum opt = lp_maximize(lp);
    REQUIRE(opt.status == LpOptimum::Status::Optimal);
    CHECK(opt.value == Rational(5, 2));  // x = 1, y = 1/2
    CHECK(opt.argmax == make_vec({1, Rational(1, 2)}));
}

TEST_CASE("maximization detects unboundedness and infeasibility")
{
    LinearProgram up(1);
    up.add_ge(make_vec({1}), 0);
    up.objective = make_vec({1});
    CHECK(lp_maximize(up).status == LpOptimum::Status::Unbounded);

    LinearProgram inf(1);
    inf.add_le(make_vec({1}), 0);
    inf.add_ge(make_vec({1}), 1);
    inf.objective = make_vec({1});
    CHECK(lp_maximize(inf).status == LpOptimum::Status::Infeasible);
}

TEST_CASE("degenerate programs terminate under Bland's rule")
{
    // A classic cycling-prone structure: many tight constraints through 0.
    LinearProgram lp(3);
    lp.add_le(make_vec({Rational(1, 4), -8, -1}), 0);
    lp.add_le(make_vec({Rational(1, 2), -12, -Rational(1, 2)}), 0);
    lp.add_le(make_vec({0, 0, 1}), 1);
    lp.add_ge(make_vec({1, 0, 0}), 0);
    lp.add_ge(make_vec({0, 1, 0}), 0);
    lp.add_ge(make_vec({0, 0, 1}), 0);
    lp.objective = make_vec({Rational(3, 4), -20, Rational(1, 2)});
    const LpOptimum opt = lp_maximize(lp);
    CHECK(opt.status == LpOptimum::Status::Optimal);
}

TEST_CASE("fourier-motzkin handles the pinned examples identically")
{
    LinearProgram box(1);
    box.add_ge(make_vec({1}), 0);
    box.add_le(make_vec({1}), 1);
    CHECK(lp_feasible_fm(box).feasible);

    LinearProgram empty(1);
    empty.add_le(make_vec({1}), 0);
    empty.add_ge(make_vec({1}), 1);
    const LpResult fm = lp_feasible_fm(empty);
    REQUIRE(!fm.feasible);
    CHECK(farkas_valid(empty, fm.certificate));
}

TEST_CASE("fourier-motzkin rejects oversized programs")
{
    LinearProgram lp(13);
    CHECK_THROWS_AS(lp_feasible_fm(lp), TooLargeError);
}

TEST_CASE("simplex and fourier-motzkin agree on a seeded corpus")
{
    SplitMix64 rng(7);
    for (int round = 0; round < 200; ++round)
    {
        const LinearProgram lp = testing::random_lp(rng, 6);
        const LpResult simplex = lp_feasible(lp);
        const LpResult fm = lp_feasible_fm(lp);
        REQUIRE(simplex.feasible == fm.feasible);
        if (simplex.feasible)
        {
            CHECK(satisfies(lp, simplex.witness));
            CHECK(satisfies(lp, fm.witness));
        }
        else
        {
            CHECK(farkas_valid(lp, simplex.certificate));
            CHECK(farkas_valid(lp, fm.certificate));
        }
    }
}
