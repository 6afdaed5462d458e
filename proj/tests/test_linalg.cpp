#include <doctest.h>

#include "gptlab/linalg.hpp"
#include "gptlab/random.hpp"

using namespace gptlab;

namespace {

RatMat mat(int rows, int cols, std::initializer_list<Rational> entries)
{
    RatMat m(rows, cols);
    auto it = entries.begin();
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            m(r, c) = *it++;
    return m;
}

RatMat random_matrix(SplitMix64& rng, int rows, int cols)
{
    RatMat m(rows, cols);
    for (int r = 0; r < rows; ++r)
    {
        for (int c = 0; c < cols; ++c)
        {
            const std::int64_t num = static_cast<std::int64_t>(rng.below(11)) - 5;
            const std::int64_t den = 1 + static_cast<std::int64_t>(rng.below(4));
            m(r, c) = Rational(num, den);
        }
    }
    return m;
}

}  // namespace

TEST_CASE("identity system has the trivial solution and no kernel")
{
    const auto sol = solve_linear_system(mat(2, 2, {1, 0, 0, 1}), make_vec({3, 4}));
    REQUIRE(sol.consistent);
    CHECK(sol.particular == make_vec({3, 4}));
    CHECK(sol.kernel.cols() == 0);
}

TEST_CASE("one equation in two unknowns yields a one-dimensional kernel")
{
    const auto sol = solve_linear_system(mat(1, 2, {1, 1}), make_vec({1}));
    REQUIRE(sol.consistent);
    CHECK(sol.particular == make_vec({1, 0}));
    REQUIRE(sol.kernel.cols() == 1);
    CHECK(RatVec(sol.kernel.col(0)) == make_vec({1, -1}));
}

TEST_CASE("contradictory rows are reported inconsistent")
{
    const auto sol = solve_linear_system(mat(2, 2, {1, 0, 1, 0}), make_vec({0, 1}));
    CHECK(!sol.consistent);
}

TEST_CASE("solve_linear_system rejects mismatched dimensions")
{
    CHECK_THROWS_AS(solve_linear_system(mat(2, 2, {1, 0, 0, 1}), make_vec({1})), UsageError);
}

TEST_CASE("rank examples")
{
    CHECK(rank(mat(2, 2, {1, 0, 0, 1})) == 2);
    CHECK(rank(mat(2, 2, {1, 2, 2, 4})) == 1);
    CHECK(rank(RatMat::Zero(3, 3)) == 0);
}

TEST_CASE("substituting particular plus kernel combinations reproduces the rhs")
{
    SplitMix64 rng(20240809);
    for (int round = 0; round < 40; ++round)
    {
        const int rows = 1 + static_cast<int>(rng.below(4));
        const int cols = 1 + static_cast<int>(rng.below(5));
        const RatMat a = random_matrix(rng, rows, cols);
        const RatVec b = random_matrix(rng, rows, 1);
        const auto sol = solve_linear_system(a, b);
        if (!sol.consistent)
            continue;
        RatVec x = sol.particular;
        for (Eigen::Index k = 0; k < sol.kernel.cols(); ++k)
            x += Rational(static_cast<int>(rng.below(7)) - 3, 1 + static_cast<int>(rng.below(3))) *
                 sol.kernel.col(k);
        CHECK(RatVec(a * x) == b);
    }
}

TEST_CASE("rank agrees with the rank of the transpose")
{
    SplitMix64 rng(42);
    for (int round = 0; round < 60; ++round)
    {
        const int rows = 1 + static_cast<int>(rng.below(5));
        const int cols = 1 + static_cast<int>(rng.below(5));
        const RatMat a = random_matrix(rng, rows, cols);
        CHECK(rank(a) == rank(RatMat(a.transpose())));
    }
}

TEST_CASE("inverse multiplies back to the identity and rejects singular input")
{
    const RatMat a = mat(2, 2, {Rational(1, 2), 1, 0, 3});
    const auto inv = inverse(a);
    REQUIRE(inv.has_value());
    CHECK(RatMat(a * *inv) == RatMat(RatMat::Identity(2, 2)));
    CHECK(!inverse(mat(2, 2, {1, 2, 2, 4})).has_value());
    CHECK(!inverse(RatMat::Zero(1, 1)).has_value());
}
