// Shared seeded LP generator for the cross-oracle suites.
#ifndef GPTLAB_TESTS_LP_CORPUS_HPP
#define GPTLAB_TESTS_LP_CORPUS_HPP

#include "gptlab/lp.hpp"
#include "gptlab/random.hpp"

namespace gptlab::testing {

inline LinearProgram random_lp(SplitMix64& rng, int max_vars)
{
    const int n = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(max_vars)));
    LinearProgram lp(n);
    const int eqs = static_cast<int>(rng.below(3));
    const int ineqs = 1 + static_cast<int>(rng.below(6));
    const auto random_row = [&]() {
        RatVec row(n);
        for (int j = 0; j < n; ++j)
        {
            const std::int64_t num = static_cast<std::int64_t>(rng.below(9)) - 4;
            const std::int64_t den = 1 + static_cast<std::int64_t>(rng.below(3));
            row(j) = Rational(num, den);
        }
        return row;
    };
    const auto random_rhs = [&]() {
        return Rational(static_cast<std::int64_t>(rng.below(13)) - 6,
                        1 + static_cast<std::int64_t>(rng.below(3)));
    };
    for (int i = 0; i < eqs; ++i)
        lp.add_eq(random_row(), random_rhs());
    for (int i = 0; i < ineqs; ++i)
        lp.add_le(random_row(), random_rhs());
    return lp;
}

}  // namespace gptlab::testing

#endif
