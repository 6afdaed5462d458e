#include "gptlab/random.hpp"

#include "gptlab/errors.hpp"

namespace gptlab {

VPolytope random_polytope(const RandomPolytopeSpec& spec)
{
    if (spec.dim < 1 || spec.dim > 5)
        throw UsageError("random_polytope: dim must be between 1 and 5");
    if (spec.vertex_target < 3 || spec.vertex_target > 12)
        throw UsageError("random_polytope: vertex_target must be between 3 and 12");
    if (spec.denom_bound < 1)
        throw UsageError("random_polytope: denom_bound must be positive");

    const std::uint64_t bound = static_cast<std::uint64_t>(spec.denom_bound);
    for (std::uint64_t attempt = 0; attempt < 64; ++attempt)
    {
        SplitMix64 rng(spec.seed + 0x517cc1b727220a95ull * attempt);
        std::vector<RatVec> points;
        points.reserve(static_cast<std::size_t>(spec.vertex_target));
        for (int i = 0; i < spec.vertex_target; ++i)
        {
            RatVec p(spec.dim);
            for (int c = 0; c < spec.dim; ++c)
            {
                const std::int64_t numerator =
                    static_cast<std::int64_t>(rng.below(2 * bound + 1)) - spec.denom_bound;
                const std::int64_t denominator = 1 + static_cast<std::int64_t>(rng.below(bound));
                p(c) = Rational(numerator, denominator);
            }
            points.push_back(std::move(p));
        }
        VPolytope candidate = VPolytope::from_points(spec.dim, points);
        if (dim(candidate) == spec.dim)
            return candidate;
    }
    throw TooLargeError("random_polytope: retries exhausted without reaching the requested dimension");
}

}  // namespace gptlab
