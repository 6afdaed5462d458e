#ifndef GPTLAB_RANDOM_HPP
#define GPTLAB_RANDOM_HPP

#include <cstdint>

#include "gptlab/polytope.hpp"

namespace gptlab {

/**
 * splitmix64: a fixed 64-bit mixing generator, chosen so seeded corpora are
 * byte-identical across platforms and standard libraries.
 */
class SplitMix64
{
  public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next()
    {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /** Value in [0, bound); bound > 0. Deterministic, mild modulo bias. */
    std::uint64_t below(std::uint64_t bound) { return next() % bound; }

  private:
    std::uint64_t state_;
};

struct RandomPolytopeSpec
{
    int dim = 2;           // 1..5
    int vertex_target = 6; // 3..12
    int denom_bound = 6;   // numerators in [-B, B], denominators in [1, B]
    std::uint64_t seed = 0;
};

/**
 * Draws vertex_target random rational points and canonicalizes; retries
 * with a reseeded stream until the hull has the requested dimension.
 * Throws TooLargeError when 64 attempts are exhausted.
 */
VPolytope random_polytope(const RandomPolytopeSpec& spec);

}  // namespace gptlab

#endif  // GPTLAB_RANDOM_HPP
