#include <doctest.h>

#include "gptlab/errors.hpp"
#include "gptlab/model.hpp"
#include "gptlab/postulates.hpp"
#include "gptlab/random.hpp"

using namespace gptlab;

namespace {

const Rational kNano(1, 1000000000);

const Model& square()
{
    static Model m{square_surrogate()};
    return m;
}

const Model& tri()
{
    static Model m{classical_model(3)};
    return m;
}

const Model& pentagon()
{
    static Model m{polygon_model(5, kNano)};
    return m;
}

std::vector<RatVec> states(const Model& m, std::initializer_list<int> indices)
{
    std::vector<RatVec> out;
    for (int i : indices)
        out.push_back(m.omega().vertex(i));
    return out;
}

}  // namespace

TEST_CASE("distinguishability witnesses re-evaluate to exact delta patterns")
{
    const auto result = perfectly_distinguishable(
        tri(), {states(tri(), {0}), states(tri(), {1}), states(tri(), {2})});
    REQUIRE(result.distinguishable);
    CHECK(distinguishability_witness_valid(
        tri(), {states(tri(), {0}), states(tri(), {1}), states(tri(), {2})}, result.witness));
}

TEST_CASE("negative verdicts re-contract to exact contradictions")
{
    const std::vector<std::vector<RatVec>> groups = {states(square(), {0}), states(square(), {1}),
                                                     states(square(), {3})};
    const auto result = perfectly_distinguishable(square(), groups);
    REQUIRE(!result.distinguishable);
    CHECK(farkas_valid(distinguishability_lp(square(), groups), result.certificate));
}

TEST_CASE("distinguishability accepts interior rational states when feasible")
{
    // Midpoint of an edge against the opposite edge of the square.
    const RatVec midpoint = (square().omega().vertex(0) + square().omega().vertex(1)) / 2;
    const auto result = perfectly_distinguishable(
        square(), {{midpoint}, states(square(), {2, 3})});
    CHECK(result.distinguishable);
}

TEST_CASE("distinguishability usage errors")
{
    CHECK_THROWS_AS(perfectly_distinguishable(square(), {}), UsageError);
    CHECK_THROWS_AS(perfectly_distinguishable(square(), {{}}), UsageError);
    CHECK_THROWS_AS(perfectly_distinguishable(square(), {{make_vec({9, 9, 9})}}), UsageError);
}

TEST_CASE("monotonicity: shrinking distinguishable sets keeps the same witness valid")
{
    const std::vector<std::vector<RatVec>> big = {states(square(), {0, 2}),
                                                  states(square(), {1, 3})};
    const auto result = perfectly_distinguishable(square(), big);
    REQUIRE(result.distinguishable);
    const std::vector<std::vector<RatVec>> small = {states(square(), {0}), states(square(), {3})};
    CHECK(distinguishability_witness_valid(square(), small, result.witness));
}

TEST_CASE("max distinguishable count matches dimension exactly for simplices")
{
    for (int d = 2; d <= 5; ++d)
    {
        const Model m{classical_model(d)};
        const auto result = max_distinguishable_count(m);
        CHECK(result.count == d);
        CHECK(distinguishability_witness_valid(
            m,
            [&] {
                std::vector<std::vector<RatVec>> groups;
                for (int i : result.vertex_indices)
                    groups.push_back({m.omega().vertex(i)});
                return groups;
            }(),
            result.witness));
    }
    CHECK(max_distinguishable_count(square()).count == 2);
    CHECK(max_distinguishable_count(pentagon()).count == 2);
}

TEST_CASE("max distinguishable equals dimension iff the state polytope is a simplex")
{
    int produced = 0;
    for (std::uint64_t seed = 500; produced < 10; ++seed)
    {
        RandomPolytopeSpec spec;
        spec.dim = 2 + static_cast<int>(seed % 2);
        spec.vertex_target = 4 + static_cast<int>(seed % 4);
        spec.seed = seed;
        const Model m{StateSpace::from_base_polytope(random_polytope(spec))};
        ++produced;
        const bool simplex = is_simplex(m.omega());
        CHECK((max_distinguishable_count(m).count == m.dim()) == simplex);
    }
}

TEST_CASE("discrimination check validates the subset precondition")
{
    CHECK_THROWS_AS(check_discrimination(square(), states(square(), {0}), states(square(), {1}),
                                         states(square(), {2}), states(square(), {3})),
                    UsageError);
}

TEST_CASE("violation search respects its vertex cap")
{
    RandomPolytopeSpec spec;
    spec.dim = 2;
    spec.vertex_target = 11;
    spec.seed = 77;
    const Model big{StateSpace::from_base_polytope(random_polytope(spec))};
    if (big.omega().vertex_count() > 10)
        CHECK_THROWS_AS(find_discrimination_violation(big), TooLargeError);
}

TEST_CASE("induced subspaces re-embed faces with exact vertex correspondence")
{
    const Face edge = square().facets().front();
    const InducedSubspace sub = induced_subspace(square(), edge);
    CHECK(sub.space.dim() == 2);
    REQUIRE(sub.parent_vertex_of.size() == 2);
    for (std::size_t k = 0; k < sub.parent_vertex_of.size(); ++k)
    {
        const RatVec embedded = sub.embedding * sub.space.omega().vertex(static_cast<int>(k));
        CHECK(embedded == square().omega().vertex(sub.parent_vertex_of[k]));
    }
    CHECK_THROWS_AS(induced_subspace(square(), Face{{}, std::nullopt}), UsageError);
}

TEST_CASE("repeatability face is the face of the effect")
{
    const Effect f = facet_effect(square(), square().facets().front());
    const auto face = repeatability_face(square(), f);
    REQUIRE(face.has_value());
    CHECK(face->vertex_indices == square().facets().front().vertex_indices);
    CHECK_THROWS_AS(repeatability_face(square(), make_vec({0, 0, Rational(1, 2)})), UsageError);
}

TEST_CASE("preservation maps fix the facet and annihilate the apex exactly")
{
    const auto verdict = check_preservation_postulate(tri());
    REQUIRE(verdict.holds);
    for (const auto& outcome : verdict.per_facet)
    {
        REQUIRE(outcome.kind == PreservationFacetOutcome::Kind::Holds);
        for (int i : outcome.facet.vertex_indices)
            CHECK(RatVec(outcome.map * tri().omega().vertex(i)) == tri().omega().vertex(i));
        for (int i = 0; i < tri().omega().vertex_count(); ++i)
        {
            const RatVec image = outcome.map * tri().omega().vertex(i);
            const Rational height = tri().unit().dot(image);
            CHECK(height >= 0);
            CHECK(height <= 1);
        }
    }
}

TEST_CASE("preservation rejects non-facet arguments")
{
    CHECK_THROWS_AS(preservation_check(square(), Face{{0}, std::nullopt}), UsageError);
}

TEST_CASE("classicality cross-check on mixed models")
{
    CHECK(is_classical(Model{classical_model(2)}).classical);
    CHECK(is_classical(tri()).classical);
    CHECK(!is_classical(square()).classical);
    CHECK(!is_classical(pentagon()).classical);

    // A random 4-dimensional simplex.
    RandomPolytopeSpec spec;
    spec.dim = 4;
    spec.vertex_target = 5;
    spec.seed = 2024;
    const VPolytope base = random_polytope(spec);
    if (base.vertex_count() == 5)
        CHECK(is_classical(Model{StateSpace::from_base_polytope(base)}).classical);
}

TEST_CASE("the one-state space is trivially classical")
{
    CHECK(is_classical(Model{classical_model(1)}).classical);
}

TEST_CASE("theorem scan respects its cap and reports levels")
{
    const auto result = theorem_result1_scan(tri());
    CHECK(result.succeeded);
    CHECK(result.levels.size() == 2);
    for (const auto& level : result.levels)
        CHECK(level.family_distinguishable);

    const auto square_result = theorem_result1_scan(square());
    CHECK(!square_result.succeeded);
    CHECK(square_result.failed_level == 2);
    CHECK(!square_result.levels.back().family_distinguishable);
}
