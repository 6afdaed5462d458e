#include <doctest.h>

#include "gptlab/errors.hpp"
#include "gptlab/model.hpp"
#include "gptlab/polytope.hpp"

using namespace gptlab;

namespace {

const Rational kNano(1, 1000000000);

const Model& square()
{
    static Model m{square_surrogate()};
    return m;
}

const Model& bit()
{
    static Model m{classical_model(2)};
    return m;
}

const Model& pentagon()
{
    static Model m{polygon_model(5, kNano)};
    return m;
}

}  // namespace

TEST_CASE("canonical embedding lifts bases to height one")
{
    const VPolytope tri = VPolytope::from_points(
        2, {make_vec({0, 0}), make_vec({3, 0}), make_vec({0, 2})});
    const StateSpace s = StateSpace::from_base_polytope(tri);
    CHECK(s.dim() == 3);
    for (const RatVec& v : s.omega().vertices())
        CHECK(v(2) == 1);
    CHECK(s.unit() == make_vec({0, 0, 1}));

    // A base that is not full-dimensional in its ambient space is recoordinatized.
    const VPolytope seg_in_3d =
        VPolytope::from_points(3, {make_vec({1, 1, 0}), make_vec({2, 2, 0})});
    CHECK(StateSpace::from_base_polytope(seg_in_3d).dim() == 2);
}

TEST_CASE("from_omega_vertices validates the canonical-embedding invariants")
{
    CHECK_THROWS_WITH_AS(
        StateSpace::from_omega_vertices(2, {make_vec({0, 1}), make_vec({1, 2})}),
        doctest::Contains("u(omega) = 1"), UsageError);
    CHECK_THROWS_WITH_AS(
        StateSpace::from_omega_vertices(3, {make_vec({0, 0, 1}), make_vec({1, 0, 1})}),
        doctest::Contains("generating"), UsageError);
}

TEST_CASE("classical models are lifted simplices")
{
    for (int d = 1; d <= 6; ++d)
    {
        const StateSpace s = classical_model(d);
        CHECK(s.dim() == d);
        CHECK(s.omega().vertex_count() == d);
        CHECK(is_simplex(s.omega()));
    }
    CHECK_THROWS_AS(classical_model(0), UsageError);
}

TEST_CASE("polygon models have n vertices in the plane at height one")
{
    for (int n = 3; n <= 8; ++n)
    {
        const StateSpace s = polygon_model(n, kNano);
        CHECK(s.dim() == 3);
        CHECK(s.omega().vertex_count() == n);
    }
    CHECK_THROWS_AS(polygon_model(2, kNano), UsageError);
    CHECK_THROWS_AS(polygon_model(4, Rational(0)), UsageError);
}

TEST_CASE("a too-coarse tolerance collapses the polygon and is reported")
{
    CHECK_THROWS_AS(polygon_model(8, Rational(1, 2)), ApproximationCollapseError);
}

TEST_CASE("effect polytope carries the distinguished zero and unit vertices")
{
    const EffectPolytope& effects = square().effects();
    CHECK(effects.dual.vertex_count() == 6);
    CHECK(effects.dual.vertex(effects.zero_index) == RatVec(RatVec::Zero(3)));
    CHECK(effects.dual.vertex(effects.unit_index) == make_vec({0, 0, 1}));
    for (const RatVec& f : effects.dual.vertices())
    {
        for (const RatVec& w : square().omega().vertices())
        {
            const Rational value = f.dot(w);
            CHECK(value >= 0);
            CHECK(value <= 1);
        }
    }
}

TEST_CASE("pure effect counts for small polygon models")
{
    CHECK(bit().pure_effects().size() == 4);
    CHECK(Model{polygon_model(4, kNano)}.pure_effects().size() == 6);
    CHECK(pentagon().pure_effects().size() == 12);
    CHECK(Model{polygon_model(6, kNano)}.pure_effects().size() == 8);
}

TEST_CASE("complements of pure effects are pure")
{
    for (const Model* m : {&square(), &bit(), &pentagon()})
    {
        for (const RatVec& f : m->pure_effects())
            CHECK(m->is_pure_effect(complement(*m, f)));
    }
    CHECK_THROWS_AS(complement(square(), make_vec({5, 5, 5})), UsageError);
}

TEST_CASE("faces of pure nonzero effects are nonempty")
{
    for (const Model* m : {&square(), &bit(), &pentagon()})
    {
        const RatVec zero = RatVec::Zero(m->dim());
        for (const RatVec& f : m->pure_effects())
        {
            if (f == zero)
                continue;
            const auto face = face_of_effect(*m, f);
            CHECK(face.has_value());
        }
    }
}

TEST_CASE("an impure effect can miss the value one entirely")
{
    // f = u/2 on the bit: values 1/2 everywhere, so no vertex attains 1.
    const RatVec f = make_vec({0, Rational(1, 2)});
    CHECK(!face_of_effect(bit(), f).has_value());
}

TEST_CASE("opposite_face requires purity")
{
    const RatVec f = make_vec({0, Rational(1, 2)});
    CHECK_THROWS_AS(opposite_face(bit(), f), UsageError);
}

TEST_CASE("facet_effect round-trips through face_of_effect on every facet")
{
    for (const Model* m : {&square(), &bit(), &pentagon()})
    {
        for (const Face& facet : m->facets())
        {
            const Effect f = facet_effect(*m, facet);
            CHECK(m->is_pure_effect(f));
            const auto face = face_of_effect(*m, f);
            REQUIRE(face.has_value());
            CHECK(face->vertex_indices == facet.vertex_indices);
        }
    }
    CHECK_THROWS_AS(facet_effect(square(), Face{{0}, std::nullopt}), UsageError);
}

TEST_CASE("find_effect_for_face covers the three outcome kinds")
{
    CHECK(find_effect_for_face(square(), Face{{0}, std::nullopt}).kind ==
          EffectForFace::Kind::OnlyImpure);
    CHECK(find_effect_for_face(square(), square().facets().front()).kind ==
          EffectForFace::Kind::Pure);
    CHECK(find_effect_for_face(pentagon(), Face{{2}, std::nullopt}).kind ==
          EffectForFace::Kind::Pure);
    CHECK_THROWS_AS(find_effect_for_face(square(), Face{{0, 3}, std::nullopt}), UsageError);
}

TEST_CASE("pure measurements evaluate to probability vectors on every state")
{
    for (const Model* m : {&square(), &bit(), &pentagon()})
    {
        const auto measurements = enumerate_pure_measurements(*m);
        CHECK(!measurements.empty());
        for (const Measurement& meas : measurements)
        {
            CHECK(is_measurement(*m, meas.effects));
            for (const RatVec& w : m->omega().vertices())
            {
                Rational total = 0;
                for (const Effect& e : meas.effects)
                {
                    const Rational p = evaluate(e, w);
                    CHECK(p >= 0);
                    CHECK(p <= 1);
                    total += p;
                }
                CHECK(total == 1);
            }
        }
    }
}

TEST_CASE("pure-measurement enumeration enforces its cap")
{
    // classical d = 6 has 2^6 = 64 pure effects, beyond the default cap.
    const Model die{classical_model(6)};
    CHECK(die.pure_effects().size() == 64);
    CHECK_THROWS_AS(enumerate_pure_measurements(die), TooLargeError);
}

TEST_CASE("evaluate is an exact pairing and rejects mismatches")
{
    const RatVec state = square().omega().vertex(0);
    CHECK(evaluate(square().unit(), state) == 1);
    CHECK(evaluate(RatVec::Zero(3), state) == 0);
    CHECK_THROWS_AS(evaluate(make_vec({1, 0}), state), UsageError);
}
