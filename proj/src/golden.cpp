#include "gptlab/golden.hpp"

#include <boost/multiprecision/mpfr.hpp>
#include <functional>
#include <map>
#include <ostream>
#include <sstream>
#include <vector>

#include "gptlab/approx.hpp"
#include "gptlab/errors.hpp"
#include "gptlab/model.hpp"
#include "gptlab/polytope.hpp"
#include "gptlab/postulates.hpp"

namespace gptlab {

namespace {

struct CheckFailure : std::runtime_error
{
    explicit CheckFailure(const std::string& what) : std::runtime_error(what) {}
};

void expect(bool condition, const std::string& message)
{
    if (!condition)
        throw CheckFailure(message);
}

bool vec_equal(const RatVec& a, const RatVec& b)
{
    if (a.size() != b.size())
        return false;
    for (Eigen::Index i = 0; i < a.size(); ++i)
    {
        if (a(i) != b(i))
            return false;
    }
    return true;
}

const Rational kEps = Rational(1, 1000000000);  // 1e-9

// Shared model zoo, built once per process.
struct Zoo
{
    Model square{square_surrogate()};
    std::map<int, Model> classical;
    std::map<int, Model> polygon;

    const Model& classical_d(int d)
    {
        auto it = classical.find(d);
        if (it == classical.end())
            it = classical.emplace(d, Model{classical_model(d)}).first;
        return it->second;
    }
    const Model& polygon_n(int n)
    {
        auto it = polygon.find(n);
        if (it == polygon.end())
            it = polygon.emplace(n, Model{polygon_model(n, kEps)}).first;
        return it->second;
    }
};

Zoo& zoo()
{
    static Zoo z;
    return z;
}

// Canonical vertex index of the i-th labeled vertex (angle 2*pi*i/n) of the
// polygon model, recovered by recomputing the approximated coordinates.
std::vector<int> polygon_label_to_index(const Model& model, int n)
{
    std::vector<int> map(static_cast<std::size_t>(n) + 1, -1);
    for (int i = 1; i <= n; ++i)
    {
        RatVec v(3);
        v(0) = approx_rational(TrigExpr::cos(Rational(i, n), Rational(1, n)), kEps);
        v(1) = approx_rational(TrigExpr::sin(Rational(i, n), Rational(1, n)), kEps);
        v(2) = 1;
        for (int k = 0; k < model.omega().vertex_count(); ++k)
        {
            if (vec_equal(model.omega().vertex(k), v))
            {
                map[static_cast<std::size_t>(i)] = k;
                break;
            }
        }
        expect(map[static_cast<std::size_t>(i)] >= 0, "polygon vertex label not found");
    }
    return map;
}

// Diamond vertex labels: top, left, bottom, right at angles 90, 180, 270,
// 360 degrees; canonical (lex-sorted) order is left, bottom, top, right.
constexpr int kSqTop = 2, kSqLeft = 0, kSqBottom = 1, kSqRight = 3;

RatVec sq_effect(int sx, int sy)
{
    return make_vec({Rational(sx, 2), Rational(sy, 2), Rational(1, 2)});
}

// Paper-style labels for the diamond's nontrivial pure effects: e1..e4 with
// face of e_k being the edge {omega_{k-1}, omega_k}.
RatVec sq_e(int k)
{
    switch (k)
    {
        case 1:
            return sq_effect(1, 1);
        case 2:
            return sq_effect(-1, 1);
        case 3:
            return sq_effect(-1, -1);
        default:
            return sq_effect(1, -1);
    }
}

std::vector<int> sorted(std::vector<int> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

std::vector<RatVec> states(const Model& m, std::initializer_list<int> indices)
{
    std::vector<RatVec> out;
    for (int i : indices)
        out.push_back(m.omega().vertex(i));
    return out;
}

std::vector<RatVec> states_from_indices(const Model& m, const std::vector<int>& indices)
{
    std::vector<RatVec> out;
    for (int i : indices)
        out.push_back(m.omega().vertex(i));
    return out;
}

VPolytope planar_triangle()
{
    return VPolytope::from_points(
        2, {make_vec({0, 0}), make_vec({3, 0}), make_vec({0, 2})});
}

VPolytope tetrahedron()
{
    return VPolytope::from_points(3, {make_vec({0, 0, 0}), make_vec({1, 0, 0}),
                                      make_vec({0, 1, 0}), make_vec({0, 0, 1})});
}

VPolytope diamond_base()
{
    return VPolytope::from_points(
        2, {make_vec({1, 0}), make_vec({-1, 0}), make_vec({0, 1}), make_vec({0, -1})});
}

VPolytope unit_square_base()
{
    return VPolytope::from_points(
        2, {make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1}), make_vec({1, 1})});
}

struct GoldenCase
{
    const char* name;
    std::function<void()> run;
};

std::vector<GoldenCase> golden_cases()
{
    std::vector<GoldenCase> cases;
    const auto add = [&](const char* name, std::function<void()> run) {
        cases.push_back({name, std::move(run)});
    };

    // ---- exact approximation ------------------------------------------
    add("approx/full-turn-cosine-is-one", [] {
        expect(approx_rational(TrigExpr::cos(Rational(4, 4)), Rational(1, 1000000)) == 1,
               "cos(2*pi) must approximate to exactly 1");
    });
    add("approx/third-turn-cosine-is-minus-half", [] {
        expect(approx_rational(TrigExpr::cos(Rational(1, 3)), Rational(1, 1000000)) ==
                   Rational(-1, 2),
               "cos(2*pi/3) must approximate to exactly -1/2");
    });
    add("approx/pentagon-coordinate-vs-algebraic-value", [] {
        // Independent oracle: r5*cos(2*pi/5) = sqrt(4/(sqrt(5)+1)) * (sqrt(5)-1)/4,
        // evaluated with square roots only.
        using F = boost::multiprecision::number<boost::multiprecision::mpfr_float_backend<60>>;
        const F s5 = sqrt(F(5));
        const F oracle = sqrt(4 / (s5 + 1)) * (s5 - 1) / 4;
        const Rational q =
            approx_rational(TrigExpr::cos(Rational(1, 5), Rational(1, 5)), kEps);
        const Rational oracle_q = static_cast<Rational>(oracle);
        expect(abs(q - oracle_q) < kEps, "pentagon coordinate beyond 1e-9 of the algebraic value");
    });

    // ---- exact LP on the square --------------------------------------
    add("square/distinguish-adjacent-pair-witness", [] {
        const Model& sq = zoo().square;
        const auto result =
            perfectly_distinguishable(sq, {states(sq, {kSqLeft}), states(sq, {kSqBottom})});
        expect(result.distinguishable, "adjacent square vertices must be distinguishable");
        expect(vec_equal(result.witness.effects[0], sq_e(2)) &&
                   vec_equal(result.witness.effects[1], sq_e(4)),
               "the unique distinguishing measurement must be reproduced exactly");
    });

    // ---- polytope geometry --------------------------------------------
    add("polytope/point-has-dimension-zero", [] {
        const VPolytope p = VPolytope::from_points(3, {make_vec({1, 2, 3})});
        expect(dim(p) == 0, "a single point is a 0-polytope");
        expect(!facets(p).has_value(), "a 0-polytope has no facets");
    });
    add("polytope/square-has-four-facets", [] {
        expect(facets(diamond_base())->size() == 4, "a quadrilateral has 4 edges");
    });
    add("polytope/tetrahedron-has-four-facets", [] {
        expect(facets(tetrahedron())->size() == 4, "a 3-simplex has 4 facets");
    });
    add("polytope/triangle-lattice-counts", [] {
        const auto f = face_lattice(planar_triangle()).f_vector();
        expect(f == std::vector<int>({3, 3, 1}), "triangle lattice must be 3 vertices, 3 edges, itself");
    });
    add("polytope/square-lattice-counts", [] {
        const auto f = face_lattice(diamond_base()).f_vector();
        expect(f == std::vector<int>({4, 4, 1}), "square lattice must be 4+4+1");
    });
    add("polytope/tetrahedron-lattice-binomial", [] {
        const auto f = face_lattice(tetrahedron()).f_vector();
        expect(f == std::vector<int>({4, 6, 4, 1}),
               "3-simplex lattice must meet the binomial lower bound with equality");
    });
    add("polytope/vertex-is-a-face", [] {
        expect(is_face(tetrahedron(), {2}).has_value(), "every single vertex spans a face");
    });
    add("polytope/square-diagonal-is-not-a-face", [] {
        // Opposite corners of the diamond: the segment crosses the interior.
        expect(!is_face(diamond_base(), {0, 3}).has_value(),
               "opposite corners must not form a face");
    });
    add("polytope/tetrahedron-vertex-chain", [] {
        const VPolytope t = tetrahedron();
        const auto chain = facet_chain(t, Face{{0}, std::nullopt});
        expect(chain.size() == 4, "chain from a 3-polytope to a vertex has four faces");
        std::vector<int> dims;
        for (const Face& f : chain)
            dims.push_back(dim(face_polytope(t, f)));
        expect(dims == std::vector<int>({3, 2, 1, 0}), "chain dimensions must be 3,2,1,0");
    });
    add("polytope/simplex-predicates", [] {
        expect(is_simplex(planar_triangle()), "triangle is a simplex");
        expect(!is_simplex(diamond_base()), "square is not a simplex");
        expect(is_simplex(tetrahedron()), "tetrahedron is a simplex");
    });
    add("polytope/tetrahedron-uniformly-pyramidal", [] {
        expect(is_uniformly_pyramidal(tetrahedron()).uniformly_pyramidal,
               "the 3-simplex is pyramidal at every facet");
    });
    add("polytope/square-not-uniformly-pyramidal", [] {
        const auto report = is_uniformly_pyramidal(diamond_base());
        expect(!report.uniformly_pyramidal, "a square is not pyramidal at any edge");
        for (const auto& [facet, apex] : report.per_facet)
            expect(!apex.has_value(), "two vertices lie outside every edge of a square");
    });
    add("polytope/triangle-pyramidal-at-every-edge", [] {
        expect(is_uniformly_pyramidal(planar_triangle()).uniformly_pyramidal,
               "a triangle is pyramidal at each edge");
    });
    add("polytope/triangles-affinely-equivalent", [] {
        const VPolytope other = VPolytope::from_points(
            2, {make_vec({-1, -1}), make_vec({5, 0}), make_vec({2, 7})});
        expect(affinely_equivalent(planar_triangle(), other).has_value(),
               "any two triangles are affinely equivalent");
    });
    add("polytope/unit-square-equivalent-to-diamond", [] {
        expect(affinely_equivalent(unit_square_base(), diamond_base()).has_value(),
               "parallelograms are affinely equivalent");
    });
    add("polytope/square-not-equivalent-to-pentagon", [] {
        const VPolytope pent = face_polytope(
            zoo().polygon_n(5).omega(),
            Face{{0, 1, 2, 3, 4}, std::nullopt});
        expect(!affinely_equivalent(diamond_base(), pent).has_value(),
               "vertex counts differ, no equivalence");
    });

    // ---- state spaces and the model zoo -------------------------------
    add("model/triangle-base-gives-three-dimensional-space", [] {
        expect(StateSpace::from_base_polytope(planar_triangle()).dim() == 3,
               "a polygon base lifts to a 3-dimensional space");
    });
    add("model/segment-base-is-the-classical-bit", [] {
        const VPolytope seg = VPolytope::from_points(1, {make_vec({0}), make_vec({1})});
        expect(StateSpace::from_base_polytope(seg) == classical_model(2),
               "the unit segment lifts to the classical bit");
    });
    add("model/classical-3-matches-polygon-3", [] {
        expect(affinely_equivalent(zoo().classical_d(3).omega(), zoo().polygon_n(3).omega())
                   .has_value(),
               "the 3-gon model is the classical 3-state system");
    });
    add("model/polygon-4-matches-diamond", [] {
        expect(affinely_equivalent(zoo().polygon_n(4).omega(), zoo().square.omega()).has_value(),
               "the 4-gon model matches the exact diamond surrogate");
    });
    add("model/six-sided-die", [] {
        const Model& die = zoo().classical_d(6);
        expect(die.dim() == 6 && die.omega().vertex_count() == 6 && is_simplex(die.omega()),
               "the die model is a 5-simplex in six dimensions");
    });
    add("model/pure-effect-count-classical-bit", [] {
        expect(zoo().classical_d(2).pure_effects().size() == 4,
               "bit effects are 0, u, e, u-e");
    });
    add("model/pure-effect-count-square", [] {
        expect(zoo().square.pure_effects().size() == 6, "the square has n+2 = 6 pure effects");
    });
    add("model/pure-effect-count-pentagon", [] {
        expect(zoo().polygon_n(5).pure_effects().size() == 12,
               "the pentagon has 2n+2 = 12 pure effects");
    });
    add("model/complement-of-unit-is-zero", [] {
        const Model& sq = zoo().square;
        expect(vec_equal(complement(sq, sq.unit()), RatVec::Zero(3)), "u - u = 0");
    });
    add("model/square-complement-pairs-effects", [] {
        expect(vec_equal(complement(zoo().square, sq_e(1)), sq_e(3)),
               "on the square, the complement of e1 coincides with e3");
    });
    add("model/pentagon-complement-leaves-vertex-effects", [] {
        const Model& pent = zoo().polygon_n(5);
        const auto labels = polygon_label_to_index(pent, 5);
        // e_k = the unique pure effect whose face is the single vertex k.
        RatVec e3;
        bool found = false;
        for (const RatVec& g : pent.pure_effects())
        {
            const auto face = face_of_effect(pent, g);
            if (face.has_value() && face->vertex_indices == std::vector<int>{labels[3]})
            {
                e3 = g;
                found = true;
                break;
            }
        }
        expect(found, "the pentagon must have a pure effect pinned to vertex 3");
        const RatVec bar = complement(pent, e3);
        expect(pent.is_pure_effect(bar), "the complement of a pure effect is pure");
        for (int k = 1; k <= 5; ++k)
        {
            const auto face = face_of_effect(pent, bar);
            expect(face.has_value() && face->vertex_indices != std::vector<int>{labels[k]},
                   "the complement must not coincide with any vertex effect");
        }
    });
    add("model/face-of-unit-is-everything", [] {
        const Model& sq = zoo().square;
        const auto face = face_of_effect(sq, sq.unit());
        expect(face.has_value() && face->vertex_indices == std::vector<int>({0, 1, 2, 3}),
               "u attains 1 on the whole state polytope");
    });
    add("model/square-effect-face-is-edge", [] {
        const auto face = face_of_effect(zoo().square, sq_e(1));
        expect(face.has_value() &&
                   face->vertex_indices == sorted({kSqRight, kSqTop}),
               "the face of e1 is the top-right edge");
    });
    add("model/pentagon-effect-face-is-vertex", [] {
        const Model& pent = zoo().polygon_n(5);
        const auto labels = polygon_label_to_index(pent, 5);
        int singleton_faces = 0;
        for (const RatVec& g : pent.pure_effects())
        {
            const auto face = face_of_effect(pent, g);
            if (face.has_value() && face->vertex_indices.size() == 1)
                ++singleton_faces;
        }
        expect(singleton_faces == 5, "each pentagon vertex carries exactly one pure effect");
        (void)labels;
    });
    add("model/square-opposite-face", [] {
        const auto face = opposite_face(zoo().square, sq_e(3));
        expect(face.has_value() && face->vertex_indices == sorted({kSqRight, kSqTop}),
               "the face opposite to the e3 edge is the e1 edge");
    });
    add("model/pentagon-opposite-face-is-edge", [] {
        const Model& pent = zoo().polygon_n(5);
        const auto labels = polygon_label_to_index(pent, 5);
        for (const RatVec& g : pent.pure_effects())
        {
            const auto face = face_of_effect(pent, g);
            if (face.has_value() && face->vertex_indices == std::vector<int>{labels[3]})
            {
                const auto opp = opposite_face(pent, g);
                expect(opp.has_value() && opp->vertex_indices.size() == 2,
                       "the opposite face of a pentagon vertex effect is an edge");
                return;
            }
        }
        throw CheckFailure("vertex effect not found");
    });
    add("model/classical-bit-opposite-vertex", [] {
        const Model& bit = zoo().classical_d(2);
        // Effect attaining 1 exactly on vertex 0.
        const Effect e = facet_effect(bit, Face{{0}, std::nullopt});
        const auto opp = opposite_face(bit, e);
        expect(opp.has_value() && opp->vertex_indices == std::vector<int>({1}),
               "the opposite face of one bit outcome is the other vertex");
    });
    add("model/square-facet-effect-is-pure", [] {
        const Model& sq = zoo().square;
        const Effect f = facet_effect(sq, Face{sorted({kSqLeft, kSqBottom}), std::nullopt});
        expect(vec_equal(f, sq_e(3)), "the bottom-left edge carries the pure effect e3");
    });
    add("model/triangle-facet-effect-is-vertex-complement", [] {
        const Model& tri = zoo().classical_d(3);
        const Effect f = facet_effect(tri, Face{{0, 1}, std::nullopt});
        const auto vertex_effect = find_effect_for_face(tri, Face{{2}, std::nullopt});
        expect(vertex_effect.kind == EffectForFace::Kind::Pure,
               "a triangle vertex carries a pure effect");
        expect(vec_equal(f, tri.unit() - vertex_effect.effect),
               "an edge effect of the triangle complements the opposite vertex effect");
    });
    add("model/segment-endpoint-effects", [] {
        const Model& bit = zoo().classical_d(2);
        const Effect f0 = facet_effect(bit, Face{{0}, std::nullopt});
        const Effect f1 = facet_effect(bit, Face{{1}, std::nullopt});
        expect(vec_equal(f0 + f1, bit.unit()), "the two endpoint effects form a measurement");
    });
    add("model/square-vertex-has-only-impure-effects", [] {
        const auto result = find_effect_for_face(zoo().square, Face{{kSqTop}, std::nullopt});
        expect(result.kind == EffectForFace::Kind::OnlyImpure,
               "a square vertex admits effects pinned to it, none of them pure");
    });
    add("model/facets-always-have-pure-effects", [] {
        for (const Face& f : zoo().square.facets())
        {
            expect(find_effect_for_face(zoo().square, f).kind == EffectForFace::Kind::Pure,
                   "every facet carries a pure effect");
        }
    });
    add("model/pentagon-vertex-has-pure-effect", [] {
        const Model& pent = zoo().polygon_n(5);
        const auto labels = polygon_label_to_index(pent, 5);
        const auto result = find_effect_for_face(pent, Face{{labels[3]}, std::nullopt});
        expect(result.kind == EffectForFace::Kind::Pure,
               "a pentagon vertex is the face of a pure effect");
    });
    add("model/square-pure-measurements", [] {
        const Model& sq = zoo().square;
        const auto measurements = enumerate_pure_measurements(sq);
        expect(measurements.size() == 3, "the square has exactly three pure measurements");
        // {u}, {e1, e3}, {e2, e4} in canonical order.
        bool has_unit = false, has_13 = false, has_24 = false;
        for (const Measurement& m : measurements)
        {
            if (m.effects.size() == 1 && vec_equal(m.effects[0], sq.unit()))
                has_unit = true;
            if (m.effects.size() == 2)
            {
                const bool pair13 = (vec_equal(m.effects[0], sq_e(3)) && vec_equal(m.effects[1], sq_e(1))) ||
                                    (vec_equal(m.effects[0], sq_e(1)) && vec_equal(m.effects[1], sq_e(3)));
                const bool pair24 = (vec_equal(m.effects[0], sq_e(2)) && vec_equal(m.effects[1], sq_e(4))) ||
                                    (vec_equal(m.effects[0], sq_e(4)) && vec_equal(m.effects[1], sq_e(2)));
                has_13 = has_13 || pair13;
                has_24 = has_24 || pair24;
            }
        }
        expect(has_unit && has_13 && has_24, "pure measurements must be {u}, {e1,e3}, {e2,e4}");
    });
    add("model/bit-pure-measurements", [] {
        expect(enumerate_pure_measurements(zoo().classical_d(2)).size() == 2,
               "the bit has {u} and {e, u-e}");
    });
    add("model/pentagon-binary-measurements", [] {
        const Model& pent = zoo().polygon_n(5);
        const auto measurements = enumerate_pure_measurements(pent);
        int binary = 0;
        for (const Measurement& m : measurements)
        {
            if (m.effects.size() == 2 &&
                vec_equal(m.effects[0] + m.effects[1], pent.unit()))
                ++binary;
        }
        expect(binary == 5, "the pentagon has its five complementary binary measurements");
    });
    add("model/evaluate-unit-and-zero", [] {
        const Model& sq = zoo().square;
        for (const RatVec& v : sq.omega().vertices())
        {
            expect(evaluate(sq.unit(), v) == 1, "u evaluates to 1 on normalized states");
            expect(evaluate(RatVec::Zero(3), v) == 0, "the zero effect evaluates to 0");
        }
    });
    add("model/evaluate-square-delta", [] {
        expect(evaluate(sq_e(2), zoo().square.omega().vertex(kSqLeft)) == 1 &&
                   evaluate(sq_e(2), zoo().square.omega().vertex(kSqBottom)) == 0,
               "e2 separates the adjacent vertices of its face");
    });

    // ---- distinguishability -------------------------------------------
    add("postulates/triangle-three-states-distinguishable", [] {
        const Model& tri = zoo().classical_d(3);
        const auto result = perfectly_distinguishable(
            tri, {states(tri, {0}), states(tri, {1}), states(tri, {2})});
        expect(result.distinguishable, "the three triangle vertices are distinguishable");
        // The witness is the dual basis, which is unique here.
        expect(vec_equal(result.witness.effects[0], make_vec({-1, -1, 1})) &&
                   vec_equal(result.witness.effects[1], make_vec({0, 1, 0})) &&
                   vec_equal(result.witness.effects[2], make_vec({1, 0, 0})),
               "the distinguishing measurement must be the dual basis");
    });
    add("postulates/square-three-states-not-distinguishable", [] {
        const Model& sq = zoo().square;
        const auto result = perfectly_distinguishable(
            sq, {states(sq, {kSqLeft}), states(sq, {kSqBottom}), states(sq, {kSqRight})});
        expect(!result.distinguishable, "no measurement distinguishes three square vertices");
        expect(farkas_valid(distinguishability_lp(
                                sq, {states(sq, {kSqLeft}), states(sq, {kSqBottom}),
                                     states(sq, {kSqRight})}),
                            result.certificate),
               "the certificate must re-contract to a contradiction");
    });
    add("postulates/square-edge-pair-distinguishable", [] {
        const Model& sq = zoo().square;
        const auto result = perfectly_distinguishable(
            sq, {states(sq, {kSqTop, kSqLeft}), states(sq, {kSqBottom, kSqRight})});
        expect(result.distinguishable, "opposite edges of the square are distinguishable");
    });
    add("postulates/max-distinguishable-classical", [] {
        for (int d = 2; d <= 6; ++d)
        {
            expect(max_distinguishable_count(zoo().classical_d(d)).count == d,
                   "a classical d-level system has d distinguishable states");
        }
    });
    add("postulates/max-distinguishable-square-is-two", [] {
        expect(max_distinguishable_count(zoo().square).count == 2,
               "the square caps at two distinguishable states");
    });
    add("postulates/max-distinguishable-pentagon-is-two", [] {
        expect(max_distinguishable_count(zoo().polygon_n(5)).count == 2,
               "the pentagon caps at two distinguishable states");
    });

    // ---- state discrimination ------------------------------------------
    add("postulates/square-discrimination-violation", [] {
        const Model& sq = zoo().square;
        const auto check = check_discrimination(
            sq, states(sq, {kSqTop, kSqLeft}), states(sq, {kSqBottom, kSqRight}),
            states(sq, {kSqBottom}), states(sq, {kSqRight}));
        expect(check.kind == DiscriminationCheck::Kind::Violation,
               "the square violates the discrimination principle");
        expect(farkas_valid(
                   distinguishability_lp(sq, {states(sq, {kSqTop, kSqLeft}),
                                              states(sq, {kSqBottom}), states(sq, {kSqRight})}),
                   check.conclusion_certificate),
               "the conclusion certificate must verify");
    });
    add("postulates/classical-discrimination-satisfied", [] {
        const Model& tri = zoo().classical_d(3);
        const auto check = check_discrimination(tri, states(tri, {0}), states(tri, {1, 2}),
                                                states(tri, {1}), states(tri, {2}));
        expect(check.kind == DiscriminationCheck::Kind::Satisfied,
               "classical systems satisfy the discrimination principle");
    });
    add("postulates/pentagon-adjacent-premise-fails", [] {
        const Model& pent = zoo().polygon_n(5);
        const auto labels = polygon_label_to_index(pent, 5);
        // Lambda1 = vertex 3, Lambda2 = its opposite edge (distinguishable
        // by the binary measurement of the vertex effect); Lambda3, Lambda4
        // are the edge's two vertices, which are adjacent on the pentagon.
        const auto vertex_effect = find_effect_for_face(pent, Face{{labels[3]}, std::nullopt});
        expect(vertex_effect.kind == EffectForFace::Kind::Pure, "vertex effect must be pure");
        const auto opp = opposite_face(pent, vertex_effect.effect);
        expect(opp.has_value() && opp->vertex_indices.size() == 2, "opposite face is an edge");
        const int a = opp->vertex_indices[0];
        const int b = opp->vertex_indices[1];
        const auto check = check_discrimination(pent, states(pent, {labels[3]}),
                                                {pent.omega().vertex(a), pent.omega().vertex(b)},
                                                {pent.omega().vertex(a)}, {pent.omega().vertex(b)});
        expect(check.kind == DiscriminationCheck::Kind::PremiseFails && check.failing_premise == 2,
               "adjacent pentagon vertices must fail the second premise");
    });
    add("postulates/square-search-finds-violation", [] {
        const auto violation = find_discrimination_violation(zoo().square);
        expect(violation.has_value(), "the square search must find a violation");
        expect(farkas_valid(
                   distinguishability_lp(zoo().square,
                                         {states_from_indices(zoo().square, violation->lambda1),
                                          states_from_indices(zoo().square, violation->lambda3),
                                          states_from_indices(zoo().square, violation->lambda4)}),
                   violation->conclusion_certificate),
               "the found violation's certificate must verify");
    });
    add("postulates/classical-search-finds-no-violation", [] {
        for (int d = 2; d <= 4; ++d)
        {
            expect(!find_discrimination_violation(zoo().classical_d(d)).has_value(),
                   "classical models admit no discrimination violation");
        }
    });

    // ---- subspaces -----------------------------------------------------
    add("postulates/square-edge-induces-bit", [] {
        const Model& sq = zoo().square;
        const auto sub =
            induced_subspace(sq, Face{sorted({kSqLeft, kSqBottom}), std::nullopt});
        expect(sub.space == classical_model(2), "a square edge induces the classical bit");
    });
    add("postulates/tetrahedron-facet-induces-triangle", [] {
        const Model& four = zoo().classical_d(4);
        const Face facet = four.facets().front();
        const auto sub = induced_subspace(four, facet);
        expect(affinely_equivalent(sub.space.omega(), zoo().classical_d(3).omega()).has_value(),
               "a simplex facet induces the classical triangle");
    });
    add("postulates/vertex-induces-trivial-space", [] {
        const auto sub = induced_subspace(zoo().square, Face{{0}, std::nullopt});
        expect(sub.space.dim() == 1 && sub.space.omega().vertex_count() == 1,
               "a vertex induces the one-state space");
    });
    add("postulates/pentagon-facet-not-physical", [] {
        const Model& pent = zoo().polygon_n(5);
        const auto verdict = check_physical_subspace(pent, pent.facets().front());
        expect(verdict.is_associated_face && verdict.condition_a, "pentagon facets satisfy (a)");
        bool no_extension = false;
        for (const auto& o : verdict.condition_b)
        {
            if (o.kind == SubspaceMeasurementOutcome::Kind::NoExtendingPureEffect)
                no_extension = true;
        }
        expect(no_extension && !verdict.all_pass(),
               "the pentagon facet fails condition (b)(i): no extending pure effect");
    });
    add("postulates/square-facet-fails-face-match", [] {
        const Model& sq = zoo().square;
        const auto verdict = check_physical_subspace(sq, sq.facets().front());
        expect(verdict.is_associated_face && verdict.condition_a, "square facets satisfy (a)");
        bool face_mismatch = false;
        for (const auto& o : verdict.condition_b)
        {
            if (o.kind == SubspaceMeasurementOutcome::Kind::NoFaceMatch)
                face_mismatch = true;
        }
        expect(face_mismatch && !verdict.all_pass(),
               "the square facet fails condition (b)(ii): associated faces mismatch");
    });
    add("postulates/tetrahedron-facet-is-physical", [] {
        const Model& four = zoo().classical_d(4);
        const auto verdict = check_physical_subspace(four, four.facets().front());
        expect(verdict.all_pass(), "a simplex facet is a physical subspace");
    });

    // ---- preservation ----------------------------------------------------
    add("postulates/square-preservation-dimension-clash", [] {
        const auto verdict = check_preservation_postulate(zoo().square);
        expect(!verdict.holds, "the square violates the preservation principle");
        expect(verdict.per_facet.size() == 4, "four facets checked");
        for (const auto& o : verdict.per_facet)
        {
            expect(o.kind == PreservationFacetOutcome::Kind::DimensionClash &&
                       o.span_face_dim == 2 && o.span_opposite_dim == 2,
                   "each square facet must clash with spans 2 + 2 > 3");
        }
    });
    add("postulates/pentagon-preservation-non-positive", [] {
        const auto verdict = check_preservation_postulate(zoo().polygon_n(5));
        expect(!verdict.holds, "the pentagon violates the preservation principle");
        for (const auto& o : verdict.per_facet)
        {
            expect(o.kind == PreservationFacetOutcome::Kind::NonPositive,
                   "each pentagon facet yields a non-positive map");
            expect(o.violated_inequality.dot(o.witness_image) > 0,
                   "the violated cone inequality must be exact");
        }
    });
    add("postulates/triangle-preservation-holds", [] {
        const Model& tri = zoo().classical_d(3);
        const auto verdict = check_preservation_postulate(tri);
        expect(verdict.holds, "classical systems satisfy preservation");
        for (const auto& o : verdict.per_facet)
        {
            expect(o.kind == PreservationFacetOutcome::Kind::Holds, "every facet holds");
            // The map sends Omega into conv(F union {0}).
            const VPolytope face_poly = face_polytope(tri.omega(), o.facet);
            for (const RatVec& v : tri.omega().vertices())
            {
                const RatVec y = o.map * v;
                const Rational height = tri.unit().dot(y);
                expect(height >= 0 && height <= 1, "images stay in the unit order interval");
                if (height == 0)
                {
                    expect(vec_equal(y, RatVec::Zero(3)), "height zero means the zero state");
                }
                else
                {
                    RatVec scaled = y / height;
                    expect(contains(face_poly, scaled).inside,
                           "the image must lie over the fixed facet");
                }
            }
        }
    });
    add("postulates/classical-models-are-classical", [] {
        for (int d = 2; d <= 6; ++d)
            expect(is_classical(zoo().classical_d(d)).classical, "classical models are classical");
    });
    add("postulates/polygons-beyond-three-are-not-classical", [] {
        for (int n = 4; n <= 8; ++n)
            expect(!is_classical(zoo().polygon_n(n)).classical,
                   "non-simplex polygons are not classical");
    });
    add("postulates/polygon-three-is-classical", [] {
        expect(is_classical(zoo().polygon_n(3)).classical, "the 3-gon is classical");
    });

    // ---- the classicality-theorem scan ---------------------------------
    add("postulates/scan-classical-four", [] {
        const auto result = theorem_result1_scan(zoo().classical_d(4));
        expect(result.succeeded && result.distinguished_vertices.size() == 4,
               "the scan must produce four distinguishable states");
    });
    add("postulates/scan-square-fails-at-level-two", [] {
        const auto result = theorem_result1_scan(zoo().square);
        expect(!result.succeeded && result.failed_level == 2,
               "the square scan must fail when the three-set family is reached");
    });
    add("postulates/scan-triangle", [] {
        const auto result = theorem_result1_scan(zoo().classical_d(3));
        expect(result.succeeded && result.distinguished_vertices.size() == 3,
               "the triangle scan must produce three distinguishable states");
    });

    return cases;
}

}  // namespace

int run_golden_suite(std::ostream& out)
{
    int failures = 0;
    int passed = 0;
    for (const GoldenCase& c : golden_cases())
    {
        try
        {
            c.run();
            out << "ok " << c.name << "\n";
            ++passed;
        }
        catch (const std::exception& e)
        {
            out << "FAIL " << c.name << ": " << e.what() << "\n";
            ++failures;
        }
    }
    out << "golden: " << passed << " passed, " << failures << " failed\n";
    return failures;
}

}  // namespace gptlab
