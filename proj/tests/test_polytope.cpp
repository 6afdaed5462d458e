#include <doctest.h>

#include <numeric>

#include "gptlab/linalg.hpp"
#include "gptlab/polytope.hpp"
#include "gptlab/random.hpp"

using namespace gptlab;

namespace {

VPolytope diamond()
{
    return VPolytope::from_points(
        2, {make_vec({1, 0}), make_vec({-1, 0}), make_vec({0, 1}), make_vec({0, -1})});
}

VPolytope triangle()
{
    return VPolytope::from_points(2, {make_vec({0, 0}), make_vec({3, 0}), make_vec({0, 2})});
}

VPolytope tetra()
{
    return VPolytope::from_points(3, {make_vec({0, 0, 0}), make_vec({1, 0, 0}),
                                      make_vec({0, 1, 0}), make_vec({0, 0, 1})});
}

long long binomial(int n, int k)
{
    if (k < 0 || k > n)
        return 0;
    long long result = 1;
    for (int i = 0; i < k; ++i)
        result = result * (n - i) / (i + 1);
    return result;
}

std::vector<VPolytope> property_corpus()
{
    std::vector<VPolytope> corpus;
    corpus.push_back(triangle());
    corpus.push_back(diamond());
    corpus.push_back(tetra());
    int produced = 0;
    for (std::uint64_t seed = 100; produced < 24; ++seed)
    {
        RandomPolytopeSpec spec;
        spec.dim = 2 + static_cast<int>(seed % 3);
        spec.vertex_target = 4 + static_cast<int>(seed % 6);
        spec.denom_bound = 5;
        spec.seed = seed;
        corpus.push_back(random_polytope(spec));
        ++produced;
    }
    return corpus;
}

}  // namespace

TEST_CASE("from_points removes interior points and duplicates")
{
    const VPolytope square_with_center = VPolytope::from_points(
        2, {make_vec({1, 1}), make_vec({-1, 1}), make_vec({-1, -1}), make_vec({1, -1}),
            make_vec({0, 0})});
    CHECK(square_with_center.vertex_count() == 4);

    const VPolytope three = VPolytope::from_points(
        2, {make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1})});
    CHECK(three.vertex_count() == 3);

    CHECK_THROWS_AS(VPolytope::from_points(2, {}), UsageError);
}

TEST_CASE("from_points filters edge midpoints of a pentagon-like hull")
{
    // Five hull points plus the midpoints of consecutive pairs: ten inputs,
    // five survivors.
    std::vector<RatVec> pts = {make_vec({0, 0}), make_vec({4, 0}), make_vec({5, 3}),
                               make_vec({2, 6}), make_vec({-1, 3})};
    const std::size_t hull = pts.size();
    for (std::size_t i = 0; i < hull; ++i)
        pts.push_back((pts[i] + pts[(i + 1) % hull]) / 2);
    CHECK(VPolytope::from_points(2, pts).vertex_count() == 5);
}

TEST_CASE("dimension of degenerate embeddings")
{
    CHECK(dim(VPolytope::from_points(3, {make_vec({1, 2, 3})})) == 0);
    CHECK(dim(VPolytope::from_points(3, {make_vec({0, 0, 0}), make_vec({1, 1, 1})})) == 1);
    const VPolytope square_z1 = VPolytope::from_points(
        3, {make_vec({1, 0, 1}), make_vec({-1, 0, 1}), make_vec({0, 1, 1}), make_vec({0, -1, 1})});
    CHECK(dim(square_z1) == 2);
}

TEST_CASE("affine hull constraints")
{
    const VPolytope square_z1 = VPolytope::from_points(
        3, {make_vec({1, 0, 1}), make_vec({-1, 0, 1}), make_vec({0, 1, 1}), make_vec({0, -1, 1})});
    const auto constraints = affine_hull_constraints(square_z1);
    REQUIRE(constraints.size() == 1);
    CHECK(constraints[0].first == make_vec({0, 0, 1}));
    CHECK(constraints[0].second == 1);

    CHECK(affine_hull_constraints(diamond()).empty());

    const VPolytope segment =
        VPolytope::from_points(2, {make_vec({0, 0}), make_vec({1, 1})});
    const auto seg_constraints = affine_hull_constraints(segment);
    REQUIRE(seg_constraints.size() == 1);
    CHECK(seg_constraints[0].first == make_vec({1, -1}));
    CHECK(seg_constraints[0].second == 0);
}

TEST_CASE("facet counts for the basic zoo")
{
    CHECK(facets(triangle())->size() == 3);
    CHECK(facets(diamond())->size() == 4);
    CHECK(facets(tetra())->size() == 4);
    CHECK(!facets(VPolytope::from_points(2, {make_vec({1, 1})})).has_value());
}

TEST_CASE("face lattice counts and the improper face")
{
    CHECK(face_lattice(triangle()).f_vector() == std::vector<int>({3, 3, 1}));
    CHECK(face_lattice(diamond()).f_vector() == std::vector<int>({4, 4, 1}));
    CHECK(face_lattice(tetra()).f_vector() == std::vector<int>({4, 6, 4, 1}));
    CHECK(face_lattice(VPolytope::from_points(1, {make_vec({2})})).f_vector() ==
          std::vector<int>({1}));
}

TEST_CASE("is_face on edges, diagonals, vertices")
{
    const VPolytope d = diamond();
    // Canonical order: (-1,0), (0,-1), (0,1), (1,0).
    CHECK(is_face(d, {0, 1}).has_value());
    CHECK(!is_face(d, {0, 3}).has_value());
    CHECK(!is_face(d, {1, 2}).has_value());
    CHECK(is_face(d, {2}).has_value());
    const auto improper = is_face(d, {0, 1, 2, 3});
    REQUIRE(improper.has_value());
    CHECK(!improper->supporting.has_value());
    CHECK_THROWS_AS(is_face(d, {}), UsageError);
    CHECK_THROWS_AS(is_face(d, {0, 0}), UsageError);
    CHECK_THROWS_AS(is_face(d, {7}), UsageError);
}

TEST_CASE("facet chains step one dimension at a time")
{
    const VPolytope t = tetra();
    const auto chain = facet_chain(t, Face{{0}, std::nullopt});
    REQUIRE(chain.size() == 4);
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    {
        CHECK(dim(face_polytope(t, chain[i])) == dim(face_polytope(t, chain[i + 1])) + 1);
        CHECK(std::includes(chain[i].vertex_indices.begin(), chain[i].vertex_indices.end(),
                            chain[i + 1].vertex_indices.begin(), chain[i + 1].vertex_indices.end()));
    }

    const auto facet_only = facet_chain(t, *is_face(t, {0, 1, 2}));
    CHECK(facet_only.size() == 2);

    const auto edge_chain = facet_chain(diamond(), *is_face(diamond(), {0, 1}));
    CHECK(edge_chain.size() == 2);

    CHECK_THROWS_AS(facet_chain(t, Face{{0, 1, 2, 3}, std::nullopt}), UsageError);
    CHECK_THROWS_AS(facet_chain(diamond(), Face{{0, 3}, std::nullopt}), UsageError);
}

TEST_CASE("simplex and pyramid predicates")
{
    CHECK(is_simplex(triangle()));
    CHECK(!is_simplex(diamond()));
    CHECK(is_simplex(tetra()));

    CHECK(is_uniformly_pyramidal(tetra()).uniformly_pyramidal);
    CHECK(!is_uniformly_pyramidal(diamond()).uniformly_pyramidal);
    CHECK(is_uniformly_pyramidal(triangle()).uniformly_pyramidal);

    const Face edge = *is_face(diamond(), {0, 1});
    CHECK(!is_pyramidal_at(diamond(), edge).has_value());
    CHECK_THROWS_AS(is_pyramidal_at(diamond(), Face{{0, 3}, std::nullopt}), UsageError);
}

TEST_CASE("pyramids over a base are pyramidal there, and their facets obey the cone rule")
{
    // P = conv(B x {0} union {apex}) over the diamond base.
    const VPolytope base2d = diamond();
    std::vector<RatVec> pts;
    for (const RatVec& v : base2d.vertices())
        pts.push_back(make_vec({v(0), v(1), 0}));
    pts.push_back(make_vec({0, 0, 1}));
    const VPolytope pyramid = VPolytope::from_points(3, pts);
    REQUIRE(pyramid.vertex_count() == 5);

    int apex_index = -1;
    for (int i = 0; i < 5; ++i)
    {
        if (pyramid.vertex(i)(2) == 1)
            apex_index = i;
    }
    std::vector<int> base_indices;
    for (int i = 0; i < 5; ++i)
    {
        if (i != apex_index)
            base_indices.push_back(i);
    }
    const auto base_face = is_face(pyramid, base_indices);
    REQUIRE(base_face.has_value());
    CHECK(is_pyramidal_at(pyramid, *base_face) == apex_index);

    // Every facet of the base joined with the apex is a facet of the pyramid.
    const VPolytope base_poly = face_polytope(pyramid, *base_face);
    const auto base_facets = facets(base_poly);
    const auto pyramid_facets = facets(pyramid);
    for (const Face& bf : *base_facets)
    {
        std::vector<int> joined;
        for (int k : bf.vertex_indices)
            joined.push_back(base_indices[static_cast<std::size_t>(k)]);
        joined.push_back(apex_index);
        std::sort(joined.begin(), joined.end());
        bool found = false;
        for (const Face& pf : *pyramid_facets)
            found = found || pf.vertex_indices == joined;
        CHECK(found);
    }
}

TEST_CASE("contains produces reduced witnesses and verified separators")
{
    const VPolytope d = diamond();
    const auto center = contains(d, make_vec({0, 0}));
    REQUIRE(center.inside);
    CHECK(center.barycentric.size() <= 3);
    const auto vertex = contains(d, make_vec({0, 1}));
    REQUIRE(vertex.inside);
    REQUIRE(vertex.barycentric.size() == 1);
    CHECK(vertex.barycentric[0].second == 1);

    const auto outside = contains(d, make_vec({2, 2}));
    REQUIRE(!outside.inside);
    for (const RatVec& v : d.vertices())
        CHECK(outside.separator.slack(v) >= 0);
    CHECK(outside.separator.slack(make_vec({2, 2})) < 0);
}

TEST_CASE("affine equivalence witnesses and rejections")
{
    const auto tri_map = affinely_equivalent(
        triangle(), VPolytope::from_points(2, {make_vec({-1, -1}), make_vec({5, 0}), make_vec({2, 7})}));
    REQUIRE(tri_map.has_value());

    const VPolytope unit_square = VPolytope::from_points(
        2, {make_vec({0, 0}), make_vec({1, 0}), make_vec({0, 1}), make_vec({1, 1})});
    CHECK(affinely_equivalent(unit_square, diamond()).has_value());
    CHECK(!affinely_equivalent(diamond(), triangle()).has_value());

    // Different combinatorics at equal counts: square vs tetrahedron.
    CHECK(!affinely_equivalent(diamond(), tetra()).has_value());

    RandomPolytopeSpec big;
    big.dim = 2;
    big.vertex_target = 12;
    big.seed = 5;
    CHECK_THROWS_AS(
        affinely_equivalent(random_polytope(big), VPolytope::from_points(2, {make_vec({0, 0}),
                                                                             make_vec({1, 0})})),
        TooLargeError);
}

TEST_CASE("property: from_points is idempotent on the corpus")
{
    for (const VPolytope& p : property_corpus())
        CHECK(VPolytope::from_points(p.ambient_dim(), p.vertices()) == p);
}

TEST_CASE("property: face lattice obeys the binomial lower bound and is_face")
{
    for (const VPolytope& p : property_corpus())
    {
        const FaceLattice lattice = face_lattice(p);
        const int d = lattice.dim;
        const auto f = lattice.f_vector();
        for (int k = 0; k <= d; ++k)
            CHECK(f[static_cast<std::size_t>(k)] >= binomial(d + 1, k + 1));
        for (const auto& bucket : lattice.by_dim)
        {
            for (const Face& face : bucket)
            {
                const auto confirmed = is_face(p, face.vertex_indices);
                CHECK(confirmed.has_value());
                // The stored witness is tight exactly on the face.
                if (face.supporting.has_value())
                {
                    std::vector<int> tight;
                    for (int i = 0; i < p.vertex_count(); ++i)
                    {
                        if (face.supporting->slack(p.vertex(i)) == 0)
                            tight.push_back(i);
                    }
                    CHECK(tight == face.vertex_indices);
                }
            }
        }
    }
}

TEST_CASE("property: every ridge lies in exactly two facets and equals their intersection")
{
    for (const VPolytope& p : property_corpus())
    {
        const FaceLattice lattice = face_lattice(p);
        if (lattice.dim < 2)
            continue;
        const auto& facet_bucket = lattice.by_dim[static_cast<std::size_t>(lattice.dim) - 1];
        for (const Face& ridge : lattice.by_dim[static_cast<std::size_t>(lattice.dim) - 2])
        {
            std::vector<const Face*> containing;
            for (const Face& facet : facet_bucket)
            {
                if (std::includes(facet.vertex_indices.begin(), facet.vertex_indices.end(),
                                  ridge.vertex_indices.begin(), ridge.vertex_indices.end()))
                    containing.push_back(&facet);
            }
            REQUIRE(containing.size() == 2);
            std::vector<int> inter;
            std::set_intersection(containing[0]->vertex_indices.begin(),
                                  containing[0]->vertex_indices.end(),
                                  containing[1]->vertex_indices.begin(),
                                  containing[1]->vertex_indices.end(), std::back_inserter(inter));
            CHECK(inter == ridge.vertex_indices);
        }
    }
}

TEST_CASE("property: faces of faces are faces of the parent")
{
    for (const VPolytope& p : property_corpus())
    {
        const FaceLattice lattice = face_lattice(p);
        if (lattice.dim < 1)
            continue;
        for (const Face& f : lattice.by_dim[static_cast<std::size_t>(lattice.dim) - 1])
        {
            const VPolytope sub = face_polytope(p, f);
            const FaceLattice sub_lattice = face_lattice(sub);
            for (const auto& bucket : sub_lattice.by_dim)
            {
                for (const Face& g : bucket)
                {
                    std::vector<int> parent_indices;
                    for (int k : g.vertex_indices)
                        parent_indices.push_back(f.vertex_indices[static_cast<std::size_t>(k)]);
                    std::sort(parent_indices.begin(), parent_indices.end());
                    CHECK(is_face(p, parent_indices).has_value());
                }
            }
        }
    }
}

TEST_CASE("property: uniformly pyramidal coincides with being a simplex")
{
    for (const VPolytope& p : property_corpus())
    {
        if (dim(p) < 1)
            continue;
        CHECK(is_uniformly_pyramidal(p).uniformly_pyramidal == is_simplex(p));
    }
}

TEST_CASE("property: facet chains reach every vertex")
{
    for (const VPolytope& p : property_corpus())
    {
        if (dim(p) < 1)
            continue;
        for (int i = 0; i < p.vertex_count(); ++i)
        {
            const auto chain = facet_chain(p, Face{{i}, std::nullopt});
            CHECK(static_cast<int>(chain.size()) == dim(p) + 1);
            CHECK(chain.back().vertex_indices == std::vector<int>{i});
        }
    }
}

TEST_CASE("property: membership matches random convex combinations and perturbations")
{
    SplitMix64 rng(991);
    for (const VPolytope& p : property_corpus())
    {
        const int n = p.vertex_count();
        for (int round = 0; round < 12; ++round)
        {
            // Random rational convex combination: inside by construction.
            RatVec x = RatVec::Zero(p.ambient_dim());
            Rational total = 0;
            for (int i = 0; i < n; ++i)
            {
                const Rational w(static_cast<std::int64_t>(rng.below(5)), 1);
                x += w * p.vertex(i);
                total += w;
            }
            if (total == 0)
                continue;
            x /= total;
            const auto inside = contains(p, x);
            CHECK(inside.inside);
            CHECK(static_cast<int>(inside.barycentric.size()) <= dim(p) + 1);

            // Push past a vertex along the direction from the centroid:
            // strictly outside.
            RatVec centroid = RatVec::Zero(p.ambient_dim());
            for (int i = 0; i < n; ++i)
                centroid += p.vertex(i);
            centroid /= Rational(n);
            // A point strictly past a vertex, away from the centroid, cannot
            // be in the hull (the vertex would stop being extreme).
            const RatVec far = p.vertex(static_cast<int>(rng.below(n))) * Rational(3) -
                               centroid * Rational(2);
            const auto outside = contains(p, far);
            REQUIRE(!outside.inside);
            for (int i = 0; i < n; ++i)
                CHECK(outside.separator.slack(p.vertex(i)) >= 0);
            CHECK(outside.separator.slack(far) < 0);
        }
    }
}
