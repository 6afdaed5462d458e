#include "gptlab/polytope.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "gptlab/errors.hpp"
#include "gptlab/linalg.hpp"
#include "gptlab/lp.hpp"

namespace gptlab {

namespace {

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

// Is p a convex combination of the given points?
bool in_convex_hull(const RatVec& p, const std::vector<RatVec>& points)
{
    if (points.empty())
        return false;
    const int m = static_cast<int>(p.size());
    const int k = static_cast<int>(points.size());
    LinearProgram lp(k);
    for (int row = 0; row < m; ++row)
    {
        RatVec coeffs(k);
        for (int i = 0; i < k; ++i)
            coeffs(i) = points[static_cast<std::size_t>(i)](row);
        lp.add_eq(std::move(coeffs), p(row));
    }
    lp.add_eq(RatVec::Ones(k), 1);
    for (int i = 0; i < k; ++i)
    {
        RatVec coeffs = RatVec::Zero(k);
        coeffs(i) = -1;
        lp.add_le(std::move(coeffs), 0);
    }
    return lp_feasible(lp).feasible;
}

RatMat difference_matrix(const std::vector<RatVec>& points)
{
    const Eigen::Index m = points.empty() ? 0 : points.front().size();
    RatMat diffs(static_cast<Eigen::Index>(points.size()) - 1, m);
    for (std::size_t i = 1; i < points.size(); ++i)
        diffs.row(static_cast<Eigen::Index>(i - 1)) = (points[i] - points[0]).transpose();
    return diffs;
}

int affine_dimension(const std::vector<RatVec>& points)
{
    if (points.size() <= 1)
        return 0;
    return rank(difference_matrix(points));
}

// Scales a half-space by a positive factor so the first nonzero normal
// entry has absolute value one.
void normalize_halfspace(HalfSpace& h)
{
    for (Eigen::Index i = 0; i < h.normal.size(); ++i)
    {
        if (h.normal(i) != 0)
        {
            const Rational inv = Rational(1) / abs(h.normal(i));
            if (inv != 1)
            {
                h.normal *= inv;
                h.offset *= inv;
            }
            return;
        }
    }
    throw InternalInconsistencyError("half-space with zero normal");
}

// Checks the Face witness contract against the parent vertex list.
bool witness_matches(const VPolytope& P, const std::vector<int>& indices, const HalfSpace& h)
{
    std::vector<bool> in_face(static_cast<std::size_t>(P.vertex_count()), false);
    for (int i : indices)
        in_face[static_cast<std::size_t>(i)] = true;
    for (int i = 0; i < P.vertex_count(); ++i)
    {
        const Rational slack = h.slack(P.vertex(i));
        if (in_face[static_cast<std::size_t>(i)] ? (slack != 0) : (slack <= 0))
            return false;
    }
    return true;
}

std::vector<int> sorted_indices(std::vector<int> v)
{
    std::sort(v.begin(), v.end());
    return v;
}

}  // namespace

VPolytope VPolytope::from_points(int ambient_dim, const std::vector<RatVec>& points)
{
    if (points.empty())
        throw UsageError("VPolytope::from_points: empty point set");
    for (const RatVec& p : points)
    {
        if (p.size() != ambient_dim)
            throw UsageError("VPolytope::from_points: point of wrong dimension");
    }
    std::vector<RatVec> distinct;
    for (const RatVec& p : points)
    {
        bool seen = false;
        for (const RatVec& q : distinct)
        {
            if (vec_equal(p, q))
            {
                seen = true;
                break;
            }
        }
        if (!seen)
            distinct.push_back(p);
    }
    std::vector<RatVec> extreme;
    for (std::size_t i = 0; i < distinct.size(); ++i)
    {
        std::vector<RatVec> others;
        for (std::size_t j = 0; j < distinct.size(); ++j)
        {
            if (j != i)
                others.push_back(distinct[j]);
        }
        if (!in_convex_hull(distinct[i], others))
            extreme.push_back(distinct[i]);
    }
    std::sort(extreme.begin(), extreme.end(), lex_less);
    return VPolytope(ambient_dim, std::move(extreme));
}

VPolytope VPolytope::from_extreme_points(int ambient_dim, std::vector<RatVec> points)
{
    if (points.empty())
        throw UsageError("VPolytope::from_extreme_points: empty point set");
    for (const RatVec& p : points)
    {
        if (p.size() != ambient_dim)
            throw UsageError("VPolytope::from_extreme_points: point of wrong dimension");
    }
    std::sort(points.begin(), points.end(), lex_less);
    return VPolytope(ambient_dim, std::move(points));
}

std::vector<int> FaceLattice::f_vector() const
{
    std::vector<int> f;
    f.reserve(by_dim.size());
    for (const auto& bucket : by_dim)
        f.push_back(static_cast<int>(bucket.size()));
    return f;
}

int dim(const VPolytope& P)
{
    return affine_dimension(P.vertices());
}

std::vector<std::pair<RatVec, Rational>> affine_hull_constraints(const VPolytope& P)
{
    const int m = P.ambient_dim();
    std::vector<std::pair<RatVec, Rational>> out;
    RatMat diffs;
    if (P.vertex_count() == 1)
        diffs = RatMat::Zero(0, m);
    else
        diffs = difference_matrix(P.vertices());
    RatMat basis = kernel_basis(diffs);
    for (Eigen::Index j = 0; j < basis.cols(); ++j)
    {
        RatVec normal = basis.col(j);
        out.emplace_back(normal, normal.dot(P.vertex(0)));
    }
    return out;
}

AffineChart affine_chart(const std::vector<RatVec>& points)
{
    if (points.empty())
        throw UsageError("affine_chart: empty point set");
    const Eigen::Index m = points.front().size();
    AffineChart chart;
    chart.origin = points.front();
    if (points.size() == 1)
    {
        chart.basis = RatMat::Zero(m, 0);
        chart.dual = RatMat::Zero(0, m);
        return chart;
    }
    RatMat diffs = difference_matrix(points);
    std::vector<int> pivots;
    rref_in_place(diffs, &pivots);
    const Eigen::Index d = static_cast<Eigen::Index>(pivots.size());
    chart.basis = RatMat::Zero(m, d);
    chart.dual = RatMat::Zero(d, m);
    for (Eigen::Index i = 0; i < d; ++i)
    {
        chart.basis.col(i) = diffs.row(i).transpose();
        chart.dual(i, pivots[static_cast<std::size_t>(i)]) = 1;
    }
    return chart;
}

std::optional<std::vector<Face>> facets(const VPolytope& P)
{
    const int d = dim(P);
    if (d == 0)
        return std::nullopt;
    const AffineChart chart = affine_chart(P.vertices());
    const int n = P.vertex_count();
    std::vector<RatVec> local;
    local.reserve(static_cast<std::size_t>(n));
    for (const RatVec& v : P.vertices())
        local.push_back(chart.to_local(v));

    std::set<std::vector<int>> seen;
    std::vector<Face> out;

    std::vector<int> subset(static_cast<std::size_t>(d));
    const auto process_subset = [&]() {
        // Hyperplane through the chosen points: kernel of [z^T, -1].
        RatMat system(d, d + 1);
        for (int i = 0; i < d; ++i)
        {
            system.row(i).head(d) = local[static_cast<std::size_t>(subset[static_cast<std::size_t>(i)])].transpose();
            system(i, d) = -1;
        }
        const RatMat kernel = kernel_basis(system);
        if (kernel.cols() != 1)
            return;  // points do not span a unique hyperplane
        RatVec normal = kernel.col(0).head(d);
        Rational offset = kernel(d, 0);
        bool normal_zero = true;
        for (Eigen::Index i = 0; i < normal.size(); ++i)
        {
            if (normal(i) != 0)
            {
                normal_zero = false;
                break;
            }
        }
        if (normal_zero)
            return;

        bool some_below = false, some_above = false;
        std::vector<int> touching;
        for (int i = 0; i < n; ++i)
        {
            const Rational value = normal.dot(local[static_cast<std::size_t>(i)]);
            if (value < offset)
                some_below = true;
            else if (value > offset)
                some_above = true;
            else
                touching.push_back(i);
        }
        if (some_below && some_above)
            return;  // not supporting
        if (some_above)
        {
            normal = -normal;
            offset = -offset;
        }
        std::vector<RatVec> touch_points;
        touch_points.reserve(touching.size());
        for (int i : touching)
            touch_points.push_back(local[static_cast<std::size_t>(i)]);
        if (affine_dimension(touch_points) != d - 1)
            return;
        if (!seen.insert(touching).second)
            return;

        // Map the local half-space back to the ambient space.
        HalfSpace h;
        h.normal = chart.dual.transpose() * normal;
        h.offset = offset + h.normal.dot(chart.origin);
        normalize_halfspace(h);
        if (!witness_matches(P, touching, h))
            throw InternalInconsistencyError("facet witness failed verification");
        out.push_back(Face{touching, h});
    };

    // All d-subsets of vertices in lexicographic order.
    std::vector<int> stack;
    const std::function<void(int)> recurse = [&](int start) {
        if (static_cast<int>(stack.size()) == d)
        {
            for (int i = 0; i < d; ++i)
                subset[static_cast<std::size_t>(i)] = stack[static_cast<std::size_t>(i)];
            process_subset();
            return;
        }
        for (int i = start; i < n; ++i)
        {
            stack.push_back(i);
            recurse(i + 1);
            stack.pop_back();
        }
    };
    recurse(0);

    std::sort(out.begin(), out.end(),
              [](const Face& a, const Face& b) { return a.vertex_indices < b.vertex_indices; });
    return out;
}

FaceLattice face_lattice(const VPolytope& P)
{
    const int d = dim(P);
    FaceLattice lattice;
    lattice.dim = d;
    lattice.by_dim.assign(static_cast<std::size_t>(d) + 1, {});

    std::vector<int> all(static_cast<std::size_t>(P.vertex_count()));
    for (int i = 0; i < P.vertex_count(); ++i)
        all[static_cast<std::size_t>(i)] = i;
    lattice.by_dim[static_cast<std::size_t>(d)].push_back(Face{all, std::nullopt});

    const auto facet_list = facets(P);
    if (!facet_list.has_value())
        return lattice;  // a point: only the improper face

    std::set<std::vector<int>> closure;
    for (const Face& f : *facet_list)
        closure.insert(f.vertex_indices);
    bool grew = true;
    while (grew)
    {
        grew = false;
        std::vector<std::vector<int>> snapshot(closure.begin(), closure.end());
        for (std::size_t a = 0; a < snapshot.size(); ++a)
        {
            for (std::size_t b = a + 1; b < snapshot.size(); ++b)
            {
                std::vector<int> inter;
                std::set_intersection(snapshot[a].begin(), snapshot[a].end(), snapshot[b].begin(),
                                      snapshot[b].end(), std::back_inserter(inter));
                if (!inter.empty() && closure.insert(inter).second)
                    grew = true;
            }
        }
    }

    for (const std::vector<int>& indices : closure)
    {
        // Witness: the sum of the half-spaces of all facets containing the
        // face is tight exactly on the face.
        HalfSpace sum{RatVec::Zero(P.ambient_dim()), 0};
        for (const Face& f : *facet_list)
        {
            if (std::includes(f.vertex_indices.begin(), f.vertex_indices.end(), indices.begin(),
                              indices.end()))
            {
                sum.normal += f.supporting->normal;
                sum.offset += f.supporting->offset;
            }
        }
        normalize_halfspace(sum);
        if (!witness_matches(P, indices, sum))
            throw InternalInconsistencyError("face lattice witness failed verification");
        std::vector<RatVec> pts;
        pts.reserve(indices.size());
        for (int i : indices)
            pts.push_back(P.vertex(i));
        const int k = affine_dimension(pts);
        lattice.by_dim[static_cast<std::size_t>(k)].push_back(Face{indices, sum});
    }
    for (auto& bucket : lattice.by_dim)
    {
        std::sort(bucket.begin(), bucket.end(),
                  [](const Face& a, const Face& b) { return a.vertex_indices < b.vertex_indices; });
    }
    return lattice;
}

std::optional<Face> is_face(const VPolytope& P, const std::vector<int>& S)
{
    if (S.empty())
        throw UsageError("is_face: empty vertex subset");
    const int n = P.vertex_count();
    std::vector<int> indices = sorted_indices(S);
    if (std::adjacent_find(indices.begin(), indices.end()) != indices.end())
        throw UsageError("is_face: repeated vertex index");
    if (indices.front() < 0 || indices.back() >= n)
        throw UsageError("is_face: vertex index out of range");
    if (static_cast<int>(indices.size()) == n)
        return Face{indices, std::nullopt};

    // Variables (normal, c): equality on S, a uniform gap of one outside
    // (any positive gap rescales to one).
    const int m = P.ambient_dim();
    LinearProgram lp(m + 1);
    std::vector<bool> in_s(static_cast<std::size_t>(n), false);
    for (int i : indices)
        in_s[static_cast<std::size_t>(i)] = true;
    for (int i = 0; i < n; ++i)
    {
        RatVec row(m + 1);
        row.head(m) = P.vertex(i);
        row(m) = -1;
        if (in_s[static_cast<std::size_t>(i)])
            lp.add_eq(std::move(row), 0);
        else
            lp.add_le(std::move(row), -1);
    }
    const LpResult result = lp_feasible(lp);
    if (!result.feasible)
        return std::nullopt;
    HalfSpace h{result.witness.head(m), result.witness(m)};
    if (!witness_matches(P, indices, h))
        throw InternalInconsistencyError("is_face witness failed verification");
    return Face{std::move(indices), std::move(h)};
}

VPolytope face_polytope(const VPolytope& P, const Face& F)
{
    std::vector<RatVec> pts;
    pts.reserve(F.vertex_indices.size());
    for (int i : F.vertex_indices)
        pts.push_back(P.vertex(i));
    return VPolytope::from_extreme_points(P.ambient_dim(), std::move(pts));
}

std::vector<Face> facet_chain(const VPolytope& P, const Face& F)
{
    const int n = P.vertex_count();
    const std::vector<int> target = sorted_indices(F.vertex_indices);
    if (static_cast<int>(target.size()) >= n)
        throw UsageError("facet_chain: face must be proper");
    if (!is_face(P, target).has_value())
        throw UsageError("facet_chain: argument is not a face");

    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        all[static_cast<std::size_t>(i)] = i;

    std::vector<Face> chain;
    chain.push_back(Face{all, std::nullopt});
    std::vector<int> current = all;
    while (current != target)
    {
        const VPolytope sub = face_polytope(P, Face{current, std::nullopt});
        const auto sub_facets = facets(sub);
        if (!sub_facets.has_value())
            throw InternalInconsistencyError("facet_chain: reached a point before the target face");
        // Sub-vertex k is parent vertex current[k]: the parent list is
        // lex-sorted, so sorted parent indices enumerate the sub-polytope's
        // canonical order.
        std::optional<std::vector<int>> best;
        for (const Face& sf : *sub_facets)
        {
            std::vector<int> parent_indices;
            parent_indices.reserve(sf.vertex_indices.size());
            for (int k : sf.vertex_indices)
                parent_indices.push_back(current[static_cast<std::size_t>(k)]);
            if (std::includes(parent_indices.begin(), parent_indices.end(), target.begin(),
                              target.end()))
            {
                if (!best.has_value() || parent_indices < *best)
                    best = parent_indices;
            }
        }
        if (!best.has_value())
            throw InternalInconsistencyError("facet_chain: no facet of the current face contains the target");
        const auto face = is_face(P, *best);
        if (!face.has_value())
            throw InternalInconsistencyError("facet_chain: chain element is not a face of the parent");
        chain.push_back(*face);
        current = *best;
    }
    return chain;
}

bool is_simplex(const VPolytope& P)
{
    return P.vertex_count() == dim(P) + 1;
}

std::optional<int> is_pyramidal_at(const VPolytope& P, const Face& B)
{
    const auto facet_list = facets(P);
    if (!facet_list.has_value())
        throw UsageError("is_pyramidal_at: polytope has no facets");
    const std::vector<int> base = sorted_indices(B.vertex_indices);
    bool found = false;
    for (const Face& f : *facet_list)
    {
        if (f.vertex_indices == base)
        {
            found = true;
            break;
        }
    }
    if (!found)
        throw UsageError("is_pyramidal_at: argument is not a facet");
    std::vector<int> outside;
    std::vector<bool> in_base(static_cast<std::size_t>(P.vertex_count()), false);
    for (int i : base)
        in_base[static_cast<std::size_t>(i)] = true;
    for (int i = 0; i < P.vertex_count(); ++i)
    {
        if (!in_base[static_cast<std::size_t>(i)])
            outside.push_back(i);
    }
    if (outside.size() == 1)
        return outside.front();
    return std::nullopt;
}

UniformPyramidalityReport is_uniformly_pyramidal(const VPolytope& P)
{
    const auto facet_list = facets(P);
    if (!facet_list.has_value())
        throw UsageError("is_uniformly_pyramidal: dimension must be at least 1");
    UniformPyramidalityReport report;
    report.uniformly_pyramidal = true;
    for (const Face& f : *facet_list)
    {
        const std::optional<int> apex = is_pyramidal_at(P, f);
        if (!apex.has_value())
            report.uniformly_pyramidal = false;
        report.per_facet.emplace_back(f, apex);
    }
    return report;
}

ContainsResult contains(const VPolytope& P, const RatVec& x)
{
    if (x.size() != P.ambient_dim())
        throw UsageError("contains: point of wrong dimension");
    const int n = P.vertex_count();
    const int m = P.ambient_dim();
    LinearProgram lp(n);
    for (int row = 0; row < m; ++row)
    {
        RatVec coeffs(n);
        for (int i = 0; i < n; ++i)
            coeffs(i) = P.vertex(i)(row);
        lp.add_eq(std::move(coeffs), x(row));
    }
    lp.add_eq(RatVec::Ones(n), 1);
    for (int i = 0; i < n; ++i)
    {
        RatVec coeffs = RatVec::Zero(n);
        coeffs(i) = -1;
        lp.add_le(std::move(coeffs), 0);
    }
    const LpResult result = lp_feasible(lp);
    ContainsResult out;
    if (!result.feasible)
    {
        out.inside = false;
        // The certificate rows are the m coordinate equalities, the
        // normalization equality, then the sign constraints; it contracts to
        // a hyperplane separating x from every vertex.
        RatVec mu = result.certificate.eq_multipliers.head(m);
        const Rational s = result.certificate.eq_multipliers(m);
        out.separator = HalfSpace{-mu, s};
        normalize_halfspace(out.separator);
        for (int i = 0; i < n; ++i)
        {
            if (out.separator.slack(P.vertex(i)) < 0)
                throw InternalInconsistencyError("contains: separator fails on a vertex");
        }
        if (out.separator.slack(x) >= 0)
            throw InternalInconsistencyError("contains: separator fails on the query point");
        return out;
    }

    out.inside = true;
    RatVec lambda = result.witness;
    const int max_support = dim(P) + 1;
    while (true)
    {
        std::vector<int> support;
        for (int i = 0; i < n; ++i)
        {
            if (lambda(i) != 0)
                support.push_back(i);
        }
        if (static_cast<int>(support.size()) <= max_support)
        {
            for (int i : support)
                out.barycentric.emplace_back(i, lambda(i));
            break;
        }
        // Caratheodory step: shift along an affine dependency until a
        // coefficient hits zero.
        RatMat hom(m + 1, static_cast<Eigen::Index>(support.size()));
        for (std::size_t k = 0; k < support.size(); ++k)
        {
            hom.col(static_cast<Eigen::Index>(k)).head(m) = P.vertex(support[k]);
            hom(m, static_cast<Eigen::Index>(k)) = 1;
        }
        const RatMat kernel = kernel_basis(hom);
        if (kernel.cols() == 0)
            throw InternalInconsistencyError("contains: oversized support without affine dependency");
        RatVec dependency = kernel.col(0);
        bool has_positive = false;
        for (Eigen::Index k = 0; k < dependency.size(); ++k)
        {
            if (dependency(k) > 0)
            {
                has_positive = true;
                break;
            }
        }
        if (!has_positive)
            dependency = -dependency;
        bool first = true;
        Rational step = 0;
        for (std::size_t k = 0; k < support.size(); ++k)
        {
            if (dependency(static_cast<Eigen::Index>(k)) <= 0)
                continue;
            const Rational ratio = lambda(support[k]) / dependency(static_cast<Eigen::Index>(k));
            if (first || ratio < step)
            {
                step = ratio;
                first = false;
            }
        }
        for (std::size_t k = 0; k < support.size(); ++k)
            lambda(support[k]) -= step * dependency(static_cast<Eigen::Index>(k));
    }

    // Re-verify the reduced witness.
    RatVec combo = RatVec::Zero(m);
    Rational total = 0;
    for (const auto& [i, w] : out.barycentric)
    {
        if (w < 0)
            throw InternalInconsistencyError("contains: negative barycentric weight");
        combo += w * P.vertex(i);
        total += w;
    }
    if (total != 1 || !vec_equal(combo, x))
        throw InternalInconsistencyError("contains: barycentric witness does not reproduce the point");
    return out;
}

namespace {

// Solves for the affine map sending each anchor to its image; anchors must
// be d+1 affinely independent points in d-space.
std::optional<AffineMap> affine_map_through(const std::vector<RatVec>& from,
                                            const std::vector<RatVec>& to)
{
    const Eigen::Index d = from.front().size();
    RatMat system(d + 1, d + 1);
    for (Eigen::Index r = 0; r <= d; ++r)
    {
        system.row(r).head(d) = from[static_cast<std::size_t>(r)].transpose();
        system(r, d) = 1;
    }
    const std::optional<RatMat> inv = inverse(system);
    if (!inv.has_value())
        return std::nullopt;
    AffineMap map;
    map.linear = RatMat::Zero(d, d);
    map.shift = RatVec::Zero(d);
    for (Eigen::Index row = 0; row < d; ++row)
    {
        RatVec rhs(d + 1);
        for (Eigen::Index r = 0; r <= d; ++r)
            rhs(r) = to[static_cast<std::size_t>(r)](row);
        const RatVec solution = *inv * rhs;
        map.linear.row(row) = solution.head(d).transpose();
        map.shift(row) = solution(d);
    }
    return map;
}

}  // namespace

std::optional<AffineMap> affinely_equivalent(const VPolytope& P, const VPolytope& Q)
{
    if (P.vertex_count() > 12 || Q.vertex_count() > 12)
        throw TooLargeError("affinely_equivalent: more than 12 vertices");
    if (P.vertex_count() != Q.vertex_count())
        return std::nullopt;
    const int d = dim(P);
    if (d != dim(Q))
        return std::nullopt;
    const int n = P.vertex_count();

    const FaceLattice lat_p = face_lattice(P);
    const FaceLattice lat_q = face_lattice(Q);
    if (lat_p.f_vector() != lat_q.f_vector())
        return std::nullopt;

    // Vertex degree = number of facets containing it.
    const auto degree_profile = [n](const FaceLattice& lat, int dimension) {
        std::vector<int> deg(static_cast<std::size_t>(n), 0);
        if (dimension >= 1)
        {
            for (const Face& f : lat.by_dim[static_cast<std::size_t>(dimension) - 1])
            {
                for (int i : f.vertex_indices)
                    ++deg[static_cast<std::size_t>(i)];
            }
        }
        return deg;
    };
    const std::vector<int> deg_p = degree_profile(lat_p, d);
    const std::vector<int> deg_q = degree_profile(lat_q, d);
    {
        std::vector<int> sp = deg_p, sq = deg_q;
        std::sort(sp.begin(), sp.end());
        std::sort(sq.begin(), sq.end());
        if (sp != sq)
            return std::nullopt;
    }

    const AffineChart chart_p = affine_chart(P.vertices());
    const AffineChart chart_q = affine_chart(Q.vertices());
    std::vector<RatVec> pv, qv;
    for (const RatVec& v : P.vertices())
        pv.push_back(chart_p.to_local(v));
    for (const RatVec& v : Q.vertices())
        qv.push_back(chart_q.to_local(v));

    std::vector<int> image(static_cast<std::size_t>(n), -1);
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    std::vector<int> anchors;
    std::optional<AffineMap> local_map;

    const auto find_exact = [&](const RatVec& target) {
        for (int j = 0; j < n; ++j)
        {
            if (vec_equal(qv[static_cast<std::size_t>(j)], target))
                return j;
        }
        return -1;
    };

    const std::function<bool(int)> assign = [&](int i) -> bool {
        if (i == n)
            return true;
        if (local_map.has_value())
        {
            const int j = find_exact(local_map->apply(pv[static_cast<std::size_t>(i)]));
            if (j < 0 || used[static_cast<std::size_t>(j)] ||
                deg_p[static_cast<std::size_t>(i)] != deg_q[static_cast<std::size_t>(j)])
                return false;
            image[static_cast<std::size_t>(i)] = j;
            used[static_cast<std::size_t>(j)] = true;
            if (assign(i + 1))
                return true;
            used[static_cast<std::size_t>(j)] = false;
            image[static_cast<std::size_t>(i)] = -1;
            return false;
        }
        // Is pv[i] an affine combination of the current anchors?
        if (!anchors.empty())
        {
            RatMat system(d + 1, static_cast<Eigen::Index>(anchors.size()));
            RatVec rhs(d + 1);
            for (std::size_t k = 0; k < anchors.size(); ++k)
            {
                system.col(static_cast<Eigen::Index>(k)).head(d) = pv[static_cast<std::size_t>(anchors[k])];
                system(d, static_cast<Eigen::Index>(k)) = 1;
            }
            rhs.head(d) = pv[static_cast<std::size_t>(i)];
            rhs(d) = 1;
            const LinearSolution combo = solve_linear_system(system, rhs);
            if (combo.consistent)
            {
                RatVec target = RatVec::Zero(d);
                for (std::size_t k = 0; k < anchors.size(); ++k)
                {
                    target += combo.particular(static_cast<Eigen::Index>(k)) *
                              qv[static_cast<std::size_t>(image[static_cast<std::size_t>(anchors[k])])];
                }
                const int j = find_exact(target);
                if (j < 0 || used[static_cast<std::size_t>(j)] ||
                    deg_p[static_cast<std::size_t>(i)] != deg_q[static_cast<std::size_t>(j)])
                    return false;
                image[static_cast<std::size_t>(i)] = j;
                used[static_cast<std::size_t>(j)] = true;
                if (assign(i + 1))
                    return true;
                used[static_cast<std::size_t>(j)] = false;
                image[static_cast<std::size_t>(i)] = -1;
                return false;
            }
        }
        // New anchor: try every compatible image.
        for (int j = 0; j < n; ++j)
        {
            if (used[static_cast<std::size_t>(j)] ||
                deg_p[static_cast<std::size_t>(i)] != deg_q[static_cast<std::size_t>(j)])
                continue;
            image[static_cast<std::size_t>(i)] = j;
            used[static_cast<std::size_t>(j)] = true;
            anchors.push_back(i);
            bool determined = false;
            if (static_cast<int>(anchors.size()) == d + 1)
            {
                std::vector<RatVec> from, to;
                for (int a : anchors)
                {
                    from.push_back(pv[static_cast<std::size_t>(a)]);
                    to.push_back(qv[static_cast<std::size_t>(image[static_cast<std::size_t>(a)])]);
                }
                local_map = affine_map_through(from, to);
                determined = true;
            }
            if ((!determined || local_map.has_value()) && assign(i + 1))
                return true;
            if (determined)
                local_map.reset();
            anchors.pop_back();
            used[static_cast<std::size_t>(j)] = false;
            image[static_cast<std::size_t>(i)] = -1;
        }
        return false;
    };

    if (!assign(0))
        return std::nullopt;

    // Compose the local map with both charts to act on ambient coordinates.
    if (!local_map.has_value())
    {
        // Fewer than d+1 anchors can only happen for a single-point
        // polytope (d = 0).
        local_map = AffineMap{RatMat::Zero(0, 0), RatVec::Zero(0)};
    }
    AffineMap ambient;
    ambient.linear = chart_q.basis * local_map->linear * chart_p.dual;
    ambient.shift = chart_q.origin +
                    chart_q.basis * (local_map->shift - local_map->linear * (chart_p.dual * chart_p.origin));
    for (int i = 0; i < n; ++i)
    {
        if (!vec_equal(ambient.apply(P.vertex(i)), Q.vertex(image[static_cast<std::size_t>(i)])))
            throw InternalInconsistencyError("affinely_equivalent: witness map fails on a vertex");
    }
    return ambient;
}

}  // namespace gptlab
