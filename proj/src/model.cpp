#include "gptlab/model.hpp"

#include <algorithm>
#include <functional>

#include "gptlab/approx.hpp"
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

}  // namespace

StateSpace StateSpace::from_base_polytope(const VPolytope& base)
{
    const int d = gptlab::dim(base);
    std::vector<RatVec> lifted;
    lifted.reserve(static_cast<std::size_t>(base.vertex_count()));
    if (d == base.ambient_dim())
    {
        // Already full-dimensional: lift as-is.
        for (const RatVec& v : base.vertices())
        {
            RatVec w(d + 1);
            w.head(d) = v;
            w(d) = 1;
            lifted.push_back(std::move(w));
        }
    }
    else
    {
        const AffineChart chart = affine_chart(base.vertices());
        for (const RatVec& v : base.vertices())
        {
            RatVec w(d + 1);
            w.head(d) = chart.to_local(v);
            w(d) = 1;
            lifted.push_back(std::move(w));
        }
    }
    return StateSpace(VPolytope::from_extreme_points(d + 1, std::move(lifted)));
}

StateSpace StateSpace::from_omega_vertices(int ambient_dim, const std::vector<RatVec>& vertices)
{
    VPolytope omega = VPolytope::from_points(ambient_dim, vertices);
    for (const RatVec& v : omega.vertices())
    {
        if (v(ambient_dim - 1) != 1)
            throw UsageError("StateSpace: invariant u(omega) = 1 violated by a vertex");
    }
    if (gptlab::dim(omega) != ambient_dim - 1)
        throw UsageError("StateSpace: invariant dim(omega) = ambient_dim - 1 violated (cone not generating)");
    return StateSpace(std::move(omega));
}

RatVec StateSpace::unit() const
{
    RatVec u = RatVec::Zero(dim());
    u(dim() - 1) = 1;
    return u;
}

StateSpace classical_model(int d)
{
    if (d < 1)
        throw UsageError("classical_model: d must be at least 1");
    // Standard (d-1)-simplex conv{0, e_1, ..., e_{d-1}}; lifting to height 1
    // realizes the all-ones order unit as the last coordinate.
    std::vector<RatVec> points;
    points.push_back(RatVec::Zero(d - 1));
    for (int i = 0; i < d - 1; ++i)
    {
        RatVec e = RatVec::Zero(d - 1);
        e(i) = 1;
        points.push_back(std::move(e));
    }
    return StateSpace::from_base_polytope(VPolytope::from_extreme_points(d - 1, std::move(points)));
}

StateSpace polygon_model(int n, const Rational& eps)
{
    if (n < 3)
        throw UsageError("polygon_model: n must be at least 3");
    if (eps <= 0)
        throw UsageError("polygon_model: eps must be positive");
    std::vector<RatVec> points;
    points.reserve(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
    {
        const Rational turns(i, n);
        const Rational sec_turns(1, n);  // radius sqrt(1/cos(pi/n))
        RatVec p(2);
        p(0) = approx_rational(TrigExpr::cos(turns, sec_turns), eps);
        p(1) = approx_rational(TrigExpr::sin(turns, sec_turns), eps);
        points.push_back(std::move(p));
    }
    const VPolytope base = VPolytope::from_points(2, points);
    if (base.vertex_count() != n || dim(base) != 2)
        throw ApproximationCollapseError("polygon_model: approximated points are not " + std::to_string(n) +
                                         " extreme points in the plane");
    return StateSpace::from_base_polytope(base);
}

StateSpace square_surrogate()
{
    std::vector<RatVec> verts;
    verts.push_back(make_vec({1, 0, 1}));
    verts.push_back(make_vec({-1, 0, 1}));
    verts.push_back(make_vec({0, 1, 1}));
    verts.push_back(make_vec({0, -1, 1}));
    return StateSpace::from_omega_vertices(3, verts);
}

EffectPolytope effect_polytope(const StateSpace& space)
{
    const int m = space.dim();
    const std::vector<RatVec>& verts = space.omega().vertices();
    const int nv = static_cast<int>(verts.size());

    // Bounding hyperplanes f.omega_i = b with b in {0, 1}. A vertex of the
    // effect polytope solves m of them with linearly independent normals, so
    // it arises from an m-subset of distinct state vertices and a 0/1
    // pattern (two hyperplanes of the same state vertex are parallel).
    std::vector<RatVec> found;
    const auto record = [&](const RatVec& f) {
        for (const RatVec& g : found)
        {
            if (vec_equal(f, g))
                return;
        }
        found.push_back(f);
    };

    std::vector<int> subset;
    RatMat system(m, m);
    RatVec rhs(m);
    const std::function<void(int)> recurse = [&](int start) {
        if (static_cast<int>(subset.size()) == m)
        {
            for (int i = 0; i < m; ++i)
                system.row(i) = verts[static_cast<std::size_t>(subset[static_cast<std::size_t>(i)])].transpose();
            const std::optional<RatMat> inv = inverse(system);
            if (!inv.has_value())
                return;
            for (unsigned pattern = 0; pattern < (1u << m); ++pattern)
            {
                for (int i = 0; i < m; ++i)
                    rhs(i) = ((pattern >> i) & 1u) ? 1 : 0;
                const RatVec f = *inv * rhs;
                bool feasible = true;
                for (const RatVec& w : verts)
                {
                    const Rational value = f.dot(w);
                    if (value < 0 || value > 1)
                    {
                        feasible = false;
                        break;
                    }
                }
                if (feasible)
                    record(f);
            }
            return;
        }
        for (int i = start; i < nv; ++i)
        {
            subset.push_back(i);
            recurse(i + 1);
            subset.pop_back();
        }
    };
    recurse(0);

    EffectPolytope out{VPolytope::from_extreme_points(m, std::move(found)), -1, -1};
    const RatVec zero = RatVec::Zero(m);
    RatVec unit = RatVec::Zero(m);
    unit(m - 1) = 1;
    for (int i = 0; i < out.dual.vertex_count(); ++i)
    {
        if (vec_equal(out.dual.vertex(i), zero))
            out.zero_index = i;
        if (vec_equal(out.dual.vertex(i), unit))
            out.unit_index = i;
    }
    if (out.zero_index < 0 || out.unit_index < 0)
        throw InternalInconsistencyError("effect polytope is missing the zero or unit vertex");
    return out;
}

Model::Model(StateSpace space) : space_(std::move(space)), effects_(effect_polytope(space_))
{
    const auto facet_list = gptlab::facets(space_.omega());
    if (facet_list.has_value())
        facets_ = *facet_list;
}

bool Model::is_effect(const Effect& f) const
{
    if (f.size() != dim())
        return false;
    for (const RatVec& w : omega().vertices())
    {
        const Rational value = f.dot(w);
        if (value < 0 || value > 1)
            return false;
    }
    return true;
}

bool Model::is_pure_effect(const Effect& f) const
{
    if (f.size() != dim())
        return false;
    for (const RatVec& g : pure_effects())
    {
        if (vec_equal(f, g))
            return true;
    }
    return false;
}

Rational evaluate(const Effect& f, const RatVec& omega)
{
    if (f.size() != omega.size())
        throw UsageError("evaluate: dimension mismatch");
    return f.dot(omega);
}

Effect complement(const Model& model, const Effect& f)
{
    if (!model.is_effect(f))
        throw UsageError("complement: argument is not an effect");
    return model.unit() - f;
}

std::optional<Face> face_of_effect(const Model& model, const Effect& f)
{
    if (!model.is_effect(f))
        throw UsageError("face_of_effect: argument is not an effect");
    std::vector<int> indices;
    for (int i = 0; i < model.omega().vertex_count(); ++i)
    {
        if (f.dot(model.omega().vertex(i)) == 1)
            indices.push_back(i);
    }
    if (indices.empty())
        return std::nullopt;
    const auto face = is_face(model.omega(), indices);
    if (!face.has_value())
        throw InternalInconsistencyError("face_of_effect: maximal-value set is not a face");
    return face;
}

std::optional<Face> opposite_face(const Model& model, const Effect& f)
{
    if (!model.is_pure_effect(f))
        throw UsageError("opposite_face: argument must be a pure effect");
    return face_of_effect(model, model.unit() - f);
}

Effect facet_effect(const Model& model, const Face& facet)
{
    std::vector<int> indices = facet.vertex_indices;
    std::sort(indices.begin(), indices.end());
    const Face* match = nullptr;
    for (const Face& f : model.facets())
    {
        if (f.vertex_indices == indices)
        {
            match = &f;
            break;
        }
    }
    if (match == nullptr)
        throw UsageError("facet_effect: argument is not a facet (use find_effect_for_face for general faces)");

    // g(x) = offset - normal.x vanishes exactly on the facet; u - beta*g with
    // the largest admissible beta pushes the farthest vertices to value 0.
    const HalfSpace& h = *match->supporting;
    Rational max_gap = 0;
    for (int i = 0; i < model.omega().vertex_count(); ++i)
    {
        const Rational gap = h.slack(model.omega().vertex(i));
        if (gap > max_gap)
            max_gap = gap;
    }
    const Rational beta = Rational(1) / max_gap;
    const RatVec u = model.unit();
    Effect candidate = u - beta * (h.offset * u - h.normal);

    const auto face_matches = [&](const Effect& g) {
        const auto fg = face_of_effect(model, g);
        return fg.has_value() && fg->vertex_indices == indices;
    };
    if (model.is_pure_effect(candidate) && face_matches(candidate))
        return candidate;
    // Fall back to scanning the enumerated pure effects, in case the direct
    // construction lands on a non-extreme effect for some input.
    for (const RatVec& g : model.pure_effects())
    {
        if (face_matches(g))
            return g;
    }
    throw InternalInconsistencyError("facet_effect: no pure effect attains 1 exactly on the facet");
}

EffectForFace find_effect_for_face(const Model& model, const Face& F)
{
    std::vector<int> indices = F.vertex_indices;
    std::sort(indices.begin(), indices.end());
    if (!is_face(model.omega(), indices).has_value())
        throw UsageError("find_effect_for_face: argument is not a face");

    const int m = model.dim();
    const int nv = model.omega().vertex_count();
    std::vector<bool> in_face(static_cast<std::size_t>(nv), false);
    for (int i : indices)
        in_face[static_cast<std::size_t>(i)] = true;

    // Variables (f, t): f = 1 on the face, 0 <= f <= 1 everywhere,
    // f <= 1 - t outside; maximize the uniform gap t.
    LinearProgram lp(m + 1);
    for (int i = 0; i < nv; ++i)
    {
        const RatVec& w = model.omega().vertex(i);
        RatVec row = RatVec::Zero(m + 1);
        row.head(m) = w;
        if (in_face[static_cast<std::size_t>(i)])
        {
            lp.add_eq(std::move(row), 1);
        }
        else
        {
            RatVec gap_row = RatVec::Zero(m + 1);
            gap_row.head(m) = w;
            gap_row(m) = 1;
            lp.add_le(std::move(gap_row), 1);  // f(w) + t <= 1
            lp.add_ge(std::move(row), 0);
            RatVec upper = RatVec::Zero(m + 1);
            upper.head(m) = w;
            lp.add_le(std::move(upper), 1);
        }
    }
    RatVec objective = RatVec::Zero(m + 1);
    objective(m) = 1;
    RatVec cap = RatVec::Zero(m + 1);
    cap(m) = 1;
    lp.add_le(std::move(cap), 1);  // t <= 1 keeps the program bounded
    lp.objective = objective;

    const LpOptimum opt = lp_maximize(lp);
    EffectForFace out;
    if (opt.status != LpOptimum::Status::Optimal || opt.value <= 0)
    {
        out.kind = EffectForFace::Kind::NoEffect;
        return out;
    }
    out.effect = opt.argmax.head(m);
    for (const RatVec& g : model.pure_effects())
    {
        const auto fg = face_of_effect(model, g);
        if (fg.has_value() && fg->vertex_indices == indices)
        {
            out.kind = EffectForFace::Kind::Pure;
            out.effect = g;
            return out;
        }
    }
    out.kind = EffectForFace::Kind::OnlyImpure;
    return out;
}

std::vector<std::vector<int>> pure_subsets_summing_to(const Model& model, const RatVec& target,
                                                      int max_pure_effects)
{
    const std::vector<RatVec>& pure = model.pure_effects();
    if (static_cast<int>(pure.size()) > max_pure_effects)
        throw TooLargeError("pure-measurement enumeration: too many pure effects");

    // Candidates exclude the zero effect.
    std::vector<int> candidates;
    const RatVec zero = RatVec::Zero(model.dim());
    for (int i = 0; i < static_cast<int>(pure.size()); ++i)
    {
        if (!vec_equal(pure[static_cast<std::size_t>(i)], zero))
            candidates.push_back(i);
    }

    const std::vector<RatVec>& verts = model.omega().vertices();
    std::vector<Rational> target_values;
    target_values.reserve(verts.size());
    for (const RatVec& w : verts)
        target_values.push_back(target.dot(w));

    std::vector<std::vector<int>> found;
    std::vector<int> chosen;
    std::vector<Rational> partial(verts.size(), Rational(0));
    RatVec sum = RatVec::Zero(model.dim());

    const std::function<void(std::size_t)> dfs = [&](std::size_t idx) {
        if (idx == candidates.size())
        {
            if (!chosen.empty() && vec_equal(sum, target))
                found.push_back(chosen);
            return;
        }
        // Prune: every remaining effect is nonnegative on each state vertex,
        // so an overshoot can never recover.
        for (std::size_t v = 0; v < verts.size(); ++v)
        {
            if (partial[v] > target_values[v])
                return;
        }
        // Skip candidate idx.
        dfs(idx + 1);
        // Take candidate idx.
        const int effect_index = candidates[idx];
        const RatVec& f = pure[static_cast<std::size_t>(effect_index)];
        chosen.push_back(effect_index);
        sum += f;
        for (std::size_t v = 0; v < verts.size(); ++v)
            partial[v] += f.dot(verts[v]);
        dfs(idx + 1);
        chosen.pop_back();
        sum -= f;
        for (std::size_t v = 0; v < verts.size(); ++v)
            partial[v] -= f.dot(verts[v]);
    };
    dfs(0);

    std::sort(found.begin(), found.end());
    return found;
}

std::vector<Measurement> enumerate_pure_measurements(const Model& model, int max_pure_effects)
{
    std::vector<Measurement> out;
    for (const std::vector<int>& subset : pure_subsets_summing_to(model, model.unit(), max_pure_effects))
    {
        Measurement meas;
        for (int i : subset)
            meas.effects.push_back(model.pure_effects()[static_cast<std::size_t>(i)]);
        out.push_back(std::move(meas));
    }
    return out;
}

bool is_measurement(const Model& model, const std::vector<Effect>& effects)
{
    if (effects.empty())
        return false;
    RatVec sum = RatVec::Zero(model.dim());
    const RatVec zero = RatVec::Zero(model.dim());
    for (const Effect& f : effects)
    {
        if (!model.is_effect(f) || vec_equal(f, zero))
            return false;
        sum += f;
    }
    return vec_equal(sum, model.unit());
}

}  // namespace gptlab
