#include "gptlab/postulates.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "gptlab/errors.hpp"
#include "gptlab/linalg.hpp"

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

bool is_vertex_of(const Model& model, const RatVec& state)
{
    for (const RatVec& v : model.omega().vertices())
    {
        if (vec_equal(v, state))
            return true;
    }
    return false;
}

void validate_states(const Model& model, const std::vector<std::vector<RatVec>>& groups)
{
    for (const std::vector<RatVec>& group : groups)
    {
        if (group.empty())
            throw UsageError("perfectly_distinguishable: empty state set");
        for (const RatVec& state : group)
        {
            if (state.size() != model.dim())
                throw UsageError("perfectly_distinguishable: state of wrong dimension");
            if (is_vertex_of(model, state))
                continue;
            if (!contains(model.omega(), state).inside)
                throw UsageError("perfectly_distinguishable: state outside Omega");
        }
    }
}

std::vector<RatVec> states_of(const Model& model, const std::vector<int>& indices)
{
    std::vector<RatVec> out;
    out.reserve(indices.size());
    for (int i : indices)
        out.push_back(model.omega().vertex(i));
    return out;
}

// Deterministic column-space basis: keeps each vector that increases the
// rank, scanning in the given order.
RatMat column_space_basis(const std::vector<RatVec>& vectors, Eigen::Index m)
{
    RatMat basis(m, 0);
    int current_rank = 0;
    for (const RatVec& v : vectors)
    {
        RatMat candidate(m, basis.cols() + 1);
        candidate.leftCols(basis.cols()) = basis;
        candidate.col(basis.cols()) = v;
        const int r = rank(candidate);
        if (r > current_rank)
        {
            basis = std::move(candidate);
            current_rank = r;
        }
    }
    return basis;
}

}  // namespace

LinearProgram distinguishability_lp(const Model& model,
                                    const std::vector<std::vector<RatVec>>& groups)
{
    const int n = static_cast<int>(groups.size());
    const int m = model.dim();
    LinearProgram lp(n * m);

    const auto effect_row = [&](int i, const RatVec& point) {
        RatVec row = RatVec::Zero(n * m);
        row.segment(i * m, m) = point;
        return row;
    };

    // Effect-interval membership on every state vertex.
    for (int i = 0; i < n; ++i)
    {
        for (const RatVec& v : model.omega().vertices())
        {
            lp.add_ge(effect_row(i, v), 0);
            lp.add_le(effect_row(i, v), 1);
        }
    }
    // Exact covector identity sum_i e_i = u.
    const RatVec u = model.unit();
    for (int j = 0; j < m; ++j)
    {
        RatVec row = RatVec::Zero(n * m);
        for (int i = 0; i < n; ++i)
            row(i * m + j) = 1;
        lp.add_eq(std::move(row), u(j));
    }
    // Delta pattern.
    for (int i = 0; i < n; ++i)
    {
        for (int j = 0; j < n; ++j)
        {
            for (const RatVec& state : groups[static_cast<std::size_t>(j)])
                lp.add_eq(effect_row(i, state), i == j ? 1 : 0);
        }
    }
    return lp;
}

DistinguishabilityResult perfectly_distinguishable(const Model& model,
                                                   const std::vector<std::vector<RatVec>>& groups)
{
    if (groups.empty())
        throw UsageError("perfectly_distinguishable: no state sets given");
    validate_states(model, groups);

    const int n = static_cast<int>(groups.size());
    const int m = model.dim();
    const LinearProgram lp = distinguishability_lp(model, groups);
    const LpResult result = lp_feasible(lp);
    DistinguishabilityResult out;
    if (!result.feasible)
    {
        out.distinguishable = false;
        out.certificate = result.certificate;
        return out;
    }
    out.distinguishable = true;
    for (int i = 0; i < n; ++i)
        out.witness.effects.push_back(result.witness.segment(i * m, m));
    if (!is_measurement(model, out.witness.effects) ||
        !distinguishability_witness_valid(model, groups, out.witness))
        throw InternalInconsistencyError("perfectly_distinguishable: witness failed re-evaluation");
    return out;
}

bool distinguishability_witness_valid(const Model& model,
                                      const std::vector<std::vector<RatVec>>& groups,
                                      const Measurement& witness)
{
    if (witness.effects.size() != groups.size())
        return false;
    if (!is_measurement(model, witness.effects))
        return false;
    for (std::size_t i = 0; i < groups.size(); ++i)
    {
        for (std::size_t j = 0; j < groups.size(); ++j)
        {
            const Rational expected = (i == j) ? 1 : 0;
            for (const RatVec& state : groups[j])
            {
                if (witness.effects[i].dot(state) != expected)
                    return false;
            }
        }
    }
    return true;
}

MaxDistinguishableResult max_distinguishable_count(const Model& model, int max_vertices)
{
    const int nv = model.omega().vertex_count();
    if (nv > max_vertices)
        throw TooLargeError("max_distinguishable_count: vertex count above the search limit");
    const int upper = std::min(nv, model.dim());

    for (int k = upper; k >= 1; --k)
    {
        std::vector<int> subset;
        MaxDistinguishableResult found;
        bool done = false;
        const std::function<void(int)> recurse = [&](int start) {
            if (done)
                return;
            if (static_cast<int>(subset.size()) == k)
            {
                std::vector<std::vector<RatVec>> groups;
                for (int i : subset)
                    groups.push_back({model.omega().vertex(i)});
                const DistinguishabilityResult result = perfectly_distinguishable(model, groups);
                if (result.distinguishable)
                {
                    found.count = k;
                    found.vertex_indices = subset;
                    found.witness = result.witness;
                    done = true;
                }
                return;
            }
            for (int i = start; i < nv && !done; ++i)
            {
                subset.push_back(i);
                recurse(i + 1);
                subset.pop_back();
            }
        };
        recurse(0);
        if (done)
            return found;
    }
    throw InternalInconsistencyError("max_distinguishable_count: even a single state failed");
}

namespace {

bool state_in_set(const RatVec& state, const std::vector<RatVec>& set)
{
    for (const RatVec& s : set)
    {
        if (vec_equal(s, state))
            return true;
    }
    return false;
}

}  // namespace

DiscriminationCheck check_discrimination(const Model& model, const std::vector<RatVec>& lambda1,
                                         const std::vector<RatVec>& lambda2,
                                         const std::vector<RatVec>& lambda3,
                                         const std::vector<RatVec>& lambda4)
{
    for (const RatVec& s : lambda3)
    {
        if (!state_in_set(s, lambda2))
            throw UsageError("check_discrimination: Lambda3 is not a subset of Lambda2");
    }
    for (const RatVec& s : lambda4)
    {
        if (!state_in_set(s, lambda2))
            throw UsageError("check_discrimination: Lambda4 is not a subset of Lambda2");
    }

    DiscriminationCheck out;
    const DistinguishabilityResult premise1 = perfectly_distinguishable(model, {lambda1, lambda2});
    if (!premise1.distinguishable)
    {
        out.kind = DiscriminationCheck::Kind::PremiseFails;
        out.failing_premise = 1;
        return out;
    }
    out.premise1_witness = premise1.witness;
    const DistinguishabilityResult premise2 = perfectly_distinguishable(model, {lambda3, lambda4});
    if (!premise2.distinguishable)
    {
        out.kind = DiscriminationCheck::Kind::PremiseFails;
        out.failing_premise = 2;
        return out;
    }
    out.premise2_witness = premise2.witness;
    const DistinguishabilityResult conclusion =
        perfectly_distinguishable(model, {lambda1, lambda3, lambda4});
    if (conclusion.distinguishable)
    {
        out.kind = DiscriminationCheck::Kind::Satisfied;
        return out;
    }
    out.kind = DiscriminationCheck::Kind::Violation;
    out.conclusion_certificate = conclusion.certificate;
    return out;
}

std::optional<DiscriminationViolation> find_discrimination_violation(const Model& model,
                                                                     int max_vertices)
{
    if (model.omega().vertex_count() > max_vertices)
        throw TooLargeError("find_discrimination_violation: vertex count above the search limit");

    const FaceLattice lattice = face_lattice(model.omega());
    std::vector<std::vector<int>> faces;
    for (int k = 0; k < lattice.dim; ++k)
    {
        for (const Face& f : lattice.by_dim[static_cast<std::size_t>(k)])
            faces.push_back(f.vertex_indices);
    }
    std::sort(faces.begin(), faces.end());

    const auto disjoint = [](const std::vector<int>& a, const std::vector<int>& b) {
        std::vector<int> inter;
        std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(inter));
        return inter.empty();
    };
    const auto subset_of = [](const std::vector<int>& a, const std::vector<int>& b) {
        return std::includes(b.begin(), b.end(), a.begin(), a.end());
    };

    for (const std::vector<int>& lambda2 : faces)
    {
        for (const std::vector<int>& lambda1 : faces)
        {
            if (!disjoint(lambda1, lambda2))
                continue;
            const DistinguishabilityResult premise1 = perfectly_distinguishable(
                model, {states_of(model, lambda1), states_of(model, lambda2)});
            if (!premise1.distinguishable)
                continue;
            for (const std::vector<int>& lambda3 : faces)
            {
                if (!subset_of(lambda3, lambda2))
                    continue;
                for (const std::vector<int>& lambda4 : faces)
                {
                    if (!subset_of(lambda4, lambda2) || !disjoint(lambda3, lambda4))
                        continue;
                    const DistinguishabilityResult premise2 = perfectly_distinguishable(
                        model, {states_of(model, lambda3), states_of(model, lambda4)});
                    if (!premise2.distinguishable)
                        continue;
                    const DistinguishabilityResult conclusion = perfectly_distinguishable(
                        model, {states_of(model, lambda1), states_of(model, lambda3),
                                states_of(model, lambda4)});
                    if (!conclusion.distinguishable)
                    {
                        DiscriminationViolation violation;
                        violation.lambda1 = lambda1;
                        violation.lambda2 = lambda2;
                        violation.lambda3 = lambda3;
                        violation.lambda4 = lambda4;
                        violation.premise1_witness = premise1.witness;
                        violation.premise2_witness = premise2.witness;
                        violation.conclusion_certificate = conclusion.certificate;
                        return violation;
                    }
                }
            }
        }
    }
    return std::nullopt;
}

InducedSubspace induced_subspace(const Model& model, const Face& F)
{
    if (F.vertex_indices.empty())
        throw UsageError("induced_subspace: empty face");
    std::vector<int> indices = F.vertex_indices;
    std::sort(indices.begin(), indices.end());

    std::vector<RatVec> points;
    points.reserve(indices.size());
    for (int i : indices)
        points.push_back(model.omega().vertex(i));

    const AffineChart chart = affine_chart(points);
    const Eigen::Index d = chart.basis.cols();
    std::vector<RatVec> lifted;
    lifted.reserve(points.size());
    for (const RatVec& p : points)
    {
        RatVec z(d + 1);
        z.head(d) = chart.to_local(p);
        z(d) = 1;
        lifted.push_back(std::move(z));
    }

    InducedSubspace out{StateSpace::from_omega_vertices(static_cast<int>(d) + 1, lifted),
                        RatMat(model.dim(), d + 1),
                        {}};
    out.embedding.leftCols(d) = chart.basis;
    out.embedding.col(d) = chart.origin;

    // The embedding carries u_sub to u restricted to span(F).
    const RatVec u = model.unit();
    for (Eigen::Index j = 0; j < d; ++j)
    {
        if (u.dot(chart.basis.col(j)) != 0)
            throw InternalInconsistencyError("induced_subspace: basis direction leaves the u = 1 hyperplane");
    }
    if (u.dot(chart.origin) != 1)
        throw InternalInconsistencyError("induced_subspace: origin not at height 1");

    // Vertex correspondence after canonical re-sorting.
    for (const RatVec& z : out.space.omega().vertices())
    {
        const RatVec parent_point = out.embedding * z;
        int found = -1;
        for (int i : indices)
        {
            if (vec_equal(model.omega().vertex(i), parent_point))
            {
                found = i;
                break;
            }
        }
        if (found < 0)
            throw InternalInconsistencyError("induced_subspace: subspace vertex is not a parent vertex");
        out.parent_vertex_of.push_back(found);
    }
    return out;
}

SubspaceVerdict check_physical_subspace(const Model& model, const Face& F, int max_pure_effects)
{
    SubspaceVerdict verdict;
    const EffectForFace associated = find_effect_for_face(model, F);
    verdict.is_associated_face = (associated.kind == EffectForFace::Kind::Pure);
    if (!verdict.is_associated_face)
        return verdict;

    const InducedSubspace sub = induced_subspace(model, F);
    // Condition (a): every extreme point of the subspace is an extreme point
    // of the parent; induced_subspace verified the exact correspondence.
    verdict.condition_a = true;

    const Model sub_model{sub.space};
    const RatVec u_sub = sub.space.unit();
    const RatVec u = model.unit();
    const RatVec zero_sub = RatVec::Zero(sub.space.dim());

    const auto sub_face_to_parent = [&](const Face& face) {
        std::vector<int> parent;
        parent.reserve(face.vertex_indices.size());
        for (int k : face.vertex_indices)
            parent.push_back(sub.parent_vertex_of[static_cast<std::size_t>(k)]);
        std::sort(parent.begin(), parent.end());
        return parent;
    };

    for (const RatVec& e : sub_model.pure_effects())
    {
        if (vec_equal(e, zero_sub) || vec_equal(e, u_sub))
            continue;
        const RatVec e_bar = u_sub - e;
        if (!sub_model.is_pure_effect(e_bar))
            throw InternalInconsistencyError("check_physical_subspace: complement of a pure effect is not pure");

        SubspaceMeasurementOutcome outcome;
        outcome.sub_effect = e;

        // Parent pure effects restricting exactly to e on span(F).
        std::vector<RatVec> restricting;
        for (const RatVec& g : model.pure_effects())
        {
            if (vec_equal(sub.embedding.transpose() * g, e))
                restricting.push_back(g);
        }
        if (restricting.empty())
        {
            outcome.kind = SubspaceMeasurementOutcome::Kind::NoExtendingPureEffect;
            verdict.condition_b.push_back(std::move(outcome));
            continue;
        }

        // Condition (b)(ii): matching associated faces.
        const auto face_e = face_of_effect(sub_model, e);
        if (!face_e.has_value())
            throw InternalInconsistencyError("check_physical_subspace: pure subspace effect with empty face");
        const std::vector<int> face_e_parent = sub_face_to_parent(*face_e);
        std::vector<RatVec> matched;
        for (const RatVec& g : restricting)
        {
            const auto face_g = face_of_effect(model, g);
            if (face_g.has_value() && face_g->vertex_indices == face_e_parent)
                matched.push_back(g);
        }
        if (matched.empty())
        {
            outcome.kind = SubspaceMeasurementOutcome::Kind::NoFaceMatch;
            verdict.condition_b.push_back(std::move(outcome));
            continue;
        }

        // Completion: parent pure effects summing to u - g.
        outcome.kind = SubspaceMeasurementOutcome::Kind::NoCompletion;
        for (const RatVec& g : matched)
        {
            const RatVec residual = u - g;
            const auto completions = pure_subsets_summing_to(model, residual, max_pure_effects);
            if (completions.empty())
                continue;
            Measurement extension;
            extension.effects.push_back(g);
            for (int idx : completions.front())
                extension.effects.push_back(model.pure_effects()[static_cast<std::size_t>(idx)]);
            if (!is_measurement(model, extension.effects))
                throw InternalInconsistencyError("check_physical_subspace: completion is not a measurement");
            outcome.kind = SubspaceMeasurementOutcome::Kind::Extended;
            outcome.extension = std::move(extension);
            break;
        }
        verdict.condition_b.push_back(std::move(outcome));
    }
    return verdict;
}

std::optional<Face> repeatability_face(const Model& model, const Effect& f)
{
    if (!model.is_pure_effect(f))
        throw UsageError("repeatability_face: argument must be a pure effect");
    return face_of_effect(model, f);
}

PreservationFacetOutcome preservation_check(const Model& model, const Face& facet)
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
        throw UsageError("preservation_check: argument is not a facet");

    PreservationFacetOutcome out;
    out.facet = *match;
    out.effect = facet_effect(model, *match);

    const RatVec u = model.unit();
    const auto opposite = face_of_effect(model, u - out.effect);
    if (!opposite.has_value())
    {
        out.kind = PreservationFacetOutcome::Kind::OppositeFaceEmpty;
        return out;
    }

    const int m = model.dim();
    const RatMat span_face = column_space_basis(states_of(model, indices), m);
    const RatMat span_opp = column_space_basis(states_of(model, opposite->vertex_indices), m);
    out.span_face_dim = static_cast<int>(span_face.cols());
    out.span_opposite_dim = static_cast<int>(span_opp.cols());

    RatMat joint(m, span_face.cols() + span_opp.cols());
    joint.leftCols(span_face.cols()) = span_face;
    joint.rightCols(span_opp.cols()) = span_opp;
    if (out.span_face_dim + out.span_opposite_dim != m || rank(joint) != m)
    {
        out.kind = PreservationFacetOutcome::Kind::DimensionClash;
        return out;
    }

    // T = identity on span(F), zero on span(opposite face).
    const std::optional<RatMat> inv = inverse(joint);
    if (!inv.has_value())
        throw InternalInconsistencyError("preservation_check: direct-sum basis not invertible");
    RatMat image(m, m);
    image.leftCols(span_face.cols()) = span_face;
    image.rightCols(span_opp.cols()) = RatMat::Zero(m, span_opp.cols());
    const RatMat T = image * (*inv);

    for (int i : indices)
    {
        if (!vec_equal(T * model.omega().vertex(i), model.omega().vertex(i)))
            throw InternalInconsistencyError("preservation_check: map does not fix the facet");
    }
    for (int i : opposite->vertex_indices)
    {
        if (!vec_equal(T * model.omega().vertex(i), RatVec::Zero(m)))
            throw InternalInconsistencyError("preservation_check: map does not annihilate the opposite face");
    }

    // Homogenized cone inequalities: u >= 0 and, per facet (n, c) of Omega,
    // (n - c u).x <= 0.
    std::vector<RatVec> cone_rows;
    cone_rows.push_back(-u);
    for (const Face& f : model.facets())
        cone_rows.push_back(f.supporting->normal - f.supporting->offset * u);

    for (int i = 0; i < model.omega().vertex_count(); ++i)
    {
        const RatVec y = T * model.omega().vertex(i);
        for (const RatVec& row : cone_rows)
        {
            if (row.dot(y) > 0)
            {
                out.kind = PreservationFacetOutcome::Kind::NonPositive;
                out.witness_vertex = i;
                out.witness_image = y;
                out.violated_inequality = row;
                return out;
            }
        }
        if (u.dot(y) > 1)
        {
            // Norm increase: report with the unit covector as the violated
            // row (u.y <= 1).
            out.kind = PreservationFacetOutcome::Kind::NonPositive;
            out.witness_vertex = i;
            out.witness_image = y;
            out.violated_inequality = u;
            return out;
        }
    }
    out.kind = PreservationFacetOutcome::Kind::Holds;
    out.map = T;
    return out;
}

PreservationVerdict check_preservation_postulate(const Model& model)
{
    PreservationVerdict verdict;
    verdict.holds = true;
    for (const Face& facet : model.facets())
    {
        PreservationFacetOutcome outcome = preservation_check(model, facet);
        if (outcome.kind != PreservationFacetOutcome::Kind::Holds)
            verdict.holds = false;
        verdict.per_facet.push_back(std::move(outcome));
    }
    return verdict;
}

ClassicalityReport is_classical(const Model& model)
{
    ClassicalityReport report;
    report.simplex = is_simplex(model.omega());
    if (dim(model.omega()) >= 1)
        report.uniformly_pyramidal = is_uniformly_pyramidal(model.omega()).uniformly_pyramidal;
    else
        report.uniformly_pyramidal = true;  // no facets, vacuous
    report.preservation_holds = check_preservation_postulate(model).holds;
    if (report.simplex != report.uniformly_pyramidal ||
        report.simplex != report.preservation_holds)
        throw InternalInconsistencyError(
            "is_classical: simplex/uniformly-pyramidal/preservation cross-check disagrees");
    report.classical = report.simplex;
    return report;
}

TheoremScanResult theorem_result1_scan(const Model& model, int max_vertices)
{
    const int nv = model.omega().vertex_count();
    if (nv > max_vertices)
        throw TooLargeError("theorem_result1_scan: vertex count above the search limit");

    TheoremScanResult result;
    const int d = dim(model.omega());
    if (d == 0)
    {
        result.succeeded = true;
        result.distinguished_vertices = {0};
        result.witness.effects.push_back(model.unit());
        return result;
    }

    const std::vector<Face> chain = facet_chain(model.omega(), Face{{0}, std::nullopt});

    std::vector<std::vector<int>> family;  // opposite faces accumulated so far
    for (std::size_t level = 1; level < chain.size(); ++level)
    {
        const Face& parent_face = chain[level - 1];
        const Face& child_face = chain[level];

        ScanLevel scan;
        scan.chain_face = child_face.vertex_indices;

        std::vector<int> opposite_parent;
        if (level == 1)
        {
            const Effect f = facet_effect(model, child_face);
            const auto opp = face_of_effect(model, model.unit() - f);
            if (!opp.has_value())
                throw InternalInconsistencyError("theorem_result1_scan: empty opposite face at the top level");
            opposite_parent = opp->vertex_indices;
        }
        else
        {
            const InducedSubspace sub = induced_subspace(model, parent_face);
            const Model sub_model{sub.space};
            // Translate the child facet into subspace vertex indices.
            std::vector<int> sub_indices;
            for (int parent_index : child_face.vertex_indices)
            {
                int found = -1;
                for (std::size_t k = 0; k < sub.parent_vertex_of.size(); ++k)
                {
                    if (sub.parent_vertex_of[k] == parent_index)
                    {
                        found = static_cast<int>(k);
                        break;
                    }
                }
                if (found < 0)
                    throw InternalInconsistencyError("theorem_result1_scan: chain face missing from subspace");
                sub_indices.push_back(found);
            }
            std::sort(sub_indices.begin(), sub_indices.end());
            const Effect f = facet_effect(sub_model, Face{sub_indices, std::nullopt});
            const auto opp = face_of_effect(sub_model, sub.space.unit() - f);
            if (!opp.has_value())
                throw InternalInconsistencyError("theorem_result1_scan: empty opposite face in a subspace");
            for (int k : opp->vertex_indices)
                opposite_parent.push_back(sub.parent_vertex_of[static_cast<std::size_t>(k)]);
            std::sort(opposite_parent.begin(), opposite_parent.end());
        }
        scan.opposite_face = opposite_parent;
        family.push_back(opposite_parent);

        std::vector<std::vector<RatVec>> groups;
        for (const std::vector<int>& face_indices : family)
            groups.push_back(states_of(model, face_indices));
        groups.push_back(states_of(model, child_face.vertex_indices));

        const DistinguishabilityResult dist = perfectly_distinguishable(model, groups);
        scan.family_distinguishable = dist.distinguishable;
        result.levels.push_back(scan);
        if (!dist.distinguishable)
        {
            result.succeeded = false;
            result.failed_level = static_cast<int>(level);
            result.failure_certificate = dist.certificate;
            return result;
        }
        if (level + 1 == chain.size())
            result.witness = dist.witness;
    }

    result.succeeded = true;
    for (const std::vector<int>& face_indices : family)
        result.distinguished_vertices.push_back(face_indices.front());
    result.distinguished_vertices.push_back(chain.back().vertex_indices.front());
    if (!is_simplex(model.omega()))
        throw InternalInconsistencyError(
            "theorem_result1_scan: construction succeeded on a non-simplex");
    return result;
}

}  // namespace gptlab
