#ifndef GPTLAB_POSTULATES_HPP
#define GPTLAB_POSTULATES_HPP

#include <optional>
#include <vector>

#include "gptlab/lp.hpp"
#include "gptlab/model.hpp"

namespace gptlab {

/**
 * Verdict of a perfect-distinguishability question for state sets
 * Lambda_1, ..., Lambda_n: either a measurement with e_i = 1 on Lambda_i and
 * e_i = 0 on every other set, exactly, or a Farkas certificate that no such
 * measurement exists.
 */
struct DistinguishabilityResult
{
    bool distinguishable = false;
    Measurement witness;
    FarkasCertificate certificate;
};

/**
 * One LP over n x m covector coefficients: effect-interval membership on all
 * state vertices, exact sum to u, and the delta pattern on the given states.
 * States must be exact points of Omega (vertices or rational convex
 * combinations). Throws UsageError on an empty group.
 */
DistinguishabilityResult perfectly_distinguishable(const Model& model,
                                                   const std::vector<std::vector<RatVec>>& groups);

/**
 * The LP behind perfectly_distinguishable, exposed so negative verdicts can
 * be re-contracted against the exact constraint rows.
 */
LinearProgram distinguishability_lp(const Model& model,
                                    const std::vector<std::vector<RatVec>>& groups);

/** Re-evaluates a witness measurement against the delta pattern. */
bool distinguishability_witness_valid(const Model& model,
                                      const std::vector<std::vector<RatVec>>& groups,
                                      const Measurement& witness);

/** Default vertex-count cap for subset searches. */
inline constexpr int kMaxVerticesForSearch = 12;

struct MaxDistinguishableResult
{
    int count = 0;
    std::vector<int> vertex_indices;
    Measurement witness;
};

/**
 * The largest k such that some k vertices of Omega are perfectly
 * distinguishable, searched descending from min(m, vertex count) in
 * lexicographic subset order. Throws TooLargeError above the vertex cap.
 */
MaxDistinguishableResult max_distinguishable_count(const Model& model,
                                                   int max_vertices = kMaxVerticesForSearch);

/**
 * The state discrimination check: premises (Lambda1 | Lambda2) and
 * (Lambda3 | Lambda4) distinguishable with Lambda3, Lambda4 inside Lambda2;
 * conclusion (Lambda1 | Lambda3 | Lambda4) distinguishable.
 */
struct DiscriminationCheck
{
    enum class Kind
    {
        Satisfied,
        PremiseFails,
        Violation
    };
    Kind kind = Kind::Satisfied;
    /** 1 or 2 when a premise fails. */
    int failing_premise = 0;
    Measurement premise1_witness;
    Measurement premise2_witness;
    /** Certificate that the conclusion fails, for violations. */
    FarkasCertificate conclusion_certificate;
};

DiscriminationCheck check_discrimination(const Model& model, const std::vector<RatVec>& lambda1,
                                         const std::vector<RatVec>& lambda2,
                                         const std::vector<RatVec>& lambda3,
                                         const std::vector<RatVec>& lambda4);

struct DiscriminationViolation
{
    /** Vertex-index sets, referring to the canonical vertex order. */
    std::vector<int> lambda1, lambda2, lambda3, lambda4;
    Measurement premise1_witness;
    Measurement premise2_witness;
    FarkasCertificate conclusion_certificate;
};

/**
 * Exhaustive search for a discrimination violation: Lambda2 runs over the
 * vertex sets of proper faces, Lambda1 over faces disjoint from and
 * distinguishable from Lambda2, and (Lambda3, Lambda4) over distinguishable
 * face pairs inside Lambda2, all in lexicographic order. Returns the first
 * violation or nullopt. Throws TooLargeError above 10 vertices.
 */
std::optional<DiscriminationViolation> find_discrimination_violation(const Model& model,
                                                                     int max_vertices = 10);

/**
 * The state space induced by a face, canonically embedded, together with
 * the linear embedding back into the parent space and the vertex
 * correspondence.
 */
struct InducedSubspace
{
    StateSpace space;
    /** parent point = embedding * subspace point; maps u_sub to u|span(F). */
    RatMat embedding;
    /** parent_vertex_of[i] = parent index of subspace vertex i. */
    std::vector<int> parent_vertex_of;
};

/** Throws UsageError when F is empty. */
InducedSubspace induced_subspace(const Model& model, const Face& F);

/** Outcome of extending one binary pure measurement of the subspace. */
struct SubspaceMeasurementOutcome
{
    enum class Kind
    {
        Extended,
        NoExtendingPureEffect,
        NoFaceMatch,
        NoCompletion
    };
    Kind kind = Kind::NoCompletion;
    /** First effect of the binary measurement, in subspace coordinates. */
    Effect sub_effect;
    /** The extending pure measurement on the parent, when found. */
    Measurement extension;
};

struct SubspaceVerdict
{
    /** False when the face is not associated with any pure effect. */
    bool is_associated_face = false;
    /** Condition (a): ext(Omega_S) inside ext(Omega_A); holds for faces. */
    bool condition_a = false;
    std::vector<SubspaceMeasurementOutcome> condition_b;

    bool all_pass() const
    {
        if (!is_associated_face || !condition_a)
            return false;
        for (const SubspaceMeasurementOutcome& o : condition_b)
        {
            if (o.kind != SubspaceMeasurementOutcome::Kind::Extended)
                return false;
        }
        return true;
    }
};

/**
 * Checks the physical-subspace conditions for the face F: condition (a),
 * and for every binary pure measurement {e, u_S - e} of the induced space a
 * parent pure effect restricting exactly to e with matching associated
 * face, completed to a pure measurement on the parent.
 */
SubspaceVerdict check_physical_subspace(const Model& model, const Face& F,
                                        int max_pure_effects = kMaxPureEffectsForEnumeration);

/**
 * The face of possible post-measurement states of a pure effect: alias of
 * face_of_effect under the repeatability reading.
 */
std::optional<Face> repeatability_face(const Model& model, const Effect& f);

/** Per-facet outcome of the preservation (certain-outcome) check. */
struct PreservationFacetOutcome
{
    enum class Kind
    {
        Holds,
        DimensionClash,
        NonPositive,
        OppositeFaceEmpty
    };
    Kind kind = Kind::OppositeFaceEmpty;
    Face facet;
    Effect effect;
    /** Holds: the map fixing span(F) and annihilating span(opposite face). */
    RatMat map;
    /** DimensionClash: the two span dimensions. */
    int span_face_dim = 0;
    int span_opposite_dim = 0;
    /** NonPositive: the vertex whose image leaves the cone, its image, and
     * the violated homogenized facet inequality (normal.x <= 0). */
    int witness_vertex = -1;
    RatVec witness_image;
    RatVec violated_inequality;
};

struct PreservationVerdict
{
    bool holds = false;
    std::vector<PreservationFacetOutcome> per_facet;
};

/**
 * The preservation check at one facet F: with f the facet's pure effect and
 * the opposite face its annihilator set, builds the unique linear map that
 * is the identity on span(F) and zero on span(opposite face), then verifies
 * every state vertex maps into the cone with u(T omega) <= 1.
 */
PreservationFacetOutcome preservation_check(const Model& model, const Face& facet);

/** preservation_check over every facet; holds iff every facet holds. */
PreservationVerdict check_preservation_postulate(const Model& model);

/** The three equivalent classicality checks, cross-validated. */
struct ClassicalityReport
{
    bool classical = false;
    bool simplex = false;
    bool uniformly_pyramidal = false;
    bool preservation_holds = false;
};

/**
 * Computes is_simplex, is_uniformly_pyramidal and the preservation verdict,
 * asserts the three agree, and returns the common answer. Disagreement
 * throws InternalInconsistencyError: it would be a bug, never a result.
 */
ClassicalityReport is_classical(const Model& model);

/** One level of the face-chain construction behind the main theorem scan. */
struct ScanLevel
{
    /** Face of the chain at this level (parent vertex indices). */
    std::vector<int> chain_face;
    /** Opposite face within the previous level's subspace, parent indices. */
    std::vector<int> opposite_face;
    bool family_distinguishable = false;
};

struct TheoremScanResult
{
    bool succeeded = false;
    std::vector<ScanLevel> levels;
    /** On success: the perfectly distinguishable states, one per family set. */
    std::vector<int> distinguished_vertices;
    Measurement witness;
    /** On failure: the first level whose family is not distinguishable. */
    int failed_level = -1;
    FarkasCertificate failure_certificate;
};

/**
 * Executes the classicality-theorem pipeline: a facet chain from Omega down
 * to a pure state, the facet effect and opposite face at every level inside
 * the induced subspace, and a distinguishability check of the accumulated
 * family of faces. Succeeds producing dim(A) perfectly distinguishable
 * states exactly when the construction goes through. Throws TooLargeError
 * above 10 vertices.
 */
TheoremScanResult theorem_result1_scan(const Model& model, int max_vertices = 10);

}  // namespace gptlab

#endif  // GPTLAB_POSTULATES_HPP
