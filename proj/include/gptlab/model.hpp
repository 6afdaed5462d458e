#ifndef GPTLAB_MODEL_HPP
#define GPTLAB_MODEL_HPP

#include <optional>
#include <vector>

#include "gptlab/polytope.hpp"
#include "gptlab/rational.hpp"

namespace gptlab {

/** A covector on the state space; f(omega) is the outcome probability. */
using Effect = RatVec;

/** A finite list of nonzero effects summing exactly to the order unit. */
struct Measurement
{
    std::vector<Effect> effects;
};

/**
 * An abstract state space in the canonical embedding: the normalized states
 * form a polytope whose vertices all have last coordinate 1, the positive
 * cone is the cone over that polytope, and the order unit is the
 * last-coordinate covector. The vertex span is the full ambient space.
 */
class StateSpace
{
  public:
    /**
     * Canonical embedding of a base polytope: the base is re-expressed in
     * coordinates of its affine hull and lifted to height 1, giving
     * ambient dimension dim(base) + 1.
     */
    static StateSpace from_base_polytope(const VPolytope& base);

    /**
     * Wrap vertices already at height 1 in R^m. Validates u(omega) = 1 on
     * every vertex and that the cone is generating (dim(omega) = m - 1);
     * throws UsageError naming the violated invariant otherwise.
     */
    static StateSpace from_omega_vertices(int ambient_dim, const std::vector<RatVec>& vertices);

    int dim() const { return omega_.ambient_dim(); }
    const VPolytope& omega() const { return omega_; }

    /** The order unit: the last-coordinate covector. */
    RatVec unit() const;

    bool operator==(const StateSpace& other) const = default;

  private:
    explicit StateSpace(VPolytope omega) : omega_(std::move(omega)) {}

    VPolytope omega_;
};

/** Classical theory with d pure states: the (d-1)-simplex, canonically embedded. */
StateSpace classical_model(int d);

/**
 * Regular n-gon model at height 1, coordinates produced by approx_rational
 * at tolerance eps. Throws ApproximationCollapseError unless the result has
 * exactly n vertices spanning dimension 2.
 */
StateSpace polygon_model(int n, const Rational& eps);

/**
 * Exact rational stand-in for the n = 4 polygon model: the diamond with
 * vertices (+-1, 0, 1), (0, +-1, 1). Affinely equivalent to the square, so
 * every combinatorial and postulate-level verdict transfers.
 */
StateSpace square_surrogate();

/**
 * The set of effects [0, u] as a polytope in the dual space, with the
 * positions of the distinguished vertices 0 and u.
 */
struct EffectPolytope
{
    VPolytope dual;
    int zero_index = -1;
    int unit_index = -1;

    const std::vector<RatVec>& pure_effects() const { return dual.vertices(); }
};

/**
 * Vertex enumeration of { f : 0 <= f(omega_i) <= 1 } by intersecting
 * m-subsets of the bounding hyperplanes.
 */
EffectPolytope effect_polytope(const StateSpace& space);

/**
 * A state space bundled with the derived geometry every postulate check
 * needs: the effect polytope and the facets of omega, computed once.
 */
class Model
{
  public:
    explicit Model(StateSpace space);

    const StateSpace& space() const { return space_; }
    const VPolytope& omega() const { return space_.omega(); }
    int dim() const { return space_.dim(); }
    RatVec unit() const { return space_.unit(); }
    const EffectPolytope& effects() const { return effects_; }
    const std::vector<RatVec>& pure_effects() const { return effects_.dual.vertices(); }
    /** Facets of omega; empty for a single-state space. */
    const std::vector<Face>& facets() const { return facets_; }

    bool is_effect(const Effect& f) const;
    bool is_pure_effect(const Effect& f) const;

  private:
    StateSpace space_;
    EffectPolytope effects_;
    std::vector<Face> facets_;
};

/** Exact evaluation f(omega); throws UsageError on a dimension mismatch. */
Rational evaluate(const Effect& f, const RatVec& omega);

/** u - f, validated to be applied to an effect only. */
Effect complement(const Model& model, const Effect& f);

/**
 * The face associated with f: the vertex set where f attains 1, verified
 * as a face with its supporting witness. nullopt when no vertex attains 1
 * (possible only for impure effects).
 */
std::optional<Face> face_of_effect(const Model& model, const Effect& f);

/** Face where f vanishes, i.e. the face associated with u - f; f must be pure. */
std::optional<Face> opposite_face(const Model& model, const Effect& f);

/**
 * The pure effect whose associated face is exactly the given facet, built
 * from the facet's supporting half-space and verified against the pure
 * effect list.
 */
Effect facet_effect(const Model& model, const Face& facet);

struct EffectForFace
{
    enum class Kind
    {
        Pure,
        OnlyImpure,
        NoEffect
    };
    Kind kind = Kind::NoEffect;
    Effect effect;
};

/**
 * Searches for an effect attaining 1 exactly on the face F (maximizing the
 * minimum gap on the complement, exactly); reports whether a pure effect
 * achieves it.
 */
EffectForFace find_effect_for_face(const Model& model, const Face& F);

/** Default cap for pure-measurement enumeration. */
inline constexpr int kMaxPureEffectsForEnumeration = 24;

/**
 * All subsets of the nonzero pure effects summing exactly to u, by
 * depth-first search with partial-sum pruning. Throws TooLargeError beyond
 * the cap.
 */
std::vector<Measurement> enumerate_pure_measurements(const Model& model,
                                                     int max_pure_effects = kMaxPureEffectsForEnumeration);

/**
 * All subsets of the nonzero pure effects summing exactly to the target
 * covector (the residual completion search used by the subspace checker).
 */
std::vector<std::vector<int>> pure_subsets_summing_to(const Model& model, const RatVec& target,
                                                      int max_pure_effects = kMaxPureEffectsForEnumeration);

/** Is {effects} a valid measurement on the model? */
bool is_measurement(const Model& model, const std::vector<Effect>& effects);

}  // namespace gptlab

#endif  // GPTLAB_MODEL_HPP
