#ifndef GPTLAB_POLYTOPE_HPP
#define GPTLAB_POLYTOPE_HPP

#include <optional>
#include <utility>
#include <vector>

#include "gptlab/rational.hpp"

namespace gptlab {

/** The closed half-space { v : normal.v <= offset }. */
struct HalfSpace
{
    RatVec normal;
    Rational offset;

    Rational slack(const RatVec& v) const { return offset - normal.dot(v); }
};

/**
 * A face of a parent polytope, named by the sorted set of parent vertex
 * indices it contains. Proper faces carry a supporting half-space that is
 * tight exactly on the face's vertices; the improper face (all indices)
 * carries none.
 */
struct Face
{
    std::vector<int> vertex_indices;
    std::optional<HalfSpace> supporting;
};

/**
 * A polytope given by its extreme points in canonical form: the vertex list
 * is irredundant and sorted lexicographically, so equality of polytopes is
 * equality of vertex lists.
 */
class VPolytope
{
  public:
    /**
     * Canonicalize a point set: duplicates removed, non-extreme points
     * filtered out by an exact LP per point, result sorted. Throws
     * UsageError on an empty input or mismatched dimensions.
     */
    static VPolytope from_points(int ambient_dim, const std::vector<RatVec>& points);

    /**
     * Wrap points already known (by construction) to be distinct extreme
     * points; they are only sorted. Used where extremality is a theorem,
     * e.g. basic feasible solutions of a bounded H-polytope.
     */
    static VPolytope from_extreme_points(int ambient_dim, std::vector<RatVec> points);

    int ambient_dim() const { return ambient_dim_; }
    const std::vector<RatVec>& vertices() const { return vertices_; }
    int vertex_count() const { return static_cast<int>(vertices_.size()); }
    const RatVec& vertex(int i) const { return vertices_.at(static_cast<std::size_t>(i)); }

    bool operator==(const VPolytope& other) const = default;

  private:
    VPolytope(int ambient_dim, std::vector<RatVec> vertices)
        : ambient_dim_(ambient_dim), vertices_(std::move(vertices))
    {
    }

    int ambient_dim_ = 0;
    std::vector<RatVec> vertices_;
};

/** Faces grouped by dimension; by_dim[k] holds the k-faces, 0 <= k <= dim. */
struct FaceLattice
{
    int dim = 0;
    std::vector<std::vector<Face>> by_dim;

    std::vector<int> f_vector() const;
};

/** Dimension of the affine hull of the vertex set. */
int dim(const VPolytope& P);

/**
 * A canonical basis of the affine equalities satisfied by aff(P); the list
 * has ambient_dim - dim(P) pairs (normal, offset) with normal.v = offset on
 * every vertex.
 */
std::vector<std::pair<RatVec, Rational>> affine_hull_constraints(const VPolytope& P);

/**
 * All facets, each with a supporting half-space oriented so P lies on the
 * <= side. Returns nullopt for a 0-dimensional polytope, which has no
 * facets.
 */
std::optional<std::vector<Face>> facets(const VPolytope& P);

/**
 * The full face lattice: facets closed under intersection, plus P itself as
 * the improper face. Every proper face carries a verified supporting
 * half-space (the sum of the half-spaces of the facets containing it).
 */
FaceLattice face_lattice(const VPolytope& P);

/**
 * Decides whether the vertex subset S spans a face; on success the face is
 * returned with a supporting half-space witness found by an exact LP.
 * Passing every index yields the improper face.
 */
std::optional<Face> is_face(const VPolytope& P, const std::vector<int>& S);

/**
 * Chain P = F_0 > F_1 > ... > F_k = F where each step is a facet of the
 * previous face, choosing the lexicographically least facet containing F at
 * every step. Throws UsageError unless F is a proper face.
 */
std::vector<Face> facet_chain(const VPolytope& P, const Face& F);

/** True iff the vertex count is dim(P) + 1. */
bool is_simplex(const VPolytope& P);

/**
 * If exactly one vertex of P lies outside the facet B, returns its index
 * (the apex); otherwise nullopt. Throws UsageError unless B is a facet.
 */
std::optional<int> is_pyramidal_at(const VPolytope& P, const Face& B);

struct UniformPyramidalityReport
{
    bool uniformly_pyramidal = false;
    /** One entry per facet: the facet and its apex when pyramidal there. */
    std::vector<std::pair<Face, std::optional<int>>> per_facet;
};

/** Conjunction of is_pyramidal_at over every facet; requires dim >= 1. */
UniformPyramidalityReport is_uniformly_pyramidal(const VPolytope& P);

struct ContainsResult
{
    bool inside = false;
    /** Inside: convex coefficients on at most dim(P)+1 vertices. */
    std::vector<std::pair<int, Rational>> barycentric;
    /** Outside: a half-space with P inside and the point strictly outside. */
    HalfSpace separator;
};

/** Exact membership with a Caratheodory-reduced witness or a separator. */
ContainsResult contains(const VPolytope& P, const RatVec& x);

/** The affine map x -> L x + shift. */
struct AffineMap
{
    RatMat linear;
    RatVec shift;

    RatVec apply(const RatVec& x) const { return linear * x + shift; }
};

/**
 * Searches for an affine bijection between the vertex sets, pruned by
 * f-vector and vertex-facet-degree compatibility. Throws TooLargeError
 * above 12 vertices.
 */
std::optional<AffineMap> affinely_equivalent(const VPolytope& P, const VPolytope& Q);

/**
 * Affine coordinates on aff(P): local(x) = dual * (x - origin) for x in
 * aff(P), and x = origin + basis * local(x). Deterministic (Gaussian
 * elimination basis).
 */
struct AffineChart
{
    RatVec origin;
    RatMat basis;  // ambient x d, columns span the direction space
    RatMat dual;   // d x ambient, left inverse of basis

    RatVec to_local(const RatVec& x) const { return dual * (x - origin); }
    RatVec to_ambient(const RatVec& z) const { return origin + basis * z; }
};

AffineChart affine_chart(const std::vector<RatVec>& points);

/** The sub-polytope spanned by a face, in the parent's ambient space. */
VPolytope face_polytope(const VPolytope& P, const Face& F);

}  // namespace gptlab

#endif  // GPTLAB_POLYTOPE_HPP
