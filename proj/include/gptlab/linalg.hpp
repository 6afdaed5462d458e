#ifndef GPTLAB_LINALG_HPP
#define GPTLAB_LINALG_HPP

#include <optional>
#include <vector>

#include "gptlab/rational.hpp"

namespace gptlab {

/**
 * Result of solving A x = b exactly. When consistent, `particular` is the
 * solution with every free variable set to zero and the columns of `kernel`
 * are a basis of the null space of A (each normalized so its first nonzero
 * entry is +1, in free-column order).
 */
struct LinearSolution
{
    bool consistent = false;
    RatVec particular;
    RatMat kernel;
};

/** Exact Gaussian elimination; throws UsageError on a dimension mismatch. */
LinearSolution solve_linear_system(const RatMat& A, const RatVec& b);

/** Exact rank. */
int rank(const RatMat& A);

/** Basis of {x : A x = 0} as matrix columns, same normalization as above. */
RatMat kernel_basis(const RatMat& A);

/**
 * Reduced row echelon form, computed in place with first-nonzero pivoting
 * (deterministic). Pivot column indices are appended to `pivot_cols` when
 * given.
 */
void rref_in_place(RatMat& A, std::vector<int>* pivot_cols = nullptr);

/** Exact inverse, or nullopt if A is singular or not square. */
std::optional<RatMat> inverse(const RatMat& A);

}  // namespace gptlab

#endif  // GPTLAB_LINALG_HPP
