#ifndef GPTLAB_FOURIER_MOTZKIN_HPP
#define GPTLAB_FOURIER_MOTZKIN_HPP

#include "gptlab/lp.hpp"

namespace gptlab {

/** Variable-count cap; elimination is doubly exponential beyond desk scale. */
inline constexpr int kFourierMotzkinMaxVariables = 12;

/**
 * Feasibility by Fourier-Motzkin elimination, an oracle independent of the
 * simplex path. Same result contract as lp_feasible. Throws TooLargeError
 * above kFourierMotzkinMaxVariables variables.
 */
LpResult lp_feasible_fm(const LinearProgram& lp);

}  // namespace gptlab

#endif  // GPTLAB_FOURIER_MOTZKIN_HPP
