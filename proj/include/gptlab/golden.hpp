#ifndef GPTLAB_GOLDEN_HPP
#define GPTLAB_GOLDEN_HPP

#include <iosfwd>

namespace gptlab {

/**
 * Runs the pinned-example suite: every model-zoo fact the library is
 * expected to reproduce exactly, one named case per fact. Prints one line
 * per case ("ok <name>" or "FAIL <name>: <detail>") plus a summary line,
 * deterministically, and returns the number of failures.
 */
int run_golden_suite(std::ostream& out);

}  // namespace gptlab

#endif  // GPTLAB_GOLDEN_HPP
