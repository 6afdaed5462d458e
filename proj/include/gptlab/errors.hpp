#ifndef GPTLAB_ERRORS_HPP
#define GPTLAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace gptlab {

/** Thrown when rational approximation of a model collapses its vertex set. */
class ApproximationCollapseError : public std::runtime_error
{
  public:
    explicit ApproximationCollapseError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Thrown when a self-check contradicts itself (a solver returning an invalid
 * witness, the classicality cross-check disagreeing). Always a bug, never a
 * result.
 */
class InternalInconsistencyError : public std::logic_error
{
  public:
    explicit InternalInconsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace gptlab

#endif  // GPTLAB_ERRORS_HPP
