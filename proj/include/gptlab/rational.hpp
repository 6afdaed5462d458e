#ifndef GPTLAB_RATIONAL_HPP
#define GPTLAB_RATIONAL_HPP

#include <boost/multiprecision/gmp.hpp>
#include <Eigen/Dense>
#include <boost/multiprecision/eigen.hpp>
#include <stdexcept>
#include <string>
#include <vector>

namespace gptlab {

/**
 * Exact rational scalar. GMP keeps values in lowest terms with a positive
 * denominator, so the canonical-form invariant holds by construction and
 * arithmetic never rounds.
 */
using Rational = boost::multiprecision::mpq_rational;

/** Column vector of exact rationals. */
using RatVec = Eigen::Matrix<Rational, Eigen::Dynamic, 1>;

/** Dense matrix of exact rationals. */
using RatMat = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

/** Thrown on malformed arguments (dimension mismatches, bad preconditions). */
class UsageError : public std::invalid_argument
{
  public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

/** Thrown when an input exceeds a documented enumeration or search limit. */
class TooLargeError : public std::runtime_error
{
  public:
    explicit TooLargeError(const std::string& what) : std::runtime_error(what) {}
};

/**
 * Serialize as "p/q" (or "p" when q = 1), base 10, lowest terms, with the
 * sign on the numerator.
 */
std::string to_string(const Rational& q);

/**
 * Parse the "p/q" text form. Accepts an optional leading '-' on the
 * numerator only; rejects empty parts, zero denominators and stray
 * characters. The result is canonicalized.
 */
Rational parse_rational(const std::string& text);

std::string to_string(const RatVec& v);

/** Build a vector from a braced list, mostly for tests and model builders. */
RatVec make_vec(std::initializer_list<Rational> entries);

RatVec to_rat_vec(const std::vector<Rational>& entries);

/** Lexicographic order on equal-length vectors. */
bool lex_less(const RatVec& a, const RatVec& b);

}  // namespace gptlab

#endif  // GPTLAB_RATIONAL_HPP
