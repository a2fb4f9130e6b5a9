#ifndef CIRCDIAM_RATIONAL_HPP
#define CIRCDIAM_RATIONAL_HPP

#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/gmp.hpp>

namespace circdiam {

// Expression templates off: results can be bound with auto and mixed in ?: safely.
using Integer = boost::multiprecision::number<boost::multiprecision::gmp_int, boost::multiprecision::et_off>;
using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational, boost::multiprecision::et_off>;

using Vector = std::vector<Rational>;
using Matrix = std::vector<Vector>;
using IntVector = std::vector<Integer>;

inline bool is_zero(const Rational& x) { return x.is_zero(); }

/**
 * Parse "p/q", "p" or "-p/q" into a canonical rational. Throws ParseError on
 * anything else, including a zero denominator.
 */
Rational parse_rational(std::string_view text);

/** "p/q" with the denominator omitted when it is 1. */
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

/** Dot product of equal-length vectors. */
Rational dot(const Vector& lhs, const Vector& rhs);
Rational dot(const Vector& lhs, const IntVector& rhs);

/** Scale a nonzero rational vector to the unique coprime integer vector
 * with the same direction (positive multiple). Returns empty for zero. */
IntVector primitive_direction(const Vector& v);

Vector to_rational(const IntVector& v);

}  // namespace circdiam

#endif
