#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace fanikit {

using Integer = mpz_class;
using Rational = mpq_class;
using IntVector = std::vector<Integer>;
using RatVector = std::vector<Rational>;

// Parses "p", "-p" or "p/q". Throws std::invalid_argument on malformed input
// or a zero denominator.
Rational parse_rational(std::string_view text);

// "p" when the denominator is 1, "p/q" otherwise (always reduced).
std::string to_string(const Rational& value);
std::string to_string(const Integer& value);

RatVector to_rational(const IntVector& v);

// gcd of all entries; 0 for the zero vector.
Integer content(const IntVector& v);

// Divides out the content. The zero vector is returned unchanged.
IntVector primitive(const IntVector& v);

// Smallest positive integer multiple of a rational vector, then primitive.
IntVector primitive(const RatVector& v);

bool is_zero(const IntVector& v);
bool is_zero(const RatVector& v);

Rational dot(const RatVector& a, const RatVector& b);
Integer dot(const IntVector& a, const IntVector& b);

}  // namespace fanikit
