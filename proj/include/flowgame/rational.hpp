#pragma once

#include <gmpxx.h>

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace flowgame {

/// Exact rational scalar used throughout the library. Always canonical
/// (lowest terms, positive denominator) after every arithmetic operation.
using Rational = mpq_class;

/// Renders `p/q` in lowest terms, or `p` when the denominator is one.
std::string to_string(const Rational& value);

/// Parses `p`, `-p`, or `p/q`. Throws std::invalid_argument on malformed text
/// or a zero denominator.
Rational parse_rational(std::string_view text);

/// Comma-separated rendering used by reports: "1/2, 1/2".
std::string join(std::span<const Rational> values, std::string_view separator = ", ");

Rational sum(std::span<const Rational> values);

}  // namespace flowgame
