#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace freecomm {

/// Exact rational coefficient. GMP keeps every value in lowest terms with a
/// positive denominator.
using Rat = mpq_class;

/// p/q in lowest terms. Throws std::domain_error when q == 0.
Rat make_rat(long p, long q = 1);

/// Parses "p", "p/q", "-p/q" or a finite decimal such as "0.45" (read exactly
/// as 45/100). Throws std::invalid_argument on malformed input.
Rat parse_rat(std::string_view text);

/// "p/q", or "p" when the denominator is 1.
std::string to_string(const Rat& value);

/// Fixed-point decimal rendering with `digits` digits after the point.
std::string to_decimal(const Rat& value, int digits);

Rat pow(const Rat& base, long exponent);

} // namespace freecomm
