#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

namespace ietlab {

// Exact rational scalar. All library arithmetic is exact; doubles appear only
// in diagnostic fields (frequency deviations) and never feed back into logic.
using Rat = mpq_class;
using Int = mpz_class;

// Accepts "p", "-p", "p/q" with q > 0 after canonicalization.
Rat parse_rational(const std::string& text);

// Accepts a plain decimal: optional sign, digits, optional fractional part
// ("1.6180339887"). The result is the exact rational the string denotes.
Rat parse_decimal(const std::string& text);

// Dispatches on the presence of '.' between the two parsers above.
Rat parse_number(const std::string& text);

// Canonical "p" or "p/q" (q > 1 only when needed).
std::string to_string(const Rat& value);

// Truncated decimal rendering with `digits` places after the point.
std::string decimal_string(const Rat& value, unsigned digits);

// floor(sqrt(n * 10^(2*digits))) / 10^digits as a decimal string: the exact
// truncation of sqrt(n) used when synthesizing irrational generator values.
std::string sqrt_decimal(unsigned n, unsigned digits);

// 10^(-digits) as an exact rational.
Rat pow10_inverse(unsigned digits);

inline int sign(const Rat& value) { return sgn(value); }
inline Rat abs_value(const Rat& value) { return abs(value); }

// 64-bit mixing hash suitable for unordered containers keyed by exact points.
std::uint64_t hash_rat(const Rat& value);
std::uint64_t hash_combine(std::uint64_t seed, std::uint64_t value);

// Clears denominators and divides by the content, preserving direction;
// first nonzero entry made positive. Zero vectors pass through unchanged.
std::vector<Rat> primitive_integer_vector(const std::vector<Rat>& row);

} // namespace ietlab
