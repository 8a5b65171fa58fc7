#pragma once

#include <gmpxx.h>

#include <string>

namespace rankzipf {

// Exact counts and ranks. Q~(z) ~ e^z leaves 64 bits near z = 44.
using BigInt = mpz_class;

// Natural logarithm of a positive big integer (no overflow for any size).
double log_of(const BigInt& x);

inline std::string to_string(const BigInt& x) { return x.get_str(); }

// Parses a decimal integer; throws std::invalid_argument on malformed input.
BigInt parse_bigint(const std::string& text);

}  // namespace rankzipf
