#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

namespace eqcheck {

using BigInt = mpz_class;
using Rat = mpq_class;

/// An L-bit dyadic probability: numerator / 2^lbits, with 0 <= numerator <= 2^lbits.
struct DyadicProb {
    BigInt numerator;
    unsigned lbits = 1;
};

BigInt pow2(unsigned long exponent);

/// Exact value of a dyadic probability, in lowest terms.
Rat dyadic_to_rat(const DyadicProb& p);

/// Exponent e with denominator(r) == 2^e, or nullopt when the denominator is
/// not a power of two.
std::optional<unsigned long> dyadic_exponent(const Rat& r);

/// Always prints "<num>/<den>" in lowest terms, including integers ("1/1").
std::string to_string(const Rat& r);

/// Inverse of to_string; also accepts a bare integer.
Rat parse_rat(const std::string& text);

} // namespace eqcheck
