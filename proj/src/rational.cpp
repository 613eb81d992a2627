#include "eqcheck/rational.hpp"

#include <stdexcept>

namespace eqcheck {

BigInt pow2(unsigned long exponent) {
    BigInt out;
    mpz_ui_pow_ui(out.get_mpz_t(), 2, exponent);
    return out;
}

Rat dyadic_to_rat(const DyadicProb& p) {
    Rat out(p.numerator, pow2(p.lbits));
    out.canonicalize();
    return out;
}

std::optional<unsigned long> dyadic_exponent(const Rat& r) {
    const BigInt& den = r.get_den();
    if (den <= 0) return std::nullopt;
    // A power of two has exactly one set bit.
    if (mpz_popcount(den.get_mpz_t()) != 1) return std::nullopt;
    return mpz_scan1(den.get_mpz_t(), 0);
}

std::string to_string(const Rat& r) {
    Rat c = r;
    c.canonicalize();
    return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rat parse_rat(const std::string& text) {
    Rat out;
    if (out.set_str(text, 10) != 0 || out.get_den() == 0) {
        throw std::invalid_argument("not a rational: " + text);
    }
    out.canonicalize();
    return out;
}

} // namespace eqcheck
