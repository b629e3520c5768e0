#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>

#include "cliffq/error.hpp"

namespace cliffq {

/// Exact scalar: arbitrary-precision integer over a positive denominator,
/// always kept in lowest terms.
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) {
        throw domain_error("zero denominator");
    }
    Rational r(num, den);
    r.canonicalize();
    return r;
}

/// Parses "N", "-N", "N/D" in base 10.
inline Rational parse_rational(const std::string& text) {
    Rational r;
    if (text.empty() || r.set_str(text, 10) != 0) {
        throw domain_error("malformed rational '" + text + "'");
    }
    if (r.get_den() == 0) {
        throw domain_error("zero denominator in '" + text + "'");
    }
    r.canonicalize();
    return r;
}

inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline std::optional<std::int64_t> to_int64(const mpz_class& z) {
    if (!z.fits_slong_p()) {
        return std::nullopt;
    }
    return static_cast<std::int64_t>(z.get_si());
}

inline Rational factorial(int m) {
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(m));
    return Rational(f);
}

} // namespace cliffq
