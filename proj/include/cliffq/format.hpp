#pragma once

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "cliffq/algebra.hpp"

namespace cliffq {

/// `e`, `e1`, `e12`, ...; for n >= 10 indices are joined with `_` (`e1_10`).
inline std::string blade_name(Blade b, int n) {
    std::string out = "e";
    bool first = true;
    for (int a : b.indices()) {
        if (n >= 10 && !first) {
            out += '_';
        }
        out += std::to_string(a);
        first = false;
    }
    return out;
}

/// Display order: by grade, then lexicographically by generator indices.
inline bool display_less(Blade x, Blade y) {
    if (x.grade() != y.grade()) {
        return x.grade() < y.grade();
    }
    return x.indices() < y.indices();
}

namespace detail {

template <class S, class Fmt>
std::string render_terms(const BasicMultivector<S>& u, Fmt format_magnitude) {
    if (u.is_zero()) {
        return "0";
    }
    std::vector<typename BasicMultivector<S>::Term> terms(u.terms().begin(), u.terms().end());
    std::sort(terms.begin(), terms.end(),
              [](const auto& a, const auto& b) { return display_less(a.first, b.first); });
    std::string out;
    bool first = true;
    for (const auto& [blade, c] : terms) {
        const bool negative = c < 0;
        if (first) {
            out += negative ? "-" : "";
        } else {
            out += negative ? " - " : " + ";
        }
        out += format_magnitude(c);
        out += ' ';
        out += blade_name(blade, u.signature().n());
        first = false;
    }
    return out;
}

} // namespace detail

/// Canonical text form, e.g. `2 e - 3/2 e12`; `0` for zero.
inline std::string render(const Multivector& u) {
    return detail::render_terms(u, [](const Rational& c) { return to_string(Rational(abs(c))); });
}

inline std::string render(const ApproxMultivector& u, int significant_digits = 12) {
    return detail::render_terms(u, [significant_digits](double c) {
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.*g", significant_digits, std::abs(c));
        return std::string(buf);
    });
}

} // namespace cliffq
