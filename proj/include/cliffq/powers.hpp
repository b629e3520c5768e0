#pragma once

// Clifford and exterior powers, their rank-spectrum predictions, and the
// elementary functions built from them.

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <type_traits>

#include "cliffq/algebra.hpp"
#include "cliffq/brackets.hpp"
#include "cliffq/qtype.hpp"
#include "cliffq/spectrum.hpp"

namespace cliffq {

/// (U)^m under the geometric product; m = 0 gives e.
template <class S>
BasicMultivector<S> cl_power(const BasicMultivector<S>& u, int m) {
    if (m < 0) {
        throw domain_error("negative exponent");
    }
    auto out = BasicMultivector<S>::scalar(u.signature(), S(1));
    for (int i = 0; i < m; ++i) {
        out = geo_mul(out, u);
    }
    return out;
}

/// (^U)^m under the exterior product; m = 0 gives e.
template <class S>
BasicMultivector<S> ext_power(const BasicMultivector<S>& u, int m) {
    if (m < 0) {
        throw domain_error("negative exponent");
    }
    auto out = BasicMultivector<S>::scalar(u.signature(), S(1));
    for (int i = 0; i < m && !out.is_zero(); ++i) {
        out = ext_mul(out, u);
    }
    return out;
}

namespace detail {

inline void check_power_args(int k, int m, int n) {
    if (n < 1 || k < 0 || k > n) {
        throw domain_error("rank must lie in [0, n]");
    }
    if (m < 0) {
        throw domain_error("negative exponent");
    }
}

/// Step-4 progression holding every grade of (U^k)^m, m >= 2, cut at n.
inline RankSpectrum power_progression(int k, int m, int n) {
    if (m % 2 == 1) {
        const int top = k % 2 == 0 ? k * m : k * m - (m - 1);
        return progression(k % 4, 4, std::min(top, n));
    }
    const int top = k % 2 == 0 ? k * m : (k - 1) * m;
    return progression(0, 4, std::min(top, n));
}

} // namespace detail

/// Grades of (^U)^m for U of rank k in n generators: {mk} when k is even
/// and mk <= n, otherwise nothing (the power vanishes). k = 0 gives {0}.
inline RankSpectrum predict_ext_power(int k, int m, int n) {
    detail::check_power_args(k, m, n);
    if (m == 0 || k == 0) {
        return {0};
    }
    if (m == 1) {
        return {k};
    }
    if (k % 2 == 1 || m * k > n) {
        return {};
    }
    return {m * k};
}

/// Envelope of grades of (U)^m for U of rank k in n generators.
///
/// Each factor is folded in with the product grade envelope, and after every
/// step the set is cut down to the step-4 progression valid for that
/// exponent. For m = 2 this reproduces the four-case table (n >= 2k or not,
/// k parity, n and k parity).
inline RankSpectrum predict_cl_power(int k, int m, int n) {
    detail::check_power_args(k, m, n);
    if (m == 0) {
        return {0};
    }
    RankSpectrum current{k};
    for (int i = 2; i <= m; ++i) {
        RankSpectrum next;
        for (int j : current.members()) {
            next |= product_grade_envelope(j, k, n);
        }
        current = next & detail::power_progression(k, i, n);
    }
    return current;
}

/// Main type of (U)^m for U of main type t: t for odd m, 0 for even m.
inline int predict_cl_power_qtype(int t, int m) {
    QType::check_residue(t);
    if (m < 0) {
        throw domain_error("negative exponent");
    }
    return m % 2 == 1 ? t : 0;
}

// ---------------------------------------------------------------------------
// Elementary functions

enum class SeriesFunction { exp, sin, cos, sinh, cosh };

inline const char* function_name(SeriesFunction f) {
    switch (f) {
    case SeriesFunction::exp: return "exp";
    case SeriesFunction::sin: return "sin";
    case SeriesFunction::cos: return "cos";
    case SeriesFunction::sinh: return "sinh";
    case SeriesFunction::cosh: return "cosh";
    }
    return "?";
}

inline std::optional<SeriesFunction> parse_function_name(const std::string& name) {
    for (auto f : {SeriesFunction::exp, SeriesFunction::sin, SeriesFunction::cos, SeriesFunction::sinh,
                   SeriesFunction::cosh}) {
        if (name == function_name(f)) {
            return f;
        }
    }
    return std::nullopt;
}

namespace detail {

/// Coefficient multiplying U^j / j! in the series of f: 0, +1 or -1.
inline int series_sign(SeriesFunction f, int j) {
    switch (f) {
    case SeriesFunction::exp: return 1;
    case SeriesFunction::sinh: return j % 2;
    case SeriesFunction::cosh: return 1 - j % 2;
    case SeriesFunction::sin: return j % 2 == 0 ? 0 : ((j / 2) % 2 == 0 ? 1 : -1);
    case SeriesFunction::cos: return j % 2 == 1 ? 0 : ((j / 2) % 2 == 0 ? 1 : -1);
    }
    return 0;
}

} // namespace detail

struct SeriesPolicy {
    double tolerance = 1e-12;
    int max_terms = 200;

    void validate() const {
        if (!(tolerance > 0.0)) {
            throw domain_error("series tolerance must be positive");
        }
        if (max_terms < 1) {
            throw domain_error("series term cap must be at least 1");
        }
    }
};

struct SeriesResult {
    ApproxMultivector value;
    /// Largest coefficient magnitude of any term; bounds the rounding noise.
    double peak = 0.0;
    int terms = 0;
};

/// Partial sums of f(U) = sum_j sign_j U^j / j!, stopped once two consecutive
/// terms fall below tolerance * max(1, |partial sum|).
inline SeriesResult series_sum(SeriesFunction f, const ApproxMultivector& u, const SeriesPolicy& policy = {}) {
    policy.validate();
    SeriesResult result{ApproxMultivector(u.signature()), 0.0, 0};
    auto term = ApproxMultivector::scalar(u.signature(), 1.0);
    bool previous_small = false;
    for (int j = 0;; ++j) {
        const int sign = detail::series_sign(f, j);
        if (sign != 0) {
            result.value = result.value + static_cast<double>(sign) * term;
        }
        const double size = max_abs(term);
        result.peak = std::max(result.peak, size);
        result.terms = j + 1;
        const bool small = size < policy.tolerance * std::max(1.0, max_abs(result.value));
        if (small && previous_small) {
            return result;
        }
        previous_small = small;
        if (j + 1 >= policy.max_terms) {
            throw convergence_error(std::string(function_name(f)) + " series did not converge within " +
                                    std::to_string(policy.max_terms) + " terms");
        }
        term = (1.0 / (j + 1)) * geo_mul(term, u);
    }
}

inline ApproxMultivector series_fn(SeriesFunction f, const ApproxMultivector& u, const SeriesPolicy& policy = {}) {
    return series_sum(f, u, policy).value;
}

/// Exterior series of a multivector with zero scalar part: finite, since
/// (^N)^j vanishes for j > n.
template <class S>
struct ExtSeriesResult {
    BasicMultivector<S> value;
    int terms = 0;
};

namespace detail {

template <class S>
S inverse_of(int j) {
    if constexpr (std::is_same_v<S, Rational>) {
        return Rational(1, j);
    } else {
        return 1.0 / j;
    }
}

template <class S>
ExtSeriesResult<S> nilpotent_ext_series(SeriesFunction f, const BasicMultivector<S>& u) {
    ExtSeriesResult<S> result{BasicMultivector<S>(u.signature()), 0};
    auto term = BasicMultivector<S>::scalar(u.signature(), S(1));
    for (int j = 0; !term.is_zero(); ++j) {
        const int sign = series_sign(f, j);
        if (sign != 0) {
            result.value = result.value + S(sign) * term;
        }
        result.terms = j + 1;
        term = inverse_of<S>(j + 1) * ext_mul(term, u);
    }
    return result;
}

} // namespace detail

/// Exact exterior series. The scalar part of u must be zero (otherwise the
/// result involves exp/sin/cos of a rational and is not rational).
inline ExtSeriesResult<Rational> ext_series_sum(SeriesFunction f, const Multivector& u) {
    if (sgn(u.coefficient(Blade::identity())) != 0) {
        throw domain_error("exact exterior series needs a zero scalar part");
    }
    return detail::nilpotent_ext_series(f, u);
}

inline Multivector ext_series_fn(SeriesFunction f, const Multivector& u) { return ext_series_sum(f, u).value; }

/// Approximate exterior series; a scalar part s is split off with the
/// addition formulas, since s e commutes with everything under the wedge.
inline ApproxMultivector ext_series_fn(SeriesFunction f, const ApproxMultivector& u) {
    const double s = u.coefficient(Blade::identity());
    const auto nil = u - ApproxMultivector::scalar(u.signature(), s);
    auto series = [&](SeriesFunction g) { return detail::nilpotent_ext_series(g, nil).value; };
    switch (f) {
    case SeriesFunction::exp: return std::exp(s) * series(SeriesFunction::exp);
    case SeriesFunction::sinh:
        return std::sinh(s) * series(SeriesFunction::cosh) + std::cosh(s) * series(SeriesFunction::sinh);
    case SeriesFunction::cosh:
        return std::cosh(s) * series(SeriesFunction::cosh) + std::sinh(s) * series(SeriesFunction::sinh);
    case SeriesFunction::sin:
        return std::sin(s) * series(SeriesFunction::cos) + std::cos(s) * series(SeriesFunction::sin);
    case SeriesFunction::cos:
        return std::cos(s) * series(SeriesFunction::cos) - std::sin(s) * series(SeriesFunction::sin);
    }
    return ApproxMultivector(u.signature());
}

/// Type of f(U) for U of main type t: exp -> 0~t~, sin/sinh -> t~, cos/cosh -> 0~.
/// The same table holds for the exterior variants.
inline QType predict_series_qtype(SeriesFunction f, int t) {
    QType::check_residue(t);
    switch (f) {
    case SeriesFunction::exp: return QType::main(0) | QType::main(t);
    case SeriesFunction::sin:
    case SeriesFunction::sinh: return QType::main(t);
    case SeriesFunction::cos:
    case SeriesFunction::cosh: return QType::main(0);
    }
    return QType::none();
}

/// Grades of the exterior function of a rank-k element in n generators.
inline RankSpectrum predict_ext_series_spectrum(SeriesFunction f, int k, int n) {
    detail::check_power_args(k, 1, n);
    if (k == 0) {
        return {0};
    }
    RankSpectrum out;
    for (int j = 0; j * k <= n; ++j) {
        if (detail::series_sign(f, j) == 0) {
            continue;
        }
        if (j >= 2 && k % 2 == 1) {
            break;
        }
        out.insert(j * k);
    }
    return out;
}

} // namespace cliffq
