#pragma once

// Concrete evaluation. Values stay exact rationals until a Clifford series
// (or an exterior series of an element with a scalar part) forces doubles;
// from then on a magnitude `scale` travels with the value and sets the noise
// floor below which a coefficient counts as zero.

#include <algorithm>
#include <cmath>
#include <map>
#include <string>
#include <variant>

#include "cliffq/algebra.hpp"
#include "cliffq/dsl/ast.hpp"
#include "cliffq/format.hpp"
#include "cliffq/powers.hpp"
#include "cliffq/qtype.hpp"

namespace cliffq::dsl {

/// Relative threshold for "this approximate coefficient is zero".
inline constexpr double approx_zero_tolerance = 1e-9;

class Value {
public:
    Value(Multivector exact) : v_(std::move(exact)) {}
    Value(ApproxMultivector approx, double scale) : v_(std::move(approx)), scale_(scale) {}

    bool exact() const noexcept { return std::holds_alternative<Multivector>(v_); }
    const Multivector& exact_value() const { return std::get<Multivector>(v_); }
    const Signature& signature() const {
        return exact() ? exact_value().signature() : std::get<ApproxMultivector>(v_).signature();
    }

    ApproxMultivector approx() const { return exact() ? to_approx(exact_value()) : std::get<ApproxMultivector>(v_); }

    /// Largest magnitude met while computing this value.
    double scale() const { return exact() ? max_abs(to_approx(exact_value())) : scale_; }
    std::size_t size() const { return exact() ? exact_value().size() : std::get<ApproxMultivector>(v_).size(); }

    double zero_threshold() const { return approx_zero_tolerance * std::max(1.0, scale()); }

    QType qtype() const { return exact() ? qtype_of(exact_value()) : qtype_of(approx(), zero_threshold()); }
    RankSpectrum grades() const {
        return exact() ? grade_spectrum(exact_value()) : grade_spectrum(approx(), zero_threshold());
    }

    std::string render() const;

private:
    std::variant<Multivector, ApproxMultivector> v_;
    double scale_ = 0.0;
};

inline Value operator-(const Value& a) {
    if (a.exact()) {
        return Value(-a.exact_value());
    }
    return Value(-a.approx(), a.scale());
}

inline Value operator+(const Value& a, const Value& b) {
    if (a.exact() && b.exact()) {
        return Value(a.exact_value() + b.exact_value());
    }
    return Value(a.approx() + b.approx(), std::max(a.scale(), b.scale()));
}

inline Value operator-(const Value& a, const Value& b) { return a + (-b); }

inline Value operator*(const Value& a, const Value& b) {
    if (a.exact() && b.exact()) {
        return Value(geo_mul(a.exact_value(), b.exact_value()));
    }
    const double terms = static_cast<double>(std::max<std::size_t>(1, std::min(a.size(), b.size())));
    return Value(geo_mul(a.approx(), b.approx()), a.scale() * b.scale() * terms);
}

inline Value wedge(const Value& a, const Value& b) {
    if (a.exact() && b.exact()) {
        return Value(ext_mul(a.exact_value(), b.exact_value()));
    }
    const double terms = static_cast<double>(std::max<std::size_t>(1, std::min(a.size(), b.size())));
    return Value(ext_mul(a.approx(), b.approx()), a.scale() * b.scale() * terms);
}

using Bindings = std::map<std::string, Multivector>;

namespace detail {

inline Value power(const Value& base, int m, bool exterior) {
    Value out(Multivector::scalar(base.signature(), Rational(1)));
    for (int i = 0; i < m; ++i) {
        out = exterior ? wedge(out, base) : out * base;
    }
    return out;
}

/// f(s e + N) for exact N with zero scalar part, via the addition formulas.
inline Value exterior_function_with_scalar(SeriesFunction f, const Multivector& u) {
    const double s = u.coefficient(Blade::identity()).get_d();
    const Multivector nil = u - Multivector::scalar(u.signature(), u.coefficient(Blade::identity()));
    auto series = [&](SeriesFunction g) { return ext_series_fn(g, nil); };
    Multivector a(u.signature());
    Multivector b(u.signature());
    double ca = 0.0;
    double cb = 0.0;
    switch (f) {
    case SeriesFunction::exp:
        a = series(SeriesFunction::exp), b = a, ca = std::exp(s);
        break;
    case SeriesFunction::sinh:
        a = series(SeriesFunction::cosh), b = series(SeriesFunction::sinh), ca = std::sinh(s), cb = std::cosh(s);
        break;
    case SeriesFunction::cosh:
        a = series(SeriesFunction::cosh), b = series(SeriesFunction::sinh), ca = std::cosh(s), cb = std::sinh(s);
        break;
    case SeriesFunction::sin:
        a = series(SeriesFunction::cos), b = series(SeriesFunction::sin), ca = std::sin(s), cb = std::cos(s);
        break;
    case SeriesFunction::cos:
        a = series(SeriesFunction::cos), b = series(SeriesFunction::sin), ca = std::cos(s), cb = -std::sin(s);
        break;
    }
    const ApproxMultivector value = ca * to_approx(a) + cb * to_approx(b);
    const double scale = std::max(std::abs(ca), std::abs(cb)) * std::max(max_abs(to_approx(a)), max_abs(to_approx(b)));
    return Value(value, scale);
}

inline Value function(SeriesFunction f, bool exterior, const Value& u, const SeriesPolicy& policy) {
    if (exterior) {
        if (u.exact()) {
            const Multivector& x = u.exact_value();
            if (sgn(x.coefficient(Blade::identity())) == 0) {
                return Value(ext_series_fn(f, x));
            }
            return exterior_function_with_scalar(f, x);
        }
        const ApproxMultivector value = ext_series_fn(f, u.approx());
        return Value(value, std::max(max_abs(value), u.scale()));
    }
    const SeriesResult r = series_sum(f, u.approx(), policy);
    return Value(r.value, std::max({r.peak, max_abs(r.value), u.scale()}));
}

} // namespace detail

/// Evaluates e in the algebra of `sig` with every variable taken from
/// `bindings`. Throws domain_error on a missing binding, signature_error on a
/// binding from another algebra, convergence_error from Clifford series.
inline Value evaluate(const Expr& e, const Signature& sig, const Bindings& bindings,
                      const SeriesPolicy& policy = {}) {
    auto rec = [&](const Expr& x) { return evaluate(x, sig, bindings, policy); };
    switch (e->kind) {
    case NodeKind::variable: {
        auto it = bindings.find(e->name);
        if (it == bindings.end()) {
            throw domain_error("no binding for variable '" + e->name + "'");
        }
        if (!(it->second.signature() == sig)) {
            throw signature_error("binding for '" + e->name + "' lives in " + it->second.signature().name() +
                                  ", expected " + sig.name());
        }
        return Value(it->second);
    }
    case NodeKind::scalar: return Value(Multivector::scalar(sig, e->value));
    case NodeKind::negate: return -rec(e->children[0]);
    case NodeKind::add: return rec(e->children[0]) + rec(e->children[1]);
    case NodeKind::geo_mul: {
        Value acc = rec(e->children[0]);
        for (std::size_t i = 1; i < e->children.size(); ++i) {
            acc = acc * rec(e->children[i]);
        }
        return acc;
    }
    case NodeKind::ext_mul: return wedge(rec(e->children[0]), rec(e->children[1]));
    case NodeKind::bracket: {
        std::vector<Value> us;
        for (const auto& c : e->children) {
            us.push_back(rec(c));
        }
        Value forward = us.front();
        for (std::size_t i = 1; i < us.size(); ++i) {
            forward = forward * us[i];
        }
        Value reversed = us.back();
        for (std::size_t i = us.size() - 1; i-- > 0;) {
            reversed = reversed * us[i];
        }
        return e->bracket == BracketKind::commutator ? forward - reversed : forward + reversed;
    }
    case NodeKind::power: return detail::power(rec(e->children[0]), e->exponent, e->exterior);
    case NodeKind::function: return detail::function(e->function, e->exterior, rec(e->children[0]), policy);
    }
    throw domain_error("unknown expression node");
}

inline std::string Value::render() const {
    if (exact()) {
        return cliffq::render(exact_value());
    }
    // Drop coefficients under the noise floor before printing.
    const double threshold = zero_threshold();
    const auto value = approx();
    const auto clean = filter_blades(value, [&](Blade b) { return std::abs(value.coefficient(b)) > threshold; });
    return cliffq::render(clean);
}

} // namespace cliffq::dsl
