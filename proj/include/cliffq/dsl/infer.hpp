#pragma once

// Static quaternion-type inference. Every rule returns a superset of the
// residues a concrete evaluation can produce; the empty type means the
// expression is identically zero.

#include <set>
#include <utility>
#include <vector>

#include "cliffq/dsl/ast.hpp"
#include "cliffq/powers.hpp"
#include "cliffq/qtype.hpp"

namespace cliffq::dsl {

namespace detail {

inline void flatten_product(const Expr& e, std::vector<Expr>& out) {
    if (e->kind == NodeKind::geo_mul) {
        for (const auto& c : e->children) {
            flatten_product(c, out);
        }
    } else {
        out.push_back(e);
    }
}

inline bool palindromic(const std::vector<Expr>& factors) {
    for (std::size_t i = 0, j = factors.size() - 1; i < j; ++i, --j) {
        if (!equal(factors[i], factors[j])) {
            return false;
        }
    }
    return true;
}

/// {a + b mod 4 : a in x, b in y}.
inline QType sumset(QType x, QType y) {
    QType out;
    for (int a : x.members()) {
        for (int b : y.members()) {
            out |= QType::main((a + b) % 4);
        }
    }
    return out;
}

/// Type of U^m (m >= 1) under the geometric product: a palindromic product,
/// so only the m-fold anticommutator half survives.
inline QType clifford_power_type(QType t, int m) {
    if (m == 0) {
        return QType::main(0);
    }
    if (m == 1) {
        return t;
    }
    std::uint8_t states = 1;
    for (int i = 0; i < m; ++i) {
        states = cliffq::detail::advance_states(states, t);
    }
    return cliffq::detail::states_type(BracketKind::anticommutator, states);
}

/// Type of E^j under the wedge, E the even-residue part of t.
inline QType even_part_power(QType t, int j) {
    const QType even = t & QType::of_residues({0, 2});
    QType out = QType::main(0);
    for (int i = 0; i < j; ++i) {
        out = sumset(out, even);
    }
    return out;
}

/// Exterior power of U = E + O (even and odd residue parts). O ^ O = 0 and E
/// is central under the wedge, so (E + O)^m = E^m + m E^(m-1) ^ O, whose
/// residues are type(E^(m-1)) + t.
inline QType exterior_power_type(QType t, int m) {
    if (m == 0) {
        return QType::main(0);
    }
    return sumset(even_part_power(t, m - 1), t);
}

/// Union of the term types of sum_j sign_j U^j / j!. The term type at j is a
/// function of a finite state advanced once per j, so the walk stops at the
/// first repeated (state, j mod 4).
template <class State, class Advance, class TypeOf>
QType series_closure(SeriesFunction f, int first, State start, Advance advance, TypeOf type_of) {
    std::set<std::pair<State, int>> seen;
    QType out;
    State state = start;
    for (int j = first;; ++j) {
        if (!seen.emplace(state, j % 4).second) {
            return out;
        }
        if (cliffq::detail::series_sign(f, j) != 0) {
            out |= type_of(state, j);
        }
        state = advance(state);
    }
}

inline QType clifford_series_type(SeriesFunction f, QType t) {
    if (t.is_main()) {
        return predict_series_qtype(f, t.main_residue());
    }
    // State: reachable (sum, parity) bits of U^j; j = 0 is the scalar e.
    return series_closure(
        f, 0, std::uint8_t{1}, [t](std::uint8_t s) { return cliffq::detail::advance_states(s, t); },
        [t](std::uint8_t s, int j) {
            if (j == 0) {
                return QType::main(0);
            }
            if (j == 1) {
                return t;
            }
            return cliffq::detail::states_type(BracketKind::anticommutator, s);
        });
}

inline QType exterior_series_type(SeriesFunction f, QType t) {
    const QType even = t & QType::of_residues({0, 2});
    const QType head = cliffq::detail::series_sign(f, 0) != 0 ? QType::main(0) : QType::none();
    // State at j >= 1: type of E^(j-1).
    return head | series_closure(
                      f, 1, QType::main(0).bits(),
                      [even](std::uint8_t s) { return sumset(QType::from_bits(s), even).bits(); },
                      [t](std::uint8_t s, int) { return sumset(QType::from_bits(s), t); });
}

} // namespace detail

/// Bottom-up type of an expression; throws domain_error on an undeclared
/// variable.
inline QType infer(const Expr& e) {
    switch (e->kind) {
    case NodeKind::variable:
        if (!e->declaration) {
            throw domain_error("variable '" + e->name + "' has no type declaration");
        }
        return e->declaration->qtype();
    case NodeKind::scalar: return sgn(e->value) == 0 ? QType::none() : QType::main(0);
    case NodeKind::negate: return infer(e->children[0]);
    case NodeKind::add: return infer(e->children[0]) | infer(e->children[1]);
    case NodeKind::geo_mul: {
        std::vector<Expr> all;
        detail::flatten_product(e, all);
        // Scalar literals only rescale.
        std::vector<Expr> factors;
        for (const auto& f : all) {
            if (f->kind == NodeKind::scalar) {
                if (sgn(f->value) == 0) {
                    return QType::none();
                }
            } else {
                factors.push_back(f);
            }
        }
        if (factors.empty()) {
            return QType::main(0);
        }
        std::vector<QType> types;
        for (const auto& f : factors) {
            types.push_back(infer(f));
        }
        return detail::palindromic(factors) ? infer_palindromic_product(types) : infer_product(types);
    }
    case NodeKind::ext_mul: return detail::sumset(infer(e->children[0]), infer(e->children[1]));
    case NodeKind::bracket: {
        std::vector<QType> types;
        for (const auto& c : e->children) {
            types.push_back(infer(c));
        }
        return infer_kfold(e->bracket, std::span<const QType>(types));
    }
    case NodeKind::power: {
        const QType t = infer(e->children[0]);
        return e->exterior ? detail::exterior_power_type(t, e->exponent) : detail::clifford_power_type(t, e->exponent);
    }
    case NodeKind::function: {
        const QType t = infer(e->children[0]);
        if (t.empty()) {
            // f(0) is f(0) e: cos and cosh give e, exp gives e, sin and sinh give 0.
            return cliffq::detail::series_sign(e->function, 0) != 0 ? QType::main(0) : QType::none();
        }
        return e->exterior ? detail::exterior_series_type(e->function, t) : detail::clifford_series_type(e->function, t);
    }
    }
    return QType::all();
}

} // namespace cliffq::dsl
