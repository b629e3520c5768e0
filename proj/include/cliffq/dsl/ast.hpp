#pragma once

// Expression trees of the typed multivector language.

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cliffq/error.hpp"
#include "cliffq/powers.hpp"
#include "cliffq/qtype.hpp"
#include "cliffq/rational.hpp"

namespace cliffq::dsl {

/// `U:1~`, `U:0~2~` (type) or `U:#3` (rank).
class Declaration {
public:
    static Declaration of_type(QType t) {
        if (t.empty()) {
            throw domain_error("a variable cannot be declared with the empty type");
        }
        Declaration d;
        d.type_ = t;
        return d;
    }
    static Declaration of_rank(int k) {
        if (k < 0) {
            throw domain_error("negative rank");
        }
        Declaration d;
        d.rank_ = k;
        d.type_ = QType::main(k % 4);
        return d;
    }

    bool is_rank() const noexcept { return rank_.has_value(); }
    int rank() const { return rank_.value(); }
    /// The declared type; a rank k declares the main type k mod 4.
    QType qtype() const noexcept { return type_; }

    std::string render() const { return is_rank() ? "#" + std::to_string(*rank_) : type_.render(); }

    friend bool operator==(const Declaration&, const Declaration&) = default;

private:
    Declaration() = default;
    QType type_;
    std::optional<int> rank_;
};

enum class NodeKind { variable, scalar, negate, add, geo_mul, ext_mul, bracket, power, function };

struct Node;
using Expr = std::shared_ptr<const Node>;

struct Node {
    NodeKind kind = NodeKind::scalar;
    std::size_t position = 0;
    std::vector<Expr> children;

    // variable
    std::string name;
    std::optional<Declaration> declaration;
    // scalar
    Rational value;
    // bracket
    BracketKind bracket = BracketKind::commutator;
    // power: exterior selects ^^ over **; function: exterior selects the w-prefixed variant
    int exponent = 0;
    bool exterior = false;
    SeriesFunction function = SeriesFunction::exp;
};

namespace detail {

inline std::shared_ptr<Node> node(NodeKind kind, std::size_t position, std::vector<Expr> children = {}) {
    auto n = std::make_shared<Node>();
    n->kind = kind;
    n->position = position;
    n->children = std::move(children);
    return n;
}

} // namespace detail

inline Expr make_variable(std::string name, std::optional<Declaration> declaration, std::size_t position = 0) {
    auto n = detail::node(NodeKind::variable, position);
    n->name = std::move(name);
    n->declaration = std::move(declaration);
    return n;
}

inline Expr make_scalar(Rational value, std::size_t position = 0) {
    if (sgn(value) < 0) {
        throw domain_error("scalar literals are non-negative; use negation");
    }
    auto n = detail::node(NodeKind::scalar, position);
    n->value = std::move(value);
    return n;
}

inline Expr make_negate(Expr operand, std::size_t position = 0) {
    return detail::node(NodeKind::negate, position, {std::move(operand)});
}

inline Expr make_add(Expr a, Expr b, std::size_t position = 0) {
    return detail::node(NodeKind::add, position, {std::move(a), std::move(b)});
}

inline Expr make_geo_mul(std::vector<Expr> factors, std::size_t position = 0) {
    if (factors.size() < 2) {
        throw domain_error("geometric product needs at least two factors");
    }
    return detail::node(NodeKind::geo_mul, position, std::move(factors));
}

inline Expr make_ext_mul(Expr a, Expr b, std::size_t position = 0) {
    return detail::node(NodeKind::ext_mul, position, {std::move(a), std::move(b)});
}

inline Expr make_bracket(BracketKind kind, std::vector<Expr> operands, std::size_t position = 0) {
    if (operands.size() < 2) {
        throw domain_error("bracket needs at least two operands");
    }
    auto n = detail::node(NodeKind::bracket, position, std::move(operands));
    n->bracket = kind;
    return n;
}

inline Expr make_power(Expr base, int exponent, bool exterior, std::size_t position = 0) {
    if (exponent < 0) {
        throw domain_error("negative exponent");
    }
    auto n = detail::node(NodeKind::power, position, {std::move(base)});
    n->exponent = exponent;
    n->exterior = exterior;
    return n;
}

inline Expr make_function(SeriesFunction f, bool exterior, Expr operand, std::size_t position = 0) {
    auto n = detail::node(NodeKind::function, position, {std::move(operand)});
    n->function = f;
    n->exterior = exterior;
    return n;
}

inline std::string function_spelling(SeriesFunction f, bool exterior) {
    return (exterior ? "w" : "") + std::string(function_name(f));
}

/// Structural equality; source positions are ignored.
inline bool equal(const Expr& a, const Expr& b) {
    if (a->kind != b->kind || a->children.size() != b->children.size()) {
        return false;
    }
    switch (a->kind) {
    case NodeKind::variable:
        if (a->name != b->name || a->declaration != b->declaration) {
            return false;
        }
        break;
    case NodeKind::scalar:
        if (a->value != b->value) {
            return false;
        }
        break;
    case NodeKind::bracket:
        if (a->bracket != b->bracket) {
            return false;
        }
        break;
    case NodeKind::power:
        if (a->exponent != b->exponent || a->exterior != b->exterior) {
            return false;
        }
        break;
    case NodeKind::function:
        if (a->function != b->function || a->exterior != b->exterior) {
            return false;
        }
        break;
    default: break;
    }
    for (std::size_t i = 0; i < a->children.size(); ++i) {
        if (!equal(a->children[i], b->children[i])) {
            return false;
        }
    }
    return true;
}

namespace detail {

inline bool self_delimited(const Expr& e) {
    switch (e->kind) {
    case NodeKind::variable:
    case NodeKind::scalar:
    case NodeKind::bracket:
    case NodeKind::function: return true;
    default: return false;
    }
}

} // namespace detail

inline std::string render(const Expr& e);

namespace detail {

inline std::string operand(const Expr& e) { return self_delimited(e) ? render(e) : "(" + render(e) + ")"; }

} // namespace detail

/// Fully parenthesized source text; parses back to an equal tree.
inline std::string render(const Expr& e) {
    switch (e->kind) {
    case NodeKind::variable:
        return e->declaration ? e->name + ":" + e->declaration->render() : e->name;
    case NodeKind::scalar: return to_string(e->value);
    case NodeKind::negate: return "-" + detail::operand(e->children[0]);
    case NodeKind::add: return detail::operand(e->children[0]) + " + " + detail::operand(e->children[1]);
    case NodeKind::geo_mul: {
        std::string s;
        for (std::size_t i = 0; i < e->children.size(); ++i) {
            s += (i == 0 ? "" : " * ") + detail::operand(e->children[i]);
        }
        return s;
    }
    case NodeKind::ext_mul: return detail::operand(e->children[0]) + " ^ " + detail::operand(e->children[1]);
    case NodeKind::bracket: {
        const bool comm = e->bracket == BracketKind::commutator;
        std::string s = comm ? "[" : "{";
        for (std::size_t i = 0; i < e->children.size(); ++i) {
            s += (i == 0 ? "" : ", ") + render(e->children[i]);
        }
        return s + (comm ? "]" : "}");
    }
    case NodeKind::power:
        return detail::operand(e->children[0]) + (e->exterior ? " ^^ " : " ** ") + std::to_string(e->exponent);
    case NodeKind::function:
        return function_spelling(e->function, e->exterior) + "(" + render(e->children[0]) + ")";
    }
    return "?";
}

/// Variables in order of first appearance (depth-first, left to right),
/// each with the declaration of its first declared occurrence.
struct VariableInfo {
    std::string name;
    std::optional<Declaration> declaration;
};

inline void collect_variables(const Expr& e, std::vector<VariableInfo>& out) {
    if (e->kind == NodeKind::variable) {
        for (auto& v : out) {
            if (v.name == e->name) {
                if (!v.declaration) {
                    v.declaration = e->declaration;
                }
                return;
            }
        }
        out.push_back({e->name, e->declaration});
        return;
    }
    for (const auto& c : e->children) {
        collect_variables(c, out);
    }
}

inline std::vector<VariableInfo> variables(const Expr& e) {
    std::vector<VariableInfo> out;
    collect_variables(e, out);
    return out;
}

} // namespace cliffq::dsl
