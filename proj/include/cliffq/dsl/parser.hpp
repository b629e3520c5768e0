#pragma once

// Recursive-descent parser. Precedence, loosest first:
//   sum      := product (('+' | '-') product)*
//   product  := wedge (['*'] wedge)*          juxtaposition is a product
//   wedge    := unary ('^' unary)*
//   unary    := '-' unary | postfix
//   postfix  := primary (('**' | '^^') INT)*
//   primary  := NUMBER | NAME [':' DECL] | FN '(' sum ')' | '(' sum ')'
//             | '[' sum (',' sum)+ ']' | '{' sum (',' sum)+ '}'
// A function call is a name immediately followed by '('.

#include <cctype>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "cliffq/dsl/ast.hpp"
#include "cliffq/error.hpp"

namespace cliffq::dsl {

inline constexpr int max_exponent = 64;

struct ParseOptions {
    /// Every variable must carry `:type` or `:#rank` on its first occurrence.
    bool require_declarations = true;
};

namespace detail {

class Parser {
public:
    Parser(std::string_view src, ParseOptions options) : src_(src), options_(options) {}

    Expr parse() {
        skip_space();
        if (at_end()) {
            fail("empty expression");
        }
        Expr e = sum();
        skip_space();
        if (!at_end()) {
            fail(std::string("unexpected '") + src_[pos_] + "'");
        }
        for (auto& node : pending_) {
            auto it = declared_.find(node->name);
            if (it != declared_.end()) {
                node->declaration = it->second;
            }
        }
        return e;
    }

private:
    [[noreturn]] void fail(const std::string& message) const { throw parse_error(message, pos_); }
    [[noreturn]] void fail_at(const std::string& message, std::size_t at) const { throw parse_error(message, at); }

    bool at_end() const { return pos_ >= src_.size(); }
    char peek(std::size_t ahead = 0) const { return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0'; }

    void skip_space() {
        while (!at_end() && std::isspace(static_cast<unsigned char>(src_[pos_]))) {
            ++pos_;
        }
    }

    bool accept(std::string_view token) {
        skip_space();
        if (src_.substr(pos_, token.size()) == token) {
            pos_ += token.size();
            return true;
        }
        return false;
    }

    void expect(std::string_view token) {
        if (!accept(token)) {
            fail("expected '" + std::string(token) + "'");
        }
    }

    static bool name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
    static bool name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
    static bool digit(char c) { return std::isdigit(static_cast<unsigned char>(c)) != 0; }

    bool starts_operand() {
        skip_space();
        const char c = peek();
        return name_start(c) || digit(c) || c == '(' || c == '[' || c == '{';
    }

    Expr sum() {
        Expr left = product();
        for (;;) {
            skip_space();
            const std::size_t at = pos_;
            if (accept("+")) {
                left = make_add(left, product(), at);
            } else if (peek() == '-') {
                ++pos_;
                left = make_add(left, make_negate(product(), at), at);
            } else {
                return left;
            }
        }
    }

    Expr product() {
        skip_space();
        const std::size_t at = pos_;
        std::vector<Expr> factors{wedge()};
        for (;;) {
            skip_space();
            if (peek() == '*' && peek(1) != '*') {
                ++pos_;
                factors.push_back(wedge());
            } else if (starts_operand()) {
                factors.push_back(wedge());
            } else {
                break;
            }
        }
        return factors.size() == 1 ? factors.front() : make_geo_mul(std::move(factors), at);
    }

    Expr wedge() {
        Expr left = unary();
        for (;;) {
            skip_space();
            const std::size_t at = pos_;
            if (peek() == '^' && peek(1) != '^') {
                ++pos_;
                left = make_ext_mul(left, unary(), at);
            } else {
                return left;
            }
        }
    }

    Expr unary() {
        skip_space();
        const std::size_t at = pos_;
        if (peek() == '-') {
            ++pos_;
            return make_negate(unary(), at);
        }
        return postfix();
    }

    Expr postfix() {
        Expr base = primary();
        for (;;) {
            skip_space();
            const std::size_t at = pos_;
            bool exterior;
            if (accept("**")) {
                exterior = false;
            } else if (accept("^^")) {
                exterior = true;
            } else {
                return base;
            }
            base = make_power(base, exponent(), exterior, at);
        }
    }

    int exponent() {
        skip_space();
        const std::size_t at = pos_;
        if (!digit(peek())) {
            fail("expected a non-negative integer exponent");
        }
        long value = 0;
        while (digit(peek())) {
            value = value * 10 + (src_[pos_++] - '0');
            if (value > max_exponent) {
                fail_at("exponent exceeds " + std::to_string(max_exponent), at);
            }
        }
        return static_cast<int>(value);
    }

    std::string digits() {
        const std::size_t start = pos_;
        while (digit(peek())) {
            ++pos_;
        }
        return std::string(src_.substr(start, pos_ - start));
    }

    Expr number() {
        const std::size_t at = pos_;
        std::string whole = digits();
        if (peek() == '.' && digit(peek(1))) {
            ++pos_;
            const std::string frac = digits();
            mpz_class num(whole + frac, 10);
            mpz_class den;
            mpz_ui_pow_ui(den.get_mpz_t(), 10, frac.size());
            Rational r(num, den);
            r.canonicalize();
            return make_scalar(r, at);
        }
        if (peek() == '/' && digit(peek(1))) {
            ++pos_;
            const std::string den = digits();
            if (mpz_class(den, 10) == 0) {
                fail_at("zero denominator", at);
            }
            return make_scalar(parse_rational(whole + "/" + den), at);
        }
        return make_scalar(parse_rational(whole), at);
    }

    Declaration declaration() {
        const std::size_t at = pos_;
        if (peek() == '#') {
            ++pos_;
            if (!digit(peek())) {
                fail("expected a rank after '#'");
            }
            const std::string k = digits();
            if (k.size() > 2) {
                fail_at("rank too large", at);
            }
            return Declaration::of_rank(std::stoi(k));
        }
        QType t;
        while (peek() >= '0' && peek() <= '3') {
            t |= QType::main(peek() - '0');
            ++pos_;
            if (peek() == '~') {
                ++pos_;
            }
        }
        if (t.empty()) {
            fail("expected a type such as 1~, 0~2~ or #3");
        }
        if (digit(peek())) {
            fail("type residues lie in 0..3");
        }
        return Declaration::of_type(t);
    }

    Expr variable(std::string name, std::size_t at) {
        std::optional<Declaration> decl;
        if (peek() == ':') {
            ++pos_;
            decl = declaration();
            auto it = declared_.find(name);
            if (it != declared_.end() && !(it->second == *decl)) {
                fail_at("conflicting redeclaration of '" + name + "' (" + it->second.render() + " vs " +
                            decl->render() + ")",
                        at);
            }
            declared_.emplace(name, *decl);
        } else if (auto it = declared_.find(name); it != declared_.end()) {
            decl = it->second;
        } else if (options_.require_declarations) {
            fail_at("variable '" + name + "' needs a type declaration on first use", at);
        }
        auto node = dsl::detail::node(NodeKind::variable, at);
        node->name = std::move(name);
        node->declaration = decl;
        if (!decl) {
            pending_.push_back(node);
        }
        return node;
    }

    std::vector<Expr> operands(char close) {
        std::vector<Expr> out{sum()};
        while (accept(",")) {
            out.push_back(sum());
        }
        expect(std::string(1, close));
        return out;
    }

    Expr primary() {
        skip_space();
        const std::size_t at = pos_;
        const char c = peek();
        if (at_end()) {
            fail("unexpected end of expression");
        }
        if (digit(c)) {
            return number();
        }
        if (c == '(') {
            ++pos_;
            Expr inner = sum();
            expect(")");
            return inner;
        }
        if (c == '[' || c == '{') {
            ++pos_;
            auto ops = operands(c == '[' ? ']' : '}');
            if (ops.size() < 2) {
                fail_at("bracket needs at least two operands", at);
            }
            return make_bracket(c == '[' ? BracketKind::commutator : BracketKind::anticommutator, std::move(ops),
                                at);
        }
        if (name_start(c)) {
            while (name_char(peek())) {
                ++pos_;
            }
            std::string name(src_.substr(at, pos_ - at));
            if (peek() == '(') {
                return call(name, at);
            }
            return variable(std::move(name), at);
        }
        fail(std::string("unexpected '") + c + "'");
    }

    Expr call(const std::string& name, std::size_t at) {
        const bool exterior = name.size() > 1 && name[0] == 'w';
        auto f = parse_function_name(exterior ? name.substr(1) : name);
        if (!f) {
            fail_at("unknown function '" + name + "'", at);
        }
        ++pos_;
        Expr arg = sum();
        expect(")");
        return make_function(*f, exterior, arg, at);
    }

    std::string_view src_;
    ParseOptions options_;
    std::size_t pos_ = 0;
    std::map<std::string, Declaration> declared_;
    std::vector<std::shared_ptr<Node>> pending_;
};

} // namespace detail

inline Expr parse(std::string_view src, ParseOptions options = {}) { return detail::Parser(src, options).parse(); }

} // namespace cliffq::dsl
