#pragma once

// k-fold commutators/anticommutators and the left-nested bracket trees that
// decompose them.
//
//   [U1,...,Uk] = U1 U2 ... Uk - Uk ... U2 U1
//   {U1,...,Uk} = U1 U2 ... Uk + Uk ... U2 U1
//
// A tree is ((U1 o U2) o U3) o ... o Uk with each o either [.,.] or {.,.}.
// Trees with an odd number of commutators form the plus class (they sum to
// the k-fold commutator), the rest the minus class.

#include <bit>
#include <concepts>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliffq/algebra.hpp"
#include "cliffq/qtype.hpp"
#include "cliffq/spectrum.hpp"

namespace cliffq {

template <class T>
concept BracketOperand = std::copyable<T> && requires(const T& a, const T& b, const Rational& c) {
    { a * b } -> std::convertible_to<T>;
    { a + b } -> std::convertible_to<T>;
    { a - b } -> std::convertible_to<T>;
    { c * a } -> std::convertible_to<T>;
};

inline constexpr int max_tree_leaves = 6;

template <BracketOperand T>
T bracket(BracketKind kind, const T& u, const T& v) {
    return kind == BracketKind::commutator ? T(u * v - v * u) : T(u * v + v * u);
}

template <BracketOperand T>
T kfold(BracketKind kind, std::span<const T> us) {
    if (us.size() < 2) {
        throw domain_error("k-fold bracket needs at least two operands");
    }
    T forward = us.front();
    for (std::size_t i = 1; i < us.size(); ++i) {
        forward = forward * us[i];
    }
    T reversed = us.back();
    for (std::size_t i = us.size() - 1; i-- > 0;) {
        reversed = reversed * us[i];
    }
    return kind == BracketKind::commutator ? T(forward - reversed) : T(forward + reversed);
}

template <BracketOperand T>
T kfold(BracketKind kind, const std::vector<T>& us) {
    return kfold(kind, std::span<const T>(us));
}

class BracketTree {
public:
    /// Bit (leaves - 2 - level) of `tags` is the tag of nesting `level`
    /// (level 0 brackets U1 with U2); a set bit means commutator.
    BracketTree(int leaves, std::uint32_t tags) : leaves_(leaves), tags_(tags) {
        if (leaves < 2 || leaves > 31) {
            throw domain_error("bracket tree needs between 2 and 31 leaves");
        }
        if (tags >= (std::uint32_t{1} << (leaves - 1))) {
            throw domain_error("bracket tree tags exceed the number of nestings");
        }
    }

    int leaves() const noexcept { return leaves_; }
    std::uint32_t tags() const noexcept { return tags_; }

    BracketKind kind_at(int level) const {
        if (level < 0 || level > leaves_ - 2) {
            throw domain_error("nesting level out of range");
        }
        return ((tags_ >> (leaves_ - 2 - level)) & 1u) != 0 ? BracketKind::commutator
                                                             : BracketKind::anticommutator;
    }

    int commutator_count() const noexcept { return std::popcount(tags_); }
    bool plus_class() const noexcept { return commutator_count() % 2 == 1; }

    /// The k-fold bracket this tree's class reconstructs.
    BracketKind bracket_class() const noexcept {
        return plus_class() ? BracketKind::commutator : BracketKind::anticommutator;
    }

    /// Nested ASCII form over leaves U1..Uk, e.g. `{[U1,U2],U3}`.
    std::string render() const {
        std::string s = "U1";
        for (int level = 0; level <= leaves_ - 2; ++level) {
            const bool comm = kind_at(level) == BracketKind::commutator;
            s = std::string(comm ? "[" : "{") + s + ",U" + std::to_string(level + 2) + (comm ? "]" : "}");
        }
        return s;
    }

    friend bool operator==(const BracketTree&, const BracketTree&) = default;

private:
    int leaves_;
    std::uint32_t tags_;
};

namespace detail {

/// Trees in counter order: tags descend from all-commutator to all-anticommutator.
inline std::vector<BracketTree> trees_unchecked(int k) {
    std::vector<BracketTree> out;
    const std::uint32_t count = std::uint32_t{1} << (k - 1);
    out.reserve(count);
    for (std::uint32_t j = 0; j < count; ++j) {
        out.emplace_back(k, count - 1 - j);
    }
    return out;
}

inline void check_tree_leaves(int k) {
    if (k < 2 || k > max_tree_leaves) {
        throw domain_error("tree enumeration supports 2 <= k <= " + std::to_string(max_tree_leaves) +
                           ", got " + std::to_string(k));
    }
}

} // namespace detail

/// All 2^(k-1) left-nested trees on k leaves, 2 <= k <= 6.
inline std::vector<BracketTree> enumerate_trees(int k) {
    detail::check_tree_leaves(k);
    return detail::trees_unchecked(k);
}

template <BracketOperand T>
T eval_tree(const BracketTree& tree, std::span<const T> us) {
    if (static_cast<int>(us.size()) != tree.leaves()) {
        throw domain_error("tree " + tree.render() + " expects " + std::to_string(tree.leaves()) +
                           " operands, got " + std::to_string(us.size()));
    }
    T acc = us[0];
    for (int level = 0; level <= tree.leaves() - 2; ++level) {
        acc = bracket(tree.kind_at(level), acc, us[level + 1]);
    }
    return acc;
}

template <BracketOperand T>
T eval_tree(const BracketTree& tree, const std::vector<T>& us) {
    return eval_tree(tree, std::span<const T>(us));
}

/// U1 U2 ... Uk rebuilt as the average of all 2^(k-1) trees.
template <BracketOperand T>
T expand_product(std::span<const T> us) {
    const int k = static_cast<int>(us.size());
    detail::check_tree_leaves(k);
    const auto trees = detail::trees_unchecked(k);
    T sum = eval_tree(trees.front(), us);
    for (std::size_t j = 1; j < trees.size(); ++j) {
        sum = sum + eval_tree(trees[j], us);
    }
    return T(Rational(1, std::uint32_t{1} << (k - 1)) * sum);
}

template <BracketOperand T>
T expand_product(const std::vector<T>& us) {
    return expand_product(std::span<const T>(us));
}

/// The k-fold bracket rebuilt from its class: plus-class trees for the
/// commutator, minus-class trees for the anticommutator, scaled by 1/2^(k-2).
template <BracketOperand T>
T expand_kfold(BracketKind kind, std::span<const T> us) {
    const int k = static_cast<int>(us.size());
    detail::check_tree_leaves(k);
    bool first = true;
    T sum = us.front();
    for (const auto& tree : detail::trees_unchecked(k)) {
        if (tree.bracket_class() != kind) {
            continue;
        }
        T value = eval_tree(tree, us);
        sum = first ? value : T(sum + value);
        first = false;
    }
    return T(Rational(1, std::uint32_t{1} << (k - 2)) * sum);
}

template <BracketOperand T>
T expand_kfold(BracketKind kind, const std::vector<T>& us) {
    return expand_kfold(kind, std::span<const T>(us));
}

/// Type of one tree on main-type leaves, folding the pair formula inward-out.
inline int tree_type(const BracketTree& tree, std::span<const int> types) {
    if (static_cast<int>(types.size()) != tree.leaves()) {
        throw domain_error("tree arity does not match the type list");
    }
    int t = types[0];
    for (int level = 0; level <= tree.leaves() - 2; ++level) {
        t = infer_pair(tree.kind_at(level), t, types[level + 1]);
    }
    return t;
}

/// Common type of every tree in the class of `kind`; throws std::logic_error
/// if two trees disagree or the result differs from the closed form.
inline int class_type_uniformity(BracketKind kind, std::span<const int> types) {
    const int k = static_cast<int>(types.size());
    if (k < 2 || k > 31) {
        throw domain_error("class uniformity needs between 2 and 31 types");
    }
    int common = -1;
    for (const auto& tree : detail::trees_unchecked(k)) {
        if (tree.bracket_class() != kind) {
            continue;
        }
        const int t = tree_type(tree, types);
        if (common >= 0 && t != common) {
            throw std::logic_error("trees of one class disagree on type");
        }
        common = t;
    }
    if (common != infer_kfold(kind, types)) {
        throw std::logic_error("class type differs from the k-fold closed form");
    }
    return common;
}

inline int class_type_uniformity(BracketKind kind, std::initializer_list<int> types) {
    return class_type_uniformity(kind, std::span<const int>(types.begin(), types.size()));
}

/// Grades that can appear in the product of a grade-j and a grade-k element
/// in n generators: |j-k|, |j-k|+2, ..., min(j+k, 2n-j-k).
inline RankSpectrum product_grade_envelope(int j, int k, int n) {
    if (n < 0 || j < 0 || k < 0 || j > n || k > n) {
        throw domain_error("grades must lie in [0, n]");
    }
    const int low = j > k ? j - k : k - j;
    const int high = std::min(j + k, 2 * n - j - k);
    return progression(low, 2, high);
}

} // namespace cliffq
