#pragma once

// Quaternion types: subsets of the four residues {0,1,2,3} of grade mod 4.
// The empty set is the type of the zero element, so "zero belongs to every
// type" becomes plain subset containment.

#include <array>
#include <bit>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "cliffq/algebra.hpp"
#include "cliffq/error.hpp"

namespace cliffq {

enum class BracketKind { commutator, anticommutator };

inline const char* kind_name(BracketKind kind) {
    return kind == BracketKind::commutator ? "commutator" : "anticommutator";
}

class QType {
public:
    constexpr QType() = default;

    static constexpr QType none() noexcept { return {}; }
    static constexpr QType all() noexcept { return from_bits(0xF); }
    static constexpr QType from_bits(std::uint8_t bits) noexcept {
        QType t;
        t.bits_ = bits & 0xF;
        return t;
    }
    static QType main(int residue) {
        check_residue(residue);
        return from_bits(static_cast<std::uint8_t>(1u << residue));
    }
    static QType of_residues(std::initializer_list<int> residues) {
        QType t;
        for (int r : residues) {
            t = t | main(r);
        }
        return t;
    }

    /// Accepts `0~2~`, `02`, `1`, `1~` and `⊥` (or `_|_`) for the empty type.
    static QType parse(const std::string& text) {
        if (text == "⊥" || text == "_|_") {
            return none();
        }
        QType t;
        bool any = false;
        for (std::size_t i = 0; i < text.size(); ++i) {
            const char c = text[i];
            if (c >= '0' && c <= '3') {
                t = t | main(c - '0');
                any = true;
                if (i + 1 < text.size() && text[i + 1] == '~') {
                    ++i;
                }
            } else {
                throw domain_error("malformed quaternion type '" + text + "'");
            }
        }
        if (!any) {
            throw domain_error("malformed quaternion type '" + text + "'");
        }
        return t;
    }

    constexpr std::uint8_t bits() const noexcept { return bits_; }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr int size() const noexcept { return std::popcount(bits_); }
    constexpr bool contains(int residue) const noexcept {
        return residue >= 0 && residue < 4 && ((bits_ >> residue) & 1u) != 0;
    }
    constexpr bool is_main() const noexcept { return size() == 1; }

    int main_residue() const {
        if (!is_main()) {
            throw domain_error("type " + render() + " is not a main type");
        }
        return std::countr_zero(bits_);
    }

    std::vector<int> members() const {
        std::vector<int> out;
        for (int r = 0; r < 4; ++r) {
            if (contains(r)) {
                out.push_back(r);
            }
        }
        return out;
    }

    constexpr bool subset_of(QType other) const noexcept { return (bits_ & ~other.bits_) == 0; }

    friend constexpr QType operator|(QType a, QType b) noexcept { return from_bits(a.bits_ | b.bits_); }
    friend constexpr QType operator&(QType a, QType b) noexcept { return from_bits(a.bits_ & b.bits_); }
    QType& operator|=(QType o) noexcept {
        bits_ |= o.bits_;
        return *this;
    }
    friend constexpr bool operator==(QType, QType) = default;

    /// `0~`, `0~2~`, ...; `⊥` for the empty type.
    std::string render() const {
        if (empty()) {
            return "⊥";
        }
        std::string out;
        for (int r : members()) {
            out += static_cast<char>('0' + r);
            out += '~';
        }
        return out;
    }

    static void check_residue(int residue) {
        if (residue < 0 || residue > 3) {
            throw domain_error("quaternion type residue " + std::to_string(residue) + " outside 0..3");
        }
    }

private:
    std::uint8_t bits_ = 0;
};

/// The four compound-free types, handy for exhaustive loops.
inline constexpr std::array<int, 4> main_residues{0, 1, 2, 3};

inline QType qtype_of(const Multivector& u) {
    QType t;
    for (const auto& term : u.terms()) {
        t |= QType::main(term.first.grade() % 4);
    }
    return t;
}

/// Residues carrying a coefficient larger than `threshold` in magnitude.
inline QType qtype_of(const ApproxMultivector& u, double threshold) {
    QType t;
    for (const auto& [blade, c] : u.terms()) {
        if (std::abs(c) > threshold) {
            t |= QType::main(blade.grade() % 4);
        }
    }
    return t;
}

inline QType qtype_of(RankSpectrum grades) {
    QType t;
    for (int g : grades.members()) {
        t |= QType::main(g % 4);
    }
    return t;
}

// ---------------------------------------------------------------------------
// Musical operations

/// The value of each enumerator is the residue mask it XORs in, which makes
/// composition a XOR as well (Klein four-group Z2 x Z2).
enum class MusicalOp : std::uint8_t { identity = 0, flat = 1, sharp = 2, natural = 3 };

inline constexpr std::array<MusicalOp, 4> all_musical_ops{MusicalOp::identity, MusicalOp::sharp,
                                                          MusicalOp::flat, MusicalOp::natural};

inline const char* op_name(MusicalOp op) {
    switch (op) {
    case MusicalOp::identity: return "I";
    case MusicalOp::sharp: return "sharp";
    case MusicalOp::flat: return "flat";
    case MusicalOp::natural: return "natural";
    }
    return "?";
}

inline int musical_apply(MusicalOp op, int residue) {
    QType::check_residue(residue);
    return residue ^ static_cast<int>(op);
}

inline QType musical_apply(MusicalOp op, QType t) {
    QType out;
    for (int r : t.members()) {
        out |= QType::main(musical_apply(op, r));
    }
    return out;
}

inline constexpr MusicalOp musical_compose(MusicalOp a, MusicalOp b) noexcept {
    return static_cast<MusicalOp>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}

/// The operation sending `from` to `to`; exists for every pair of residues.
inline MusicalOp musical_between(int from, int to) {
    QType::check_residue(from);
    QType::check_residue(to);
    return static_cast<MusicalOp>(from ^ to);
}

// ---------------------------------------------------------------------------
// Closed-form type inference for main types

namespace detail {

inline int bracket_residue(BracketKind kind, int sum, int pair_sum) {
    const int sign = (pair_sum % 2 == 0) ? 1 : -1;
    const int v = kind == BracketKind::commutator ? sum + 1 + sign : sum + 1 - sign;
    return ((v % 4) + 4) % 4;
}

} // namespace detail

/// Type of [U,V] or {U,V} for U, V of main types k, l.
inline int infer_pair(BracketKind kind, int k, int l) {
    QType::check_residue(k);
    QType::check_residue(l);
    return detail::bracket_residue(kind, k + l, k * l);
}

/// Type of the k-fold bracket U1 U2 ... Uk -/+ Uk ... U2 U1 for main types.
inline int infer_kfold(BracketKind kind, std::span<const int> types) {
    if (types.size() < 2) {
        throw domain_error("k-fold bracket needs at least two operands");
    }
    int sum = 0;
    int pair_sum = 0;
    for (int a : types) {
        QType::check_residue(a);
        pair_sum += a * sum;
        sum += a;
    }
    return detail::bracket_residue(kind, sum, pair_sum);
}

inline int infer_kfold(BracketKind kind, std::initializer_list<int> types) {
    return infer_kfold(kind, std::span<const int>(types.begin(), types.size()));
}

namespace detail {

/// One more slot over the (sum mod 4, pairwise-sum parity) state set; bit
/// 2*sum + parity.
inline std::uint8_t advance_states(std::uint8_t states, QType t) {
    std::uint8_t next = 0;
    for (int s = 0; s < 8; ++s) {
        if (((states >> s) & 1u) == 0) {
            continue;
        }
        const int sum = s / 2;
        const int parity = s % 2;
        for (int a : t.members()) {
            const int nsum = (sum + a) % 4;
            const int npar = (parity + a * sum) % 2;
            next |= static_cast<std::uint8_t>(1u << (2 * nsum + npar));
        }
    }
    return next;
}

/// Reachable states over every choice of one residue per slot.
inline std::uint8_t reachable_states(std::span<const QType> types) {
    std::uint8_t states = 1; // sum 0, parity 0
    for (QType t : types) {
        states = advance_states(states, t);
    }
    return states;
}

inline QType states_type(BracketKind kind, std::uint8_t states) {
    QType out;
    for (int s = 0; s < 8; ++s) {
        if ((states >> s) & 1u) {
            out |= QType::main(bracket_residue(kind, s / 2, s % 2));
        }
    }
    return out;
}

} // namespace detail

/// k-fold bracket type for arbitrary (compound) operand types: the union of
/// the main-type formula over every residue tuple.
inline QType infer_kfold(BracketKind kind, std::span<const QType> types) {
    if (types.size() < 2) {
        throw domain_error("k-fold bracket needs at least two operands");
    }
    return detail::states_type(kind, detail::reachable_states(types));
}

/// Type of U1 U2 ... Uk for main types: 0~2~ for an even residue sum, else 1~3~.
inline QType infer_product(std::span<const int> types) {
    if (types.empty()) {
        throw domain_error("product needs at least one factor");
    }
    int sum = 0;
    for (int a : types) {
        QType::check_residue(a);
        sum += a;
    }
    return sum % 2 == 0 ? QType::of_residues({0, 2}) : QType::of_residues({1, 3});
}

inline QType infer_product(std::initializer_list<int> types) {
    return infer_product(std::span<const int>(types.begin(), types.size()));
}

inline QType infer_product(std::span<const QType> types) {
    if (types.empty()) {
        throw domain_error("product needs at least one factor");
    }
    if (types.size() == 1) {
        return types[0];
    }
    const std::uint8_t states = detail::reachable_states(types);
    QType out;
    for (int s = 0; s < 8; ++s) {
        if ((states >> s) & 1u) {
            out |= (s / 2) % 2 == 0 ? QType::of_residues({0, 2}) : QType::of_residues({1, 3});
        }
    }
    return out;
}

/// Product whose factor list reads the same reversed (U V V U, U U U, ...):
/// the k-fold commutator vanishes, so only the anticommutator half survives.
inline QType infer_palindromic_product(std::span<const QType> types) {
    if (types.empty()) {
        throw domain_error("product needs at least one factor");
    }
    if (types.size() == 1) {
        return types[0];
    }
    return infer_kfold(BracketKind::anticommutator, types);
}

/// The musical operation op with op(k) = infer_pair(kind, k, partner) for all k.
inline MusicalOp infer_pair_musical(BracketKind kind, int partner) {
    const MusicalOp op = musical_between(0, infer_pair(kind, 0, partner));
    for (int k : main_residues) {
        if (musical_apply(op, k) != infer_pair(kind, k, partner)) {
            throw std::logic_error("pair bracket is not a musical operation of k");
        }
    }
    return op;
}

/// The musical operation op with op(k) = infer_kfold(kind, {a, b, k}) for all k.
inline MusicalOp infer_triple_musical(BracketKind kind, int a, int b) {
    const MusicalOp op = musical_between(0, infer_kfold(kind, {a, b, 0}));
    for (int k : main_residues) {
        if (musical_apply(op, k) != infer_kfold(kind, {a, b, k})) {
            throw std::logic_error("threefold bracket is not a musical operation of k");
        }
    }
    return op;
}

struct TripleRow {
    int k;
    int l;
    int m;
    int anticommutator;
    int commutator;
    QType both;
};

/// All 20 multisets k <= l <= m of main types, lexicographic.
inline std::vector<TripleRow> triple_table() {
    std::vector<TripleRow> rows;
    for (int k = 0; k < 4; ++k) {
        for (int l = k; l < 4; ++l) {
            for (int m = l; m < 4; ++m) {
                const int anti = infer_kfold(BracketKind::anticommutator, {k, l, m});
                const int comm = infer_kfold(BracketKind::commutator, {k, l, m});
                rows.push_back({k, l, m, anti, comm, QType::main(anti) | QType::main(comm)});
            }
        }
    }
    return rows;
}

} // namespace cliffq
