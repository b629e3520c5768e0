#pragma once

// Random multivectors of a declared quaternion type or rank.

#include <cstdint>
#include <random>
#include <vector>

#include "cliffq/algebra.hpp"
#include "cliffq/error.hpp"
#include "cliffq/qtype.hpp"

namespace cliffq {

using Rng = std::mt19937_64;

inline constexpr int default_coefficient_range = 9;

/// Every residue of t needs a grade r, r+4, ... that fits in n generators.
inline bool type_feasible(const Signature& sig, QType t) {
    for (int r : t.members()) {
        if (r > sig.n()) {
            return false;
        }
    }
    return true;
}

namespace detail {

/// Dense integer coefficients in [-range, range] on the selected blades, with
/// at least one nonzero coefficient.
template <class Select>
std::vector<Multivector::Term> random_group(const Signature& sig, Rng& rng, int range, Select select) {
    std::vector<Blade> blades;
    for (std::uint32_t bits = 0; bits < sig.dimension(); ++bits) {
        if (select(Blade{bits})) {
            blades.push_back(Blade{bits});
        }
    }
    std::uniform_int_distribution<int> coefficient(-range, range);
    std::vector<Multivector::Term> terms;
    for (Blade b : blades) {
        const int c = coefficient(rng);
        if (c != 0) {
            terms.emplace_back(b, Rational(c));
        }
    }
    if (terms.empty() && !blades.empty()) {
        std::uniform_int_distribution<std::size_t> pick(0, blades.size() - 1);
        std::uniform_int_distribution<int> magnitude(1, range);
        const int sign = std::uniform_int_distribution<int>(0, 1)(rng) == 0 ? -1 : 1;
        terms.emplace_back(blades[pick(rng)], Rational(sign * magnitude(rng)));
    }
    return terms;
}

} // namespace detail

/// Random element of quaternion type t with a nonzero component in every
/// declared residue. Throws infeasible_error if some residue has no blades.
inline Multivector random_of_type(const Signature& sig, QType t, Rng& rng, int range = default_coefficient_range) {
    if (!type_feasible(sig, t)) {
        throw infeasible_error("type " + t.render() + " has no nonzero element in " + sig.name());
    }
    std::vector<Multivector::Term> terms;
    for (int r : t.members()) {
        auto group = detail::random_group(sig, rng, range, [r](Blade b) { return b.grade() % 4 == r; });
        terms.insert(terms.end(), group.begin(), group.end());
    }
    return Multivector(sig, std::move(terms));
}

/// Random nonzero homogeneous element of grade k.
inline Multivector random_of_rank(const Signature& sig, int k, Rng& rng, int range = default_coefficient_range) {
    if (k < 0 || k > sig.n()) {
        throw infeasible_error("rank " + std::to_string(k) + " has no nonzero element in " + sig.name());
    }
    return Multivector(sig, detail::random_group(sig, rng, range, [k](Blade b) { return b.grade() == k; }));
}

/// Random element over all 2^n blades, nonzero.
inline Multivector random_multivector(const Signature& sig, Rng& rng, int range = default_coefficient_range) {
    return Multivector(sig, detail::random_group(sig, rng, range, [](Blade) { return true; }));
}

/// Real coefficients drawn uniformly from [-bound, bound] on blades of type t.
inline ApproxMultivector random_real_of_type(const Signature& sig, QType t, Rng& rng, double bound = 1.0) {
    std::uniform_real_distribution<double> coefficient(-bound, bound);
    std::vector<ApproxMultivector::Term> terms;
    for (std::uint32_t bits = 0; bits < sig.dimension(); ++bits) {
        if (t.contains(Blade{bits}.grade() % 4)) {
            terms.emplace_back(Blade{bits}, coefficient(rng));
        }
    }
    return ApproxMultivector(sig, std::move(terms));
}

} // namespace cliffq
