#pragma once

// Multivector arithmetic in the real Clifford algebra Cl(p,q).
//
// Basis blades are bit-sets: generator e^a (1-based) is bit a-1, so the
// blade e^{a1...ak} with a1 < ... < ak has exactly k bits set and the
// empty set is the identity e. Multivectors are sparse, sorted by blade
// bits, and never store a zero coefficient.

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "cliffq/error.hpp"
#include "cliffq/rational.hpp"
#include "cliffq/spectrum.hpp"

namespace cliffq {

inline constexpr int max_generators = 12;

class Signature {
public:
    Signature(int p, int q) : p_(p), q_(q) {
        if (p < 0 || q < 0) {
            throw domain_error("signature counts must be nonnegative");
        }
        if (p + q < 1 || p + q > max_generators) {
            throw domain_error("Cl(" + std::to_string(p) + "," + std::to_string(q) +
                               ") outside supported range 1 <= n <= " +
                               std::to_string(max_generators));
        }
    }

    int p() const noexcept { return p_; }
    int q() const noexcept { return q_; }
    int n() const noexcept { return p_ + q_; }

    /// Number of basis blades, 2^n.
    std::uint32_t dimension() const noexcept { return std::uint32_t{1} << n(); }

    /// Diagonal metric entry for generator a (1-based).
    int metric(int a) const {
        if (a < 1 || a > n()) {
            throw domain_error("generator index " + std::to_string(a) + " out of range");
        }
        return a <= p_ ? 1 : -1;
    }

    std::string name() const { return "Cl(" + std::to_string(p_) + "," + std::to_string(q_) + ")"; }

    friend bool operator==(const Signature&, const Signature&) = default;

private:
    int p_;
    int q_;
};

struct Blade {
    std::uint32_t bits = 0;

    constexpr int grade() const noexcept { return std::popcount(bits); }
    bool fits(const Signature& sig) const noexcept { return bits < sig.dimension(); }

    static constexpr Blade identity() noexcept { return {}; }

    static Blade generator(int a) {
        if (a < 1 || a > max_generators) {
            throw domain_error("generator index " + std::to_string(a) + " out of range");
        }
        return {std::uint32_t{1} << (a - 1)};
    }

    /// Blade from strictly increasing 1-based generator indices.
    static Blade from_indices(std::span<const int> indices) {
        Blade b;
        int last = 0;
        for (int a : indices) {
            if (a <= last) {
                throw domain_error("blade indices must be strictly increasing");
            }
            b.bits |= generator(a).bits;
            last = a;
        }
        return b;
    }

    std::vector<int> indices() const {
        std::vector<int> out;
        for (int i = 0; i < 32; ++i) {
            if ((bits >> i) & 1u) {
                out.push_back(i + 1);
            }
        }
        return out;
    }

    friend constexpr auto operator<=>(Blade, Blade) = default;
};

struct BladeProduct {
    int sign; // -1, 0 or +1
    Blade blade;
};

/// Parity of the transpositions needed to merge e^a e^b into canonical order.
constexpr int reorder_sign(std::uint32_t a, std::uint32_t b) noexcept {
    int swaps = 0;
    for (a >>= 1; a != 0; a >>= 1) {
        swaps += std::popcount(a & b);
    }
    return (swaps & 1) != 0 ? -1 : 1;
}

inline BladeProduct blade_product(const Signature& sig, Blade a, Blade b) {
    int sign = reorder_sign(a.bits, b.bits);
    const std::uint32_t negative_mask = (sig.dimension() - 1) & ~((std::uint32_t{1} << sig.p()) - 1);
    if ((std::popcount(a.bits & b.bits & negative_mask) & 1) != 0) {
        sign = -sign;
    }
    return {sign, Blade{a.bits ^ b.bits}};
}

/// Exterior product of basis blades: zero when they share a generator.
constexpr BladeProduct blade_wedge(Blade a, Blade b) noexcept {
    if ((a.bits & b.bits) != 0) {
        return {0, Blade{}};
    }
    return {reorder_sign(a.bits, b.bits), Blade{a.bits | b.bits}};
}

namespace detail {

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_zero(double d) { return d == 0.0; }

inline double magnitude(const Rational& r) { return std::abs(r.get_d()); }
inline double magnitude(double d) { return std::abs(d); }

} // namespace detail

template <class Scalar>
class BasicMultivector {
public:
    using scalar_type = Scalar;
    using Term = std::pair<Blade, Scalar>;

    explicit BasicMultivector(Signature sig) : sig_(sig) {}

    /// Sorts, merges repeated blades, and drops zero coefficients.
    BasicMultivector(Signature sig, std::vector<Term> terms) : sig_(sig), terms_(std::move(terms)) {
        for (const auto& [blade, c] : terms_) {
            if (!blade.fits(sig_)) {
                throw domain_error("blade does not fit in " + sig_.name());
            }
        }
        std::stable_sort(terms_.begin(), terms_.end(),
                         [](const Term& x, const Term& y) { return x.first < y.first; });
        std::vector<Term> merged;
        merged.reserve(terms_.size());
        for (auto& t : terms_) {
            if (!merged.empty() && merged.back().first == t.first) {
                merged.back().second += t.second;
            } else {
                merged.push_back(std::move(t));
            }
        }
        std::erase_if(merged, [](const Term& t) { return detail::is_zero(t.second); });
        terms_ = std::move(merged);
    }

    static BasicMultivector scalar(Signature sig, Scalar c) {
        return BasicMultivector(sig, {Term{Blade::identity(), std::move(c)}});
    }

    static BasicMultivector basis(Signature sig, Blade b, Scalar c = Scalar(1)) {
        return BasicMultivector(sig, {Term{b, std::move(c)}});
    }

    const Signature& signature() const noexcept { return sig_; }
    std::span<const Term> terms() const noexcept { return terms_; }
    bool is_zero() const noexcept { return terms_.empty(); }
    std::size_t size() const noexcept { return terms_.size(); }

    Scalar coefficient(Blade b) const {
        auto it = std::lower_bound(terms_.begin(), terms_.end(), b,
                                   [](const Term& t, Blade key) { return t.first < key; });
        if (it != terms_.end() && it->first == b) {
            return it->second;
        }
        return Scalar(0);
    }

    BasicMultivector operator-() const {
        BasicMultivector out = *this;
        for (auto& t : out.terms_) {
            t.second = -t.second;
        }
        return out;
    }

    friend BasicMultivector operator+(const BasicMultivector& u, const BasicMultivector& v) {
        return merge(u, v, false);
    }
    friend BasicMultivector operator-(const BasicMultivector& u, const BasicMultivector& v) {
        return merge(u, v, true);
    }
    friend BasicMultivector operator*(const Scalar& c, const BasicMultivector& u) {
        BasicMultivector out(u.sig_);
        if (detail::is_zero(c)) {
            return out;
        }
        out.terms_.reserve(u.terms_.size());
        for (const auto& [b, x] : u.terms_) {
            out.terms_.emplace_back(b, Scalar(c * x));
        }
        return out;
    }
    friend BasicMultivector operator*(const BasicMultivector& u, const BasicMultivector& v) {
        return product(u, v, false);
    }

    friend bool operator==(const BasicMultivector& u, const BasicMultivector& v) {
        return u.sig_ == v.sig_ && u.terms_ == v.terms_;
    }

    static BasicMultivector product(const BasicMultivector& u, const BasicMultivector& v, bool wedge) {
        require_same_signature(u, v);
        if constexpr (std::is_same_v<Scalar, Rational>) {
            return integer_product(u, v, wedge);
        } else {
            return floating_product(u, v, wedge);
        }
    }

    static void require_same_signature(const BasicMultivector& u, const BasicMultivector& v) {
        if (!(u.sig_ == v.sig_)) {
            throw signature_error("signature mismatch: " + u.sig_.name() + " vs " + v.sig_.name());
        }
    }

private:
    static BasicMultivector floating_product(const BasicMultivector& u, const BasicMultivector& v, bool wedge) {
        const Signature& sig = u.sig_;
        std::vector<Scalar> dense(sig.dimension());
        std::vector<char> touched(sig.dimension(), 0);
        std::vector<std::uint32_t> order;
        for (const auto& [a, x] : u.terms_) {
            for (const auto& [b, y] : v.terms_) {
                const BladeProduct pr = wedge ? blade_wedge(a, b) : blade_product(sig, a, b);
                if (pr.sign == 0) {
                    continue;
                }
                const std::uint32_t slot = pr.blade.bits;
                if (touched[slot] == 0) {
                    touched[slot] = 1;
                    order.push_back(slot);
                }
                if (pr.sign > 0) {
                    dense[slot] += x * y;
                } else {
                    dense[slot] -= x * y;
                }
            }
        }
        std::sort(order.begin(), order.end());
        BasicMultivector out(sig);
        out.terms_.reserve(order.size());
        for (std::uint32_t slot : order) {
            if (!detail::is_zero(dense[slot])) {
                out.terms_.emplace_back(Blade{slot}, std::move(dense[slot]));
            }
        }
        return out;
    }

    /// Exact product over integer numerators scaled to a common denominator,
    /// so the inner loop is a fused multiply-add with no gcd.
    static BasicMultivector integer_product(const BasicMultivector& u, const BasicMultivector& v, bool wedge) {
        const Signature& sig = u.sig_;
        mpz_class du, dv;
        auto nu = common_denominator(u, du);
        auto nv = common_denominator(v, dv);
        std::vector<mpz_class> dense(sig.dimension());
        std::vector<char> touched(sig.dimension(), 0);
        std::vector<std::uint32_t> order;
        for (std::size_t i = 0; i < u.terms_.size(); ++i) {
            const Blade a = u.terms_[i].first;
            for (std::size_t j = 0; j < v.terms_.size(); ++j) {
                const Blade b = v.terms_[j].first;
                const BladeProduct pr = wedge ? blade_wedge(a, b) : blade_product(sig, a, b);
                if (pr.sign == 0) {
                    continue;
                }
                const std::uint32_t slot = pr.blade.bits;
                if (touched[slot] == 0) {
                    touched[slot] = 1;
                    order.push_back(slot);
                }
                if (pr.sign > 0) {
                    mpz_addmul(dense[slot].get_mpz_t(), nu[i].get_mpz_t(), nv[j].get_mpz_t());
                } else {
                    mpz_submul(dense[slot].get_mpz_t(), nu[i].get_mpz_t(), nv[j].get_mpz_t());
                }
            }
        }
        std::sort(order.begin(), order.end());
        const mpz_class denominator = du * dv;
        const bool integral = denominator == 1;
        BasicMultivector out(sig);
        out.terms_.reserve(order.size());
        for (std::uint32_t slot : order) {
            if (sgn(dense[slot]) == 0) {
                continue;
            }
            Rational c(dense[slot], integral ? mpz_class(1) : denominator);
            if (!integral) {
                c.canonicalize();
            }
            out.terms_.emplace_back(Blade{slot}, std::move(c));
        }
        return out;
    }

    static std::vector<mpz_class> common_denominator(const BasicMultivector& u, mpz_class& denominator) {
        denominator = 1;
        for (const auto& t : u.terms_) {
            if (t.second.get_den() != 1) {
                mpz_lcm(denominator.get_mpz_t(), denominator.get_mpz_t(), t.second.get_den().get_mpz_t());
            }
        }
        std::vector<mpz_class> numerators;
        numerators.reserve(u.terms_.size());
        for (const auto& t : u.terms_) {
            if (denominator == 1) {
                numerators.push_back(t.second.get_num());
            } else {
                numerators.push_back(t.second.get_num() * (denominator / t.second.get_den()));
            }
        }
        return numerators;
    }

    static BasicMultivector merge(const BasicMultivector& u, const BasicMultivector& v, bool subtract) {
        require_same_signature(u, v);
        BasicMultivector out(u.sig_);
        out.terms_.reserve(u.terms_.size() + v.terms_.size());
        auto i = u.terms_.begin();
        auto j = v.terms_.begin();
        while (i != u.terms_.end() || j != v.terms_.end()) {
            if (j == v.terms_.end() || (i != u.terms_.end() && i->first < j->first)) {
                out.terms_.push_back(*i++);
            } else if (i == u.terms_.end() || j->first < i->first) {
                out.terms_.emplace_back(j->first, subtract ? Scalar(-j->second) : j->second);
                ++j;
            } else {
                Scalar c = subtract ? Scalar(i->second - j->second) : Scalar(i->second + j->second);
                if (!detail::is_zero(c)) {
                    out.terms_.emplace_back(i->first, std::move(c));
                }
                ++i;
                ++j;
            }
        }
        return out;
    }

    Signature sig_;
    std::vector<Term> terms_;
};

using Multivector = BasicMultivector<Rational>;

/// Double-precision twin of Multivector, used only by the Clifford power series.
using ApproxMultivector = BasicMultivector<double>;

template <class S>
BasicMultivector<S> geo_mul(const BasicMultivector<S>& u, const BasicMultivector<S>& v) {
    return BasicMultivector<S>::product(u, v, false);
}

template <class S>
BasicMultivector<S> ext_mul(const BasicMultivector<S>& u, const BasicMultivector<S>& v) {
    return BasicMultivector<S>::product(u, v, true);
}

template <class S, class Keep>
BasicMultivector<S> filter_blades(const BasicMultivector<S>& u, Keep keep) {
    std::vector<typename BasicMultivector<S>::Term> kept;
    for (const auto& t : u.terms()) {
        if (keep(t.first)) {
            kept.push_back(t);
        }
    }
    return BasicMultivector<S>(u.signature(), std::move(kept));
}

template <class S>
BasicMultivector<S> grade_project(const BasicMultivector<S>& u, int k) {
    if (k < 0 || k > u.signature().n()) {
        throw domain_error("grade " + std::to_string(k) + " outside [0, " +
                           std::to_string(u.signature().n()) + "]");
    }
    return filter_blades(u, [k](Blade b) { return b.grade() == k; });
}

template <class S>
struct ParitySplit {
    BasicMultivector<S> even;
    BasicMultivector<S> odd;
};

template <class S>
ParitySplit<S> parity_split(const BasicMultivector<S>& u) {
    return {filter_blades(u, [](Blade b) { return b.grade() % 2 == 0; }),
            filter_blades(u, [](Blade b) { return b.grade() % 2 == 1; })};
}

/// Component in the quaternion-type subspace of residue t: grades = t mod 4.
template <class S>
BasicMultivector<S> qtype_project(const BasicMultivector<S>& u, int t) {
    if (t < 0 || t > 3) {
        throw domain_error("quaternion type residue " + std::to_string(t) + " outside 0..3");
    }
    return filter_blades(u, [t](Blade b) { return b.grade() % 4 == t; });
}

/// Grades carrying a nonzero coefficient.
template <class S>
RankSpectrum grade_spectrum(const BasicMultivector<S>& u) {
    RankSpectrum s;
    for (const auto& t : u.terms()) {
        s.insert(t.first.grade());
    }
    return s;
}

/// Grades whose coefficients exceed `threshold` in magnitude.
inline RankSpectrum grade_spectrum(const ApproxMultivector& u, double threshold) {
    RankSpectrum s;
    for (const auto& [b, c] : u.terms()) {
        if (std::abs(c) > threshold) {
            s.insert(b.grade());
        }
    }
    return s;
}

template <class S>
double max_abs(const BasicMultivector<S>& u) {
    double m = 0.0;
    for (const auto& t : u.terms()) {
        m = std::max(m, detail::magnitude(t.second));
    }
    return m;
}

inline ApproxMultivector to_approx(const Multivector& u) {
    std::vector<ApproxMultivector::Term> terms;
    terms.reserve(u.size());
    for (const auto& [b, c] : u.terms()) {
        terms.emplace_back(b, c.get_d());
    }
    return ApproxMultivector(u.signature(), std::move(terms));
}

/// Homogeneous check: every stored blade has grade k (zero qualifies).
template <class S>
bool is_homogeneous(const BasicMultivector<S>& u, int k) {
    return std::all_of(u.terms().begin(), u.terms().end(),
                       [k](const auto& t) { return t.first.grade() == k; });
}

} // namespace cliffq
