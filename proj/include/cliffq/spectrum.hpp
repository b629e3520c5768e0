#pragma once

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <vector>

#include "cliffq/error.hpp"

namespace cliffq {

/// A set of grades, each in [0, 31]. Used for observed rank spectra and for
/// predicted envelopes.
class RankSpectrum {
public:
    constexpr RankSpectrum() = default;
    RankSpectrum(std::initializer_list<int> grades) {
        for (int g : grades) {
            insert(g);
        }
    }

    static constexpr RankSpectrum from_bits(std::uint32_t bits) {
        RankSpectrum s;
        s.bits_ = bits;
        return s;
    }

    void insert(int grade) {
        if (grade < 0 || grade > 31) {
            throw domain_error("grade " + std::to_string(grade) + " out of range");
        }
        bits_ |= std::uint32_t{1} << grade;
    }

    constexpr bool contains(int grade) const noexcept {
        return grade >= 0 && grade <= 31 && ((bits_ >> grade) & 1u) != 0;
    }
    constexpr bool empty() const noexcept { return bits_ == 0; }
    constexpr int size() const noexcept { return std::popcount(bits_); }
    constexpr std::uint32_t bits() const noexcept { return bits_; }

    /// Largest member; -1 when empty.
    constexpr int top() const noexcept { return empty() ? -1 : 31 - std::countl_zero(bits_); }

    constexpr bool subset_of(RankSpectrum other) const noexcept {
        return (bits_ & ~other.bits_) == 0;
    }

    friend constexpr RankSpectrum operator|(RankSpectrum a, RankSpectrum b) noexcept {
        return from_bits(a.bits_ | b.bits_);
    }
    friend constexpr RankSpectrum operator&(RankSpectrum a, RankSpectrum b) noexcept {
        return from_bits(a.bits_ & b.bits_);
    }
    RankSpectrum& operator|=(RankSpectrum o) noexcept {
        bits_ |= o.bits_;
        return *this;
    }
    friend constexpr bool operator==(RankSpectrum, RankSpectrum) = default;

    std::vector<int> members() const {
        std::vector<int> out;
        for (int g = 0; g < 32; ++g) {
            if (contains(g)) {
                out.push_back(g);
            }
        }
        return out;
    }

    /// Sorted grade list, e.g. `{0,4,8}`; `{}` when empty.
    std::string render() const {
        std::string out = "{";
        bool first = true;
        for (int g : members()) {
            if (!first) {
                out += ',';
            }
            out += std::to_string(g);
            first = false;
        }
        return out + "}";
    }

private:
    std::uint32_t bits_ = 0;
};

/// Arithmetic progression first, first+step, ... up to `last` inclusive.
inline RankSpectrum progression(int first, int step, int last) {
    RankSpectrum s;
    for (int g = first; g <= last; g += step) {
        if (g >= 0) {
            s.insert(g);
        }
    }
    return s;
}

} // namespace cliffq
