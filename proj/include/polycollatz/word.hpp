#pragma once

// Single-word fast path: binary polynomials of degree < 64 packed in a
// std::uint64_t with bit k holding the coefficient of x^k.

#include <bit>
#include <cstdint>

namespace polycollatz::word {

using Word = std::uint64_t;

inline constexpr Word kM1 = 0b111;  // x^2 + x + 1

// Largest odd-term degree for which 1 + M1*A still fits in a word.
inline constexpr int kMaxStepDegree = 61;

constexpr int degree(Word p) noexcept { return 63 - std::countl_zero(p); }

constexpr bool eval0(Word p) noexcept { return (p & 1u) != 0; }
constexpr bool eval1(Word p) noexcept { return (std::popcount(p) & 1) != 0; }
constexpr bool is_odd(Word p) noexcept { return eval0(p) && eval1(p); }

constexpr Word mul_m1(Word p) noexcept { return p ^ (p << 1) ^ (p << 2); }

// p(x+1). The coefficient of x^k in p(x+1) is the sum of p_j over all j whose
// binary expansion contains k (Lucas), i.e. a superset-sum transform on the
// six index bits.
constexpr Word bar(Word p) noexcept {
    p ^= (p >> 1) & 0x5555555555555555ULL;
    p ^= (p >> 2) & 0x3333333333333333ULL;
    p ^= (p >> 4) & 0x0F0F0F0F0F0F0F0FULL;
    p ^= (p >> 8) & 0x00FF00FF00FF00FFULL;
    p ^= (p >> 16) & 0x0000FFFF0000FFFFULL;
    p ^= (p >> 32) & 0x00000000FFFFFFFFULL;
    return p;
}

constexpr int val_x(Word p) noexcept { return std::countr_zero(p); }
constexpr int val_x1(Word p) noexcept { return std::countr_zero(bar(p)); }

struct OddSplit {
    int a = 0;
    int b = 0;
    Word core = 0;
};

// p = x^a (x+1)^b core with core odd. p must be nonzero.
constexpr OddSplit odd_split(Word p) noexcept {
    OddSplit s;
    s.a = std::countr_zero(p);
    const Word conj = bar(p >> s.a);
    s.b = std::countr_zero(conj);
    s.core = bar(conj >> s.b);
    return s;
}

constexpr Word odd_core(Word p) noexcept { return odd_split(p).core; }

// Next odd term after the odd term `a`: odd part of 1 + M1*a.
constexpr Word next_odd(Word a) noexcept { return odd_core(1u ^ mul_m1(a)); }

// Number of odd terms from the odd core of `seed` through the first 1.
// Requires seed != 0 and degree(seed) <= kMaxStepDegree.
inline std::uint32_t trajectory_length(Word seed) noexcept {
    Word a = odd_core(seed);
    std::uint32_t m = 1;
    while (a != 1) {
        a = next_odd(a);
        ++m;
    }
    return m;
}

}  // namespace polycollatz::word
