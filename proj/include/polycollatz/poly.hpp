#pragma once

#include <algorithm>
#include <bit>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polycollatz/error.hpp"
#include "polycollatz/word.hpp"

namespace polycollatz {

using word::Word;

/// A polynomial over GF(2), stored as a little-endian bit vector: bit k of
/// the vector is the coefficient of x^k. Storage is always canonical (no
/// zero words above the leading coefficient), so equality is word equality
/// and the zero polynomial is the empty vector.
class Poly {
public:
    Poly() = default;

    static Poly from_word(Word w) {
        Poly p;
        if (w != 0) p.words_.push_back(w);
        return p;
    }

    static Poly from_words(std::vector<Word> words) {
        Poly p;
        p.words_ = std::move(words);
        p.trim();
        return p;
    }

    static Poly monomial(std::size_t k) {
        Poly p;
        p.words_.assign(k / 64 + 1, 0);
        p.words_.back() = Word{1} << (k % 64);
        return p;
    }

    static Poly one() { return from_word(1); }

    bool is_zero() const noexcept { return words_.empty(); }
    bool is_one() const noexcept { return words_.size() == 1 && words_[0] == 1; }

    /// Index of the leading coefficient; empty for the zero polynomial.
    std::optional<std::size_t> degree() const noexcept {
        if (words_.empty()) return std::nullopt;
        return (words_.size() - 1) * 64 + static_cast<std::size_t>(word::degree(words_.back()));
    }

    bool coeff(std::size_t k) const noexcept {
        const std::size_t i = k / 64;
        return i < words_.size() && ((words_[i] >> (k % 64)) & 1u) != 0;
    }

    void flip(std::size_t k) {
        const std::size_t i = k / 64;
        if (i >= words_.size()) words_.resize(i + 1, 0);
        words_[i] ^= Word{1} << (k % 64);
        trim();
    }

    bool eval0() const noexcept { return !words_.empty() && (words_[0] & 1u) != 0; }

    bool eval1() const noexcept {
        int parity = 0;
        for (Word w : words_) parity ^= std::popcount(w) & 1;
        return parity != 0;
    }

    /// gcd(p, x(x+1)) = 1.
    bool is_odd() const noexcept { return eval0() && eval1(); }

    std::size_t popcount() const noexcept {
        std::size_t n = 0;
        for (Word w : words_) n += static_cast<std::size_t>(std::popcount(w));
        return n;
    }

    std::span<const Word> words() const noexcept { return words_; }
    std::size_t word_count() const noexcept { return words_.size(); }

    bool fits_word() const noexcept { return words_.size() <= 1; }
    Word low_word() const noexcept { return words_.empty() ? 0 : words_[0]; }

    Poly& operator+=(const Poly& q) {
        if (q.words_.size() > words_.size()) words_.resize(q.words_.size(), 0);
        for (std::size_t i = 0; i < q.words_.size(); ++i) words_[i] ^= q.words_[i];
        trim();
        return *this;
    }

    Poly& operator<<=(std::size_t s) {
        if (words_.empty() || s == 0) return *this;
        const std::size_t ws = s / 64;
        const unsigned bs = static_cast<unsigned>(s % 64);
        std::vector<Word> out(words_.size() + ws + 1, 0);
        for (std::size_t i = 0; i < words_.size(); ++i) {
            out[i + ws] ^= words_[i] << bs;
            if (bs != 0) out[i + ws + 1] ^= words_[i] >> (64 - bs);
        }
        words_ = std::move(out);
        trim();
        return *this;
    }

    // Drops the coefficients below x^s.
    Poly& operator>>=(std::size_t s) {
        const std::size_t ws = s / 64;
        const unsigned bs = static_cast<unsigned>(s % 64);
        if (ws >= words_.size()) {
            words_.clear();
            return *this;
        }
        std::vector<Word> out(words_.size() - ws, 0);
        for (std::size_t i = 0; i < out.size(); ++i) {
            out[i] = words_[i + ws] >> bs;
            if (bs != 0 && i + ws + 1 < words_.size()) out[i] |= words_[i + ws + 1] << (64 - bs);
        }
        words_ = std::move(out);
        trim();
        return *this;
    }

    friend Poly operator+(Poly p, const Poly& q) { return p += q; }
    friend Poly operator<<(Poly p, std::size_t s) { return p <<= s; }
    friend Poly operator>>(Poly p, std::size_t s) { return p >>= s; }

    friend bool operator==(const Poly&, const Poly&) = default;

    /// Orders polynomials by their hex mask value.
    friend std::strong_ordering operator<=>(const Poly& p, const Poly& q) noexcept {
        if (p.words_.size() != q.words_.size()) return p.words_.size() <=> q.words_.size();
        for (std::size_t i = p.words_.size(); i-- > 0;) {
            if (p.words_[i] != q.words_[i]) return p.words_[i] <=> q.words_[i];
        }
        return std::strong_ordering::equal;
    }

    // In-place p += q * x^s, used by long division.
    void add_shifted(const Poly& q, std::size_t s) {
        if (q.is_zero()) return;
        const std::size_t ws = s / 64;
        const unsigned bs = static_cast<unsigned>(s % 64);
        const std::size_t need = q.words_.size() + ws + (bs != 0 ? 1 : 0);
        if (words_.size() < need) words_.resize(need, 0);
        for (std::size_t i = 0; i < q.words_.size(); ++i) {
            words_[i + ws] ^= q.words_[i] << bs;
            if (bs != 0) words_[i + ws + 1] ^= q.words_[i] >> (64 - bs);
        }
        trim();
    }

private:
    void trim() noexcept {
        while (!words_.empty() && words_.back() == 0) words_.pop_back();
    }

    std::vector<Word> words_;
};

/// Degree of a nonzero polynomial; throws ZeroPolynomialError otherwise.
inline std::size_t degree_of(const Poly& p, const char* where = "degree") {
    auto d = p.degree();
    if (!d) throw ZeroPolynomialError(where);
    return *d;
}

inline Poly add(const Poly& p, const Poly& q) { return p + q; }

namespace detail {

// 64x64 -> 128 carry-less product as (low, high).
constexpr std::pair<Word, Word> clmul64(Word a, Word b) noexcept {
    Word lo = 0;
    Word hi = 0;
    for (unsigned i = 0; i < 64; ++i) {
        const Word mask = Word{0} - ((b >> i) & 1u);
        lo ^= (a << i) & mask;
        if (i != 0) hi ^= (a >> (64 - i)) & mask;
    }
    return {lo, hi};
}

constexpr Word bit_reverse(Word w) noexcept {
    w = ((w >> 1) & 0x5555555555555555ULL) | ((w & 0x5555555555555555ULL) << 1);
    w = ((w >> 2) & 0x3333333333333333ULL) | ((w & 0x3333333333333333ULL) << 2);
    w = ((w >> 4) & 0x0F0F0F0F0F0F0F0FULL) | ((w & 0x0F0F0F0F0F0F0F0FULL) << 4);
    w = ((w >> 8) & 0x00FF00FF00FF00FFULL) | ((w & 0x00FF00FF00FF00FFULL) << 8);
    w = ((w >> 16) & 0x0000FFFF0000FFFFULL) | ((w & 0x0000FFFF0000FFFFULL) << 16);
    return (w >> 32) | (w << 32);
}

}  // namespace detail

/// Carry-less product.
inline Poly mul(const Poly& p, const Poly& q) {
    if (p.is_zero() || q.is_zero()) return {};
    const auto pw = p.words();
    const auto qw = q.words();
    std::vector<Word> out(pw.size() + qw.size(), 0);
    for (std::size_t i = 0; i < pw.size(); ++i) {
        if (pw[i] == 0) continue;
        for (std::size_t j = 0; j < qw.size(); ++j) {
            const auto [lo, hi] = detail::clmul64(pw[i], qw[j]);
            out[i + j] ^= lo;
            out[i + j + 1] ^= hi;
        }
    }
    return Poly::from_words(std::move(out));
}

inline Poly operator*(const Poly& p, const Poly& q) { return mul(p, q); }

inline Poly square(const Poly& p) { return mul(p, p); }

inline Poly pow(Poly base, std::uint64_t e) {
    Poly acc = Poly::one();
    while (e != 0) {
        if (e & 1u) acc = acc * base;
        e >>= 1;
        if (e != 0) base = square(base);
    }
    return acc;
}

struct DivRem {
    Poly quotient;
    Poly remainder;
};

/// Schoolbook long division: p = quotient*d + remainder, deg(remainder) < deg(d).
inline DivRem div_rem(const Poly& p, const Poly& d) {
    if (d.is_zero()) throw DivisionByZeroError();
    DivRem out;
    out.remainder = p;
    const std::size_t dd = *d.degree();
    while (auto rd = out.remainder.degree()) {
        if (*rd < dd) break;
        const std::size_t s = *rd - dd;
        out.remainder.add_shifted(d, s);
        out.quotient.flip(s);
    }
    return out;
}

inline Poly operator/(const Poly& p, const Poly& d) { return div_rem(p, d).quotient; }
inline Poly operator%(const Poly& p, const Poly& d) { return div_rem(p, d).remainder; }

/// Largest a with x^a dividing p.
inline std::size_t val_x(const Poly& p) {
    const auto w = p.words();
    for (std::size_t i = 0; i < w.size(); ++i) {
        if (w[i] != 0) return i * 64 + static_cast<std::size_t>(std::countr_zero(w[i]));
    }
    throw ZeroPolynomialError("val_x");
}

/// p(x+1). Multi-word generalization of word::bar: the superset-sum transform
/// runs over the in-word index bits, then over the word index bits.
inline Poly bar(const Poly& p) {
    if (p.fits_word()) return Poly::from_word(word::bar(p.low_word()));
    const auto src = p.words();
    std::vector<Word> w(std::bit_ceil(src.size()), 0);
    std::copy(src.begin(), src.end(), w.begin());
    for (Word& v : w) v = word::bar(v);
    for (std::size_t stride = 1; stride < w.size(); stride <<= 1) {
        for (std::size_t i = 0; i < w.size(); ++i) {
            if ((i & stride) == 0) w[i] ^= w[i | stride];
        }
    }
    return Poly::from_words(std::move(w));
}

/// Largest b with (x+1)^b dividing p, computed as val_x(bar(p)).
inline std::size_t val_x1(const Poly& p) {
    if (p.is_zero()) throw ZeroPolynomialError("val_x1");
    return val_x(bar(p));
}

/// x^deg(p) * p(1/x): bit reversal of the window [0, deg p].
inline Poly reciprocal(const Poly& p) {
    const std::size_t d = degree_of(p, "reciprocal");
    const auto src = p.words();
    std::vector<Word> rev(src.size(), 0);
    for (std::size_t i = 0; i < src.size(); ++i) rev[src.size() - 1 - i] = detail::bit_reverse(src[i]);
    // rev now holds the reversal of a 64*n bit window; shift down to [0, d].
    return Poly::from_words(std::move(rev)) >> (src.size() * 64 - 1 - d);
}

inline std::string format(const Poly& p);
inline std::string to_hex(const Poly& p);

inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << format(p); }

}  // namespace polycollatz

template <>
struct std::hash<polycollatz::Poly> {
    std::size_t operator()(const polycollatz::Poly& p) const noexcept {
        std::uint64_t h = 0x9E3779B97F4A7C15ULL ^ p.word_count();
        for (auto w : p.words()) {
            h ^= w + 0x9E3779B97F4A7C15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

#include "polycollatz/poly_text.hpp"
