#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <iterator>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "polycollatz/error.hpp"
#include "polycollatz/poly.hpp"
#include "polycollatz/word.hpp"

namespace polycollatz {

enum class Constraint {
    all,
    eval0_zero,  // p(0) = 0
    eval0_one,   // p(0) = 1
    eval1_zero,  // p(1) = 0
    eval1_one,   // p(1) = 1
    odd,         // p(0) = p(1) = 1
};

inline std::string_view to_string(Constraint c) {
    switch (c) {
        case Constraint::all: return "all";
        case Constraint::eval0_zero: return "p(0)=0";
        case Constraint::eval0_one: return "p(0)=1";
        case Constraint::eval1_zero: return "p(1)=0";
        case Constraint::eval1_one: return "p(1)=1";
        case Constraint::odd: return "odd";
    }
    return "?";
}

inline bool satisfies(Word mask, Constraint c) noexcept {
    switch (c) {
        case Constraint::all: return true;
        case Constraint::eval0_zero: return !word::eval0(mask);
        case Constraint::eval0_one: return word::eval0(mask);
        case Constraint::eval1_zero: return !word::eval1(mask);
        case Constraint::eval1_one: return word::eval1(mask);
        case Constraint::odd: return word::is_odd(mask);
    }
    return false;
}

/// All polynomials of one exact degree meeting one evaluation constraint.
struct Stratum {
    unsigned degree = 0;
    Constraint constraint = Constraint::all;
};

// Indexed enumeration supports degrees up to this bound.
inline constexpr unsigned kMaxStratumDegree = 62;

/// Number of members, derived from the free bits of the indexed enumeration.
inline std::uint64_t indexed_size(const Stratum& s) {
    if (s.degree > kMaxStratumDegree) throw DomainError("stratum degree above " + std::to_string(kMaxStratumDegree));
    const unsigned d = s.degree;
    switch (s.constraint) {
        case Constraint::all: return std::uint64_t{1} << d;
        case Constraint::eval0_zero:
        case Constraint::eval1_zero: return d == 0 ? 0 : std::uint64_t{1} << (d - 1);
        case Constraint::eval0_one:
        case Constraint::eval1_one: return d == 0 ? 1 : std::uint64_t{1} << (d - 1);
        case Constraint::odd: return d == 0 ? 1 : d == 1 ? 0 : std::uint64_t{1} << (d - 2);
    }
    return 0;
}

/// The i-th member in ascending mask order. Free bits are filled from the
/// index and the constrained low bits are solved for, so no candidate is
/// ever rejected (the odd stratum walks a quarter of the degree-d masks).
inline Word stratum_mask(const Stratum& s, std::uint64_t i) noexcept {
    const unsigned d = s.degree;
    const Word top = Word{1} << d;
    if (d == 0) return 1;
    switch (s.constraint) {
        case Constraint::all: return top | i;
        case Constraint::eval0_zero: return top | (i << 1);
        case Constraint::eval0_one: return top | (i << 1) | 1u;
        case Constraint::eval1_zero: {
            const Word m = top | (i << 1);
            return m | static_cast<Word>(std::popcount(m) & 1);
        }
        case Constraint::eval1_one: {
            const Word m = top | (i << 1);
            return m | static_cast<Word>((std::popcount(m) & 1) ^ 1);
        }
        case Constraint::odd: {
            const Word m = top | (i << 2) | 1u;
            return m | (static_cast<Word>((std::popcount(m) & 1) ^ 1) << 1);
        }
    }
    return 0;
}

/// A half-open index interval of a stratum. Cheap to copy; split it to hand
/// disjoint pieces to workers.
class StratumRange {
public:
    class iterator {
    public:
        using iterator_category = std::forward_iterator_tag;
        using value_type = Poly;
        using difference_type = std::ptrdiff_t;
        using pointer = void;
        using reference = Poly;

        iterator() = default;
        iterator(Stratum s, std::uint64_t i) : s_(s), i_(i) {}

        Poly operator*() const { return Poly::from_word(stratum_mask(s_, i_)); }
        Word mask() const noexcept { return stratum_mask(s_, i_); }
        iterator& operator++() {
            ++i_;
            return *this;
        }
        iterator operator++(int) {
            auto old = *this;
            ++i_;
            return old;
        }
        friend bool operator==(const iterator& a, const iterator& b) noexcept { return a.i_ == b.i_; }

    private:
        Stratum s_{};
        std::uint64_t i_ = 0;
    };

    explicit StratumRange(Stratum s) : s_(s), lo_(0), hi_(indexed_size(s)) {}
    StratumRange(Stratum s, std::uint64_t lo, std::uint64_t hi) : s_(s), lo_(lo), hi_(hi) {
        if (lo > hi || hi > indexed_size(s)) throw DomainError("stratum slice out of range");
    }

    const Stratum& stratum() const noexcept { return s_; }
    std::uint64_t first_index() const noexcept { return lo_; }
    std::uint64_t last_index() const noexcept { return hi_; }
    std::uint64_t size() const noexcept { return hi_ - lo_; }
    bool empty() const noexcept { return lo_ == hi_; }

    iterator begin() const { return {s_, lo_}; }
    iterator end() const { return {s_, hi_}; }

    StratumRange slice(std::uint64_t lo, std::uint64_t hi) const { return {s_, lo_ + lo, lo_ + hi}; }

    /// Splits into `parts` contiguous pieces of near-equal size (some may be empty).
    std::vector<StratumRange> split(std::uint64_t parts) const {
        if (parts == 0) throw DomainError("cannot split into zero parts");
        std::vector<StratumRange> out;
        out.reserve(parts);
        const std::uint64_t n = size();
        for (std::uint64_t k = 0; k < parts; ++k) {
            out.push_back(slice(n / parts * k + std::min(k, n % parts), n / parts * (k + 1) + std::min(k + 1, n % parts)));
        }
        return out;
    }

private:
    Stratum s_;
    std::uint64_t lo_;
    std::uint64_t hi_;
};

inline StratumRange iter(const Stratum& s) { return StratumRange(s); }

/// Closed-form cardinality where the counting lemma applies: 2^(d-1) for the
/// four evaluation quadrants (d >= 1), 2^(d-2) odd polynomials (d >= 2).
inline std::optional<std::uint64_t> closed_form_count(const Stratum& s) {
    const unsigned d = s.degree;
    switch (s.constraint) {
        case Constraint::all: return std::uint64_t{1} << d;
        case Constraint::odd:
            if (d >= 2) return std::uint64_t{1} << (d - 2);
            return std::nullopt;
        default:
            if (d >= 1) return std::uint64_t{1} << (d - 1);
            return std::nullopt;
    }
}

// Brute-force counting is capped here.
inline constexpr unsigned kMaxCountDegree = 34;

/// Counts the stratum by filtering all 2^d masks of degree d, then checks the
/// result against the indexed enumeration and the closed form.
inline std::uint64_t count(const Stratum& s) {
    if (s.degree > kMaxCountDegree) throw DomainError("count supports degrees up to " + std::to_string(kMaxCountDegree));
    const Word lo = Word{1} << s.degree;
    const Word hi = lo << 1;
    std::uint64_t n = 0;
    for (Word m = lo; m < hi; ++m) n += satisfies(m, s.constraint) ? 1 : 0;

    const std::string where = "degree " + std::to_string(s.degree) + " stratum " + std::string(to_string(s.constraint));
    if (n != indexed_size(s)) {
        throw InvariantViolation("indexed enumeration size disagrees with filtering for " + where);
    }
    if (auto f = closed_form_count(s); f && *f != n) {
        throw InvariantViolation("count " + std::to_string(n) + " differs from closed form " + std::to_string(*f) + " for " + where);
    }
    return n;
}

}  // namespace polycollatz
