#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "polycollatz/error.hpp"
#include "polycollatz/poly.hpp"
#include "polycollatz/word.hpp"

namespace polycollatz {

/// x^2 + x + 1, the multiplier of the odd branch.
inline Poly m1() { return Poly::from_word(word::kM1); }

struct Valuation {
    std::size_t a = 0;  // at x
    std::size_t b = 0;  // at x+1

    friend bool operator==(const Valuation&, const Valuation&) = default;
};

/// input = x^a (x+1)^b core, with core odd.
struct OddDecomposition {
    std::size_t a = 0;
    std::size_t b = 0;
    Poly core;
};

inline OddDecomposition odd_part(const Poly& p) {
    const auto d = p.degree();
    if (!d) throw ZeroPolynomialError("odd_part");
    if (*d < 64) {
        const auto s = word::odd_split(p.low_word());
        return {static_cast<std::size_t>(s.a), static_cast<std::size_t>(s.b), Poly::from_word(s.core)};
    }
    OddDecomposition out;
    out.a = val_x(p);
    const Poly conj = bar(p >> out.a);
    out.b = val_x(conj);
    out.core = bar(conj >> out.b);
    return out;
}

struct StepResult {
    Poly even;
    std::size_t a = 0;
    std::size_t b = 0;
    Poly next_odd;
};

/// One transformation from an odd term: even = 1 + M1*a1, then strip x^a (x+1)^b.
inline StepResult step(const Poly& a1) {
    if (a1.is_zero()) throw ZeroPolynomialError("step");
    if (!a1.is_odd()) throw DomainError("step requires an odd polynomial, got " + to_hex(a1));
    StepResult r;
    if (*a1.degree() <= static_cast<std::size_t>(word::kMaxStepDegree)) {
        const Word even = 1u ^ word::mul_m1(a1.low_word());
        const auto s = word::odd_split(even);
        r.even = Poly::from_word(even);
        r.a = static_cast<std::size_t>(s.a);
        r.b = static_cast<std::size_t>(s.b);
        r.next_odd = Poly::from_word(s.core);
    } else {
        r.even = Poly::one() + mul(m1(), a1);
        auto dec = odd_part(r.even);
        r.a = dec.a;
        r.b = dec.b;
        r.next_odd = std::move(dec.core);
    }
    // Both x and x+1 divide 1 + M1*A for odd A since M1(0) = M1(1) = 1.
    if (r.a < 1 || r.b < 1) throw InvariantViolation("step produced a valuation below 1 for " + to_hex(a1));
    return r;
}

/// Full odd/even record of one seed. Index k of even_terms and valuations is
/// aligned with odd_terms[k]: even_terms[k] = 1 + M1*odd_terms[k] and
/// even_terms[k] = x^a (x+1)^b odd_terms[k+1] (the successor of the final 1
/// is 1 itself).
struct CollatzTrace {
    Poly seed;
    Valuation seed_valuation;
    std::vector<Poly> odd_terms;
    std::vector<Poly> even_terms;
    std::vector<Valuation> valuations;
    std::size_t m = 0;    // odd terms through the first 1, inclusive
    std::size_t r_A = 0;  // m + 1
    std::vector<std::size_t> odd_degrees;
    std::vector<std::size_t> even_degrees;
    // False when the polynomials were dropped to honor the memory cap; the
    // degree and valuation lists are always complete.
    bool terms_retained = true;

    friend bool operator==(const CollatzTrace&, const CollatzTrace&) = default;
};

class StepCapExceeded : public Error {
public:
    StepCapExceeded(std::size_t cap, CollatzTrace partial)
        : Error("trace exceeded the step cap of " + std::to_string(cap) + " odd terms"),
          cap_(cap),
          partial_(std::move(partial)) {}

    std::size_t cap() const noexcept { return cap_; }
    const CollatzTrace& partial() const noexcept { return partial_; }

private:
    std::size_t cap_;
    CollatzTrace partial_;
};

/// 2^(min(deg,30)-1) + 1 clamped to 10^9. The number of odd terms never
/// exceeds 2^(deg-1), so this cap only fires on an implementation bug.
inline std::size_t default_step_cap(std::size_t seed_degree) {
    if (seed_degree == 0) return 2;
    const std::size_t d = std::min<std::size_t>(seed_degree, 30);
    return std::min<std::size_t>((std::size_t{1} << (d - 1)) + 1, 1'000'000'000);
}

struct TraceOptions {
    std::optional<std::size_t> step_cap;  // defaults to default_step_cap(deg seed)
    std::size_t max_stored_words = std::size_t{1} << 22;
};

inline CollatzTrace trace(const Poly& seed, const TraceOptions& opts = {}) {
    const std::size_t seed_degree = degree_of(seed, "trace");
    const std::size_t cap = opts.step_cap.value_or(default_step_cap(seed_degree));

    CollatzTrace t;
    t.seed = seed;
    auto dec = odd_part(seed);
    t.seed_valuation = {dec.a, dec.b};

    std::size_t stored_words = 0;
    auto keep = [&](std::vector<Poly>& dst, const Poly& p) {
        if (!t.terms_retained) return;
        stored_words += p.word_count();
        if (stored_words > opts.max_stored_words) {
            t.terms_retained = false;
            t.odd_terms.clear();
            t.even_terms.clear();
            return;
        }
        dst.push_back(p);
    };

    Poly odd = std::move(dec.core);
    for (;;) {
        if (t.odd_degrees.size() == cap) {
            t.m = t.odd_degrees.size();
            t.r_A = t.m + 1;
            throw StepCapExceeded(cap, std::move(t));
        }
        const std::size_t odd_deg = *odd.degree();
        if (!t.odd_degrees.empty() && odd_deg > t.odd_degrees.back()) {
            throw InvariantViolation("odd degrees increased in the trace of " + to_hex(seed));
        }
        auto s = step(odd);
        const std::size_t even_deg = *s.even.degree();
        if (even_deg != odd_deg + 2 || even_deg != *s.next_odd.degree() + s.a + s.b) {
            throw InvariantViolation("degree links broken in the trace of " + to_hex(seed));
        }
        t.odd_degrees.push_back(odd_deg);
        t.even_degrees.push_back(even_deg);
        t.valuations.push_back({s.a, s.b});
        const bool done = odd.is_one();
        keep(t.odd_terms, odd);
        keep(t.even_terms, s.even);
        if (done) break;
        odd = std::move(s.next_odd);
    }

    t.m = t.odd_degrees.size();
    t.r_A = t.m + 1;
    // |{odd terms}| <= 2^(deg-1) (finite-length theorem).
    if (seed_degree >= 1 && seed_degree - 1 < 64 && t.m > (std::uint64_t{1} << (seed_degree - 1))) {
        throw InvariantViolation("odd sequence longer than 2^(deg-1) for " + to_hex(seed));
    }
    if (t.valuations.back() != Valuation{1, 1} || t.even_degrees.back() != 2) {
        throw InvariantViolation("trace of " + to_hex(seed) + " did not end at x^2+x / 1");
    }
    return t;
}

inline std::vector<std::size_t> odd_degree_sequence(const Poly& seed) { return trace(seed).odd_degrees; }

/// Number of odd terms through the first 1 (the trace's m).
inline std::size_t trajectory_length(const Poly& seed) {
    const std::size_t d = degree_of(seed, "trajectory_length");
    if (d <= static_cast<std::size_t>(word::kMaxStepDegree)) return word::trajectory_length(seed.low_word());
    return trace(seed).m;
}

/// Element-wise x -> x+1 image of a trace, valuations swapped.
inline CollatzTrace bar_trace(const CollatzTrace& t) {
    CollatzTrace out = t;
    out.seed = bar(t.seed);
    out.seed_valuation = {t.seed_valuation.b, t.seed_valuation.a};
    for (auto& p : out.odd_terms) p = bar(p);
    for (auto& p : out.even_terms) p = bar(p);
    for (auto& v : out.valuations) std::swap(v.a, v.b);
    return out;
}

/// Full algebraic re-check of a trace with generic arithmetic. Returns one
/// message per violated relation; empty means the trace is consistent.
inline std::vector<std::string> check_trace(const CollatzTrace& t) {
    std::vector<std::string> bad;
    auto fail = [&](std::string msg) { bad.push_back(to_hex(t.seed) + ": " + std::move(msg)); };

    const std::size_t m = t.odd_degrees.size();
    if (t.m != m || t.r_A != m + 1) fail("m/r_A do not match the degree list");
    if (t.even_degrees.size() != m || t.valuations.size() != m) fail("list lengths differ");
    if (bad.size() > 0 || m == 0) {
        if (m == 0) fail("empty trace");
        return bad;
    }
    for (std::size_t k = 0; k < m; ++k) {
        const auto [a, b] = t.valuations[k];
        if (a < 1 || b < 1) fail("valuation below 1 at k=" + std::to_string(k));
        if (k + 1 < m && t.odd_degrees[k + 1] > t.odd_degrees[k]) fail("odd degree increased at k=" + std::to_string(k));
        if (t.even_degrees[k] != t.odd_degrees[k] + 2) fail("deg even != deg odd + 2 at k=" + std::to_string(k));
        const std::size_t next_deg = k + 1 < m ? t.odd_degrees[k + 1] : 0;
        if (t.even_degrees[k] != next_deg + a + b) fail("deg even != deg next + a + b at k=" + std::to_string(k));
    }
    if (t.odd_degrees.back() != 0) fail("last odd degree is not 0");
    if (t.valuations.back() != Valuation{1, 1}) fail("terminal valuation is not (1,1)");

    if (t.terms_retained) {
        if (t.odd_terms.size() != m || t.even_terms.size() != m) {
            fail("term lists have the wrong length");
            return bad;
        }
        const auto seed_dec = Poly::monomial(t.seed_valuation.a) *
                              pow(Poly::from_word(0b11), t.seed_valuation.b) * t.odd_terms.front();
        if (seed_dec != t.seed) fail("seed does not factor as x^a0 (x+1)^b0 A1");
        for (std::size_t k = 0; k < m; ++k) {
            const Poly& odd = t.odd_terms[k];
            if (!odd.is_odd()) fail("odd term " + std::to_string(k) + " is not odd");
            if (t.even_terms[k] != Poly::one() + m1() * odd) fail("even term " + std::to_string(k) + " != 1 + M1*odd");
            const Poly& next = k + 1 < m ? t.odd_terms[k + 1] : t.odd_terms[k];
            const auto [a, b] = t.valuations[k];
            if (Poly::monomial(a) * pow(Poly::from_word(0b11), b) * next != t.even_terms[k]) {
                fail("even term " + std::to_string(k) + " != x^a (x+1)^b next");
            }
        }
        if (!t.odd_terms.back().is_one()) fail("last odd term is not 1");
        if (t.even_terms.back() != Poly::from_word(0b110)) fail("last even term is not x^2+x");
    }
    return bad;
}

}  // namespace polycollatz
