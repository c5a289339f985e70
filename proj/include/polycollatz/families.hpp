#pragma once

// Special seed families and checkers for the conjectured length patterns.
// Checkers report verdicts; a failing verdict is a mathematical finding,
// not an error.

#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "polycollatz/collatz.hpp"
#include "polycollatz/error.hpp"
#include "polycollatz/poly.hpp"
#include "polycollatz/trace_io.hpp"

namespace polycollatz {

enum class FamilyKind {
    T,     // x^n + x + 1
    U,     // x^n + x^(n-1) + 1
    S,     // x^n + x^7 + x^3 + 1
    MPOW,  // (x^2+x+1)^n + 1
    P1,
    P2,
    P3,
};

struct FamilyId {
    FamilyKind kind = FamilyKind::T;
    unsigned n = 0;  // ignored for P1..P3
};

inline std::string_view family_name(FamilyKind k) {
    switch (k) {
        case FamilyKind::T: return "T";
        case FamilyKind::U: return "U";
        case FamilyKind::S: return "S";
        case FamilyKind::MPOW: return "MPOW";
        case FamilyKind::P1: return "P1";
        case FamilyKind::P2: return "P2";
        case FamilyKind::P3: return "P3";
    }
    return "?";
}

inline FamilyKind parse_family(std::string_view name) {
    for (auto k : {FamilyKind::T, FamilyKind::U, FamilyKind::S, FamilyKind::MPOW, FamilyKind::P1, FamilyKind::P2,
                   FamilyKind::P3}) {
        if (family_name(k) == name) return k;
    }
    throw DomainError("unknown family '" + std::string(name) + "'");
}

namespace detail {

inline Poly from_exponents(std::initializer_list<std::size_t> exps) {
    Poly p;
    for (auto e : exps) p.flip(e);
    return p;
}

}  // namespace detail

inline Poly generate(const FamilyId& f) {
    auto need = [&](unsigned lo) {
        if (f.n < lo) {
            throw DomainError("family " + std::string(family_name(f.kind)) + " needs n >= " + std::to_string(lo));
        }
    };
    switch (f.kind) {
        case FamilyKind::T:
            need(2);
            return detail::from_exponents({f.n, 1, 0});
        case FamilyKind::U:
            need(2);
            return detail::from_exponents({f.n, f.n - 1, 0});
        case FamilyKind::S:
            need(8);
            return detail::from_exponents({f.n, 7, 3, 0});
        case FamilyKind::MPOW:
            need(1);
            return pow(m1(), f.n) + Poly::one();
        case FamilyKind::P1: return detail::from_exponents({14, 10, 9, 8, 3, 2, 0});
        case FamilyKind::P2: return detail::from_exponents({14, 12, 9, 6, 4, 3, 0});
        case FamilyKind::P3: return detail::from_exponents({14, 13, 9, 8, 6, 5, 3, 2, 0});
    }
    throw DomainError("unknown family");
}

struct MpowCore {
    Poly expected;
    Poly observed;
    bool equal = false;
};

/// With n = 2^r u (u odd), M1^n + 1 = (x(x+1))^(2^r) (M1^(u-1) + ... + M1 + 1)^(2^r),
/// and the geometric sum is odd, so it is the odd core.
inline MpowCore mpow_odd_core(unsigned n) {
    if (n < 1) throw DomainError("mpow_odd_core needs n >= 1");
    const unsigned r = static_cast<unsigned>(std::countr_zero(n));
    const unsigned u = n >> r;
    Poly geometric;
    Poly power = Poly::one();
    for (unsigned i = 0; i < u; ++i) {
        geometric += power;
        power = power * m1();
    }
    MpowCore out;
    out.expected = pow(geometric, std::uint64_t{1} << r);
    out.observed = odd_part(generate({FamilyKind::MPOW, n})).core;
    out.equal = out.expected == out.observed;
    return out;
}

enum class ConjectureId { C2, C3, C4 };

inline std::string_view conjecture_name(ConjectureId c) {
    switch (c) {
        case ConjectureId::C2: return "C2";
        case ConjectureId::C3: return "C3";
        case ConjectureId::C4: return "C4";
    }
    return "?";
}

struct ConjectureRow {
    std::string family;
    unsigned n = 0;
    std::string predicted;
    std::string observed;
    bool holds = false;
    std::vector<std::size_t> odd_degrees;  // the trace behind the verdict
};

struct ConjectureReport {
    ConjectureId id = ConjectureId::C2;
    unsigned lo = 0;
    unsigned hi = 0;
    std::vector<ConjectureRow> rows;

    bool all_hold() const {
        for (const auto& r : rows) {
            if (!r.holds) return false;
        }
        return true;
    }
    std::size_t failures() const {
        std::size_t k = 0;
        for (const auto& r : rows) k += r.holds ? 0 : 1;
        return k;
    }
};

/// A = M1^(2^r - j) + 1 with 0 <= j < 2^(r-1): odd sequence length j + 1.
inline ConjectureReport check_conjecture_2(unsigned r_lo, unsigned r_hi) {
    if (r_lo < 1 || r_hi < r_lo || r_hi > 16) throw DomainError("range must satisfy 1 <= r_lo <= r_hi <= 16");
    ConjectureReport rep{ConjectureId::C2, r_lo, r_hi, {}};
    for (unsigned r = r_lo; r <= r_hi; ++r) {
        for (unsigned j = 0; j < (1u << (r - 1)); ++j) {
            const unsigned n = (1u << r) - j;
            auto t = trace(generate({FamilyKind::MPOW, n}));
            ConjectureRow row{"MPOW", n, std::to_string(j + 1), std::to_string(t.m), t.m == j + 1, t.odd_degrees};
            rep.rows.push_back(std::move(row));
        }
    }
    return rep;
}

/// Greatest s with 2^(s+1) <= n (n >= 4).
inline unsigned trinomial_s(unsigned n) {
    if (n < 4) throw DomainError("the trinomial conjectures need n >= 4");
    return static_cast<unsigned>(std::bit_width(n)) - 2;
}

/// Sizes of the maximal constant runs of an odd degree sequence, without the final 0.
inline std::vector<std::size_t> degree_blocks(const std::vector<std::size_t>& degrees) {
    std::vector<std::size_t> blocks;
    for (std::size_t i = 0; i + 1 < degrees.size(); ++i) {
        if (i == 0 || degrees[i] != degrees[i - 1]) {
            blocks.push_back(1);
        } else {
            ++blocks.back();
        }
    }
    return blocks;
}

namespace detail {

inline std::string join_sizes(const std::vector<std::size_t>& xs) {
    if (xs.empty()) return "-";
    std::string s;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ';';
        s += std::to_string(xs[i]);
    }
    return s;
}

}  // namespace detail

/// A = x^n + x + 1: for 1 <= t <= s-1 the odd sequence holds 2^t terms of a
/// common degree d_t. Runs are matched by position: the first two runs are
/// the seed and its successor, the run for t comes next (d_1 = deg A_5 = deg A_7).
inline ConjectureReport check_conjecture_3(unsigned n_lo, unsigned n_hi) {
    if (n_lo < 4 || n_hi < n_lo) throw DomainError("range must satisfy 4 <= n_lo <= n_hi");
    ConjectureReport rep{ConjectureId::C3, n_lo, n_hi, {}};
    for (unsigned n = n_lo; n <= n_hi; ++n) {
        const unsigned s = trinomial_s(n);
        auto t = trace(generate({FamilyKind::T, n}));
        const auto blocks = degree_blocks(t.odd_degrees);
        std::vector<std::size_t> predicted, observed;
        bool holds = true;
        for (unsigned k = 1; k + 1 <= s; ++k) {
            predicted.push_back(std::size_t{1} << k);
            const std::size_t got = k + 1 < blocks.size() ? blocks[k + 1] : 0;
            observed.push_back(got);
            holds = holds && got == (std::size_t{1} << k);
        }
        rep.rows.push_back({"T", n, detail::join_sizes(predicted), detail::join_sizes(observed), holds, t.odd_degrees});
    }
    return rep;
}

/// A = x^n + x + 1: the odd sequence, final 1 included, has 2^s + 1 terms.
inline ConjectureReport check_conjecture_4(unsigned n_lo, unsigned n_hi) {
    if (n_lo < 4 || n_hi < n_lo) throw DomainError("range must satisfy 4 <= n_lo <= n_hi");
    ConjectureReport rep{ConjectureId::C4, n_lo, n_hi, {}};
    for (unsigned n = n_lo; n <= n_hi; ++n) {
        const std::size_t predicted = (std::size_t{1} << trinomial_s(n)) + 1;
        auto t = trace(generate({FamilyKind::T, n}));
        rep.rows.push_back({"T", n, std::to_string(predicted), std::to_string(t.m), t.m == predicted, t.odd_degrees});
    }
    return rep;
}

inline std::string verdict_csv(const ConjectureReport& rep) {
    std::string out = "family,n,predicted,observed,verdict\n";
    for (const auto& r : rep.rows) {
        out += r.family + "," + std::to_string(r.n) + "," + r.predicted + "," + r.observed + "," +
               (r.holds ? "holds" : "fails") + "\n";
    }
    return out;
}

struct ConjugationReport {
    Poly seed;
    Poly conjugate;   // seed(x+1)
    Poly reciprocal;  // x^deg seed(1/x)
    std::vector<std::size_t> seed_degrees;
    std::vector<std::size_t> conjugate_degrees;
    std::vector<std::size_t> reciprocal_degrees;
    bool conjugate_equal = false;
    bool reciprocal_equal = false;
};

/// Side-by-side odd degree sequences of seed, its conjugate and its
/// reciprocal. The conjugate trace must be the term-wise conjugate of the
/// seed trace (M1 is self-conjugate); the reciprocal is only recorded.
inline ConjugationReport conjugation_experiment(const Poly& seed) {
    ConjugationReport rep;
    rep.seed = seed;
    rep.conjugate = bar(seed);
    rep.reciprocal = reciprocal(seed);
    const auto t = trace(seed);
    const auto tb = trace(rep.conjugate);
    if (tb != bar_trace(t)) throw InvariantViolation("trace of the conjugate of " + to_hex(seed) + " is not conjugate");
    rep.seed_degrees = t.odd_degrees;
    rep.conjugate_degrees = tb.odd_degrees;
    rep.reciprocal_degrees = trace(rep.reciprocal).odd_degrees;
    rep.conjugate_equal = rep.seed_degrees == rep.conjugate_degrees;
    rep.reciprocal_equal = rep.seed_degrees == rep.reciprocal_degrees;
    return rep;
}

struct FamilyTableRow {
    std::string label;
    std::vector<std::size_t> sequence;
    std::size_t length = 0;
};

inline std::vector<FamilyTableRow> family_table(FamilyKind kind, unsigned n_lo, unsigned n_hi) {
    std::vector<FamilyTableRow> rows;
    for (unsigned n = n_lo; n <= n_hi; ++n) {
        auto t = trace(generate({kind, n}));
        rows.push_back({std::to_string(n), t.odd_degrees, t.m});
    }
    return rows;
}

inline std::vector<FamilyTableRow> fixed_degree14_table() {
    std::vector<FamilyTableRow> rows;
    for (auto k : {FamilyKind::P1, FamilyKind::P2, FamilyKind::P3}) {
        auto t = trace(generate({k, 0}));
        rows.push_back({std::string(family_name(k)), t.odd_degrees, t.m});
    }
    return rows;
}

inline std::string render_table(std::string_view title, const std::vector<FamilyTableRow>& rows) {
    std::ostringstream os;
    os << title << '\n';
    for (const auto& r : rows) os << r.label << " | " << format_sequence(r.sequence) << " | " << r.length << '\n';
    return os.str();
}

}  // namespace polycollatz
