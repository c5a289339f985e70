#pragma once

// Slow reference arithmetic on coefficient lists (index k = coefficient of
// x^k). Shares no code with the library.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "polycollatz/poly.hpp"

namespace oracle {

using Coeffs = std::vector<int>;

inline Coeffs trim(Coeffs c) {
    while (!c.empty() && c.back() == 0) c.pop_back();
    return c;
}

inline Coeffs from_poly(const polycollatz::Poly& p) {
    Coeffs c;
    if (p.is_zero()) return c;
    for (std::size_t k = 0; k <= *p.degree(); ++k) c.push_back(p.coeff(k) ? 1 : 0);
    return c;
}

inline polycollatz::Poly to_poly(const Coeffs& c) {
    polycollatz::Poly p;
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (c[k] & 1) p.flip(k);
    }
    return p;
}

inline Coeffs from_mask(std::uint64_t m) {
    Coeffs c;
    for (int k = 0; k < 64; ++k) c.push_back(static_cast<int>((m >> k) & 1));
    return trim(c);
}

inline std::uint64_t to_mask(const Coeffs& c) {
    std::uint64_t m = 0;
    for (std::size_t k = 0; k < c.size(); ++k) m |= static_cast<std::uint64_t>(c[k] & 1) << k;
    return m;
}

inline int degree(const Coeffs& c) { return static_cast<int>(trim(c).size()) - 1; }

inline Coeffs add(const Coeffs& a, const Coeffs& b) {
    Coeffs c(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) c[i] ^= a[i];
    for (std::size_t i = 0; i < b.size(); ++i) c[i] ^= b[i];
    return trim(c);
}

/// Naive convolution mod 2.
inline Coeffs mul(const Coeffs& a, const Coeffs& b) {
    if (a.empty() || b.empty()) return {};
    Coeffs c(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i) {
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] = (c[i + j] + a[i] * b[j]) % 2;
    }
    return trim(c);
}

/// Schoolbook long division.
inline std::pair<Coeffs, Coeffs> div_rem(Coeffs p, const Coeffs& d) {
    const Coeffs dd = trim(d);
    p = trim(p);
    const int n = degree(dd);
    Coeffs q;
    while (degree(p) >= n) {
        const int shift = degree(p) - n;
        if (static_cast<int>(q.size()) <= shift) q.resize(shift + 1, 0);
        q[shift] ^= 1;
        for (int k = 0; k <= n; ++k) p[k + shift] ^= dd[k];
        p = trim(p);
    }
    return {trim(q), p};
}

/// p(x+1) by expanding every power of (x+1).
inline Coeffs bar(const Coeffs& p) {
    Coeffs out;
    Coeffs power{1};
    for (std::size_t k = 0; k < p.size(); ++k) {
        if (p[k]) out = add(out, power);
        power = mul(power, Coeffs{1, 1});
    }
    return out;
}

/// Largest e with f^e dividing p, by repeated division.
inline std::size_t valuation(Coeffs p, const Coeffs& f) {
    std::size_t e = 0;
    for (;;) {
        auto [q, r] = div_rem(p, f);
        if (!r.empty()) return e;
        p = q;
        ++e;
    }
}

inline const Coeffs kX{0, 1};
inline const Coeffs kX1{1, 1};
inline const Coeffs kM1{1, 1, 1};

struct Split {
    std::size_t a = 0, b = 0;
    Coeffs core;
};

inline Split odd_split(const Coeffs& p) {
    Split s;
    s.a = valuation(p, kX);
    Coeffs rest = p;
    for (std::size_t i = 0; i < s.a; ++i) rest = div_rem(rest, kX).first;
    s.b = valuation(rest, kX1);
    for (std::size_t i = 0; i < s.b; ++i) rest = div_rem(rest, kX1).first;
    s.core = rest;
    return s;
}

struct Step {
    Coeffs even;
    std::size_t a = 0, b = 0;
    Coeffs next;
};

inline Step step(const Coeffs& odd) {
    Step s;
    s.even = add(Coeffs{1}, mul(kM1, odd));
    auto sp = odd_split(s.even);
    s.a = sp.a;
    s.b = sp.b;
    s.next = sp.core;
    return s;
}

/// Odd terms from the seed's core through the first 1.
inline std::vector<Coeffs> odd_terms(const Coeffs& seed) {
    std::vector<Coeffs> out{odd_split(seed).core};
    while (out.back() != Coeffs{1}) out.push_back(step(out.back()).next);
    return out;
}

inline std::size_t trajectory_length(std::uint64_t seed) { return odd_terms(from_mask(seed)).size(); }

/// Chains of the within-degree map on odd degree-n polynomials, found by
/// following successors from every node and keeping the maximal paths.
inline std::map<std::uint64_t, std::uint64_t> chain_histogram(int n, std::size_t* max_len = nullptr) {
    std::map<std::uint64_t, std::uint64_t> succ;
    std::set<std::uint64_t> nodes, has_pred;
    for (std::uint64_t m = std::uint64_t{1} << n; m < (std::uint64_t{2} << n); ++m) {
        const auto c = from_mask(m);
        if (c[0] != 1 || (std::count(c.begin(), c.end(), 1) % 2) != 1) continue;
        nodes.insert(m);
        const auto nx = step(c).next;
        if (degree(nx) == n) {
            succ[m] = to_mask(nx);
            has_pred.insert(to_mask(nx));
        }
    }
    std::map<std::uint64_t, std::uint64_t> hist;
    std::size_t best = 0;
    for (auto m : nodes) {
        if (has_pred.count(m)) continue;
        std::size_t len = 1;
        for (auto it = succ.find(m); it != succ.end(); it = succ.find(it->second)) ++len;
        ++hist[len];
        best = std::max(best, len);
    }
    if (max_len) *max_len = best;
    return hist;
}

inline polycollatz::Poly random_poly(std::mt19937_64& rng, std::size_t max_degree, bool nonzero = true) {
    std::uniform_int_distribution<std::size_t> deg(0, max_degree);
    const std::size_t d = deg(rng);
    polycollatz::Poly p = polycollatz::Poly::monomial(d);
    for (std::size_t k = 0; k < d; ++k) {
        if (rng() & 1) p.flip(k);
    }
    if (!nonzero && (rng() % 16) == 0) return {};
    return p;
}

}  // namespace oracle
