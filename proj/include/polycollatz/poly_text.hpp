#pragma once

// Text forms of Poly: monomial sums ("x^5+x^2+1") and hex masks ("0x25").

#include <cctype>
#include <charconv>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "polycollatz/poly.hpp"

namespace polycollatz {

namespace detail {

inline std::string_view trim_ws(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

// Parsing cap on exponents; far above anything the tools produce.
inline constexpr std::size_t kMaxParsedDegree = std::size_t{1} << 24;

inline std::size_t parse_monomial(std::string_view term) {
    if (term == "1") return 0;
    if (term.empty() || (term[0] != 'x' && term[0] != 'X')) {
        throw ParseError(std::string(term), "expected 1, x or x^k");
    }
    if (term.size() == 1) return 1;
    if (term[1] != '^' || term.size() == 2) throw ParseError(std::string(term), "expected x^k");
    std::size_t k = 0;
    const char* first = term.data() + 2;
    const char* last = term.data() + term.size();
    auto [ptr, ec] = std::from_chars(first, last, k);
    if (ec != std::errc{} || ptr != last) throw ParseError(std::string(term), "exponent is not a nonnegative integer");
    if (k > kMaxParsedDegree) throw ParseError(std::string(term), "exponent too large");
    return k;
}

inline int hex_digit(char c) {
    if (c >= '0' && c <= '9') return c - '0';
    if (c >= 'a' && c <= 'f') return c - 'a' + 10;
    if (c >= 'A' && c <= 'F') return c - 'A' + 10;
    return -1;
}

}  // namespace detail

/// Parses "0x..." hex masks (bit k <-> x^k).
inline Poly from_hex(std::string_view text) {
    const auto s = detail::trim_ws(text);
    if (s.size() < 3 || s[0] != '0' || (s[1] != 'x' && s[1] != 'X')) {
        throw ParseError(std::string(s), "hex mask must look like 0x1f");
    }
    const auto digits = s.substr(2);
    std::vector<Word> words((digits.size() + 15) / 16, 0);
    for (std::size_t i = 0; i < digits.size(); ++i) {
        const int v = detail::hex_digit(digits[digits.size() - 1 - i]);
        if (v < 0) throw ParseError(std::string(1, digits[digits.size() - 1 - i]), "not a hex digit");
        words[i / 16] |= static_cast<Word>(v) << (4 * (i % 16));
    }
    return Poly::from_words(std::move(words));
}

inline std::string to_hex(const Poly& p) {
    if (p.is_zero()) return "0x0";
    static constexpr char kDigits[] = "0123456789abcdef";
    std::string out;
    const std::size_t nibbles = *p.degree() / 4 + 1;
    out.reserve(nibbles + 2);
    out += "0x";
    for (std::size_t i = nibbles; i-- > 0;) {
        const Word w = p.words()[i / 16];
        out += kDigits[(w >> (4 * (i % 16))) & 0xF];
    }
    return out;
}

/// Parses a sum of distinct monomials ("x^5+x^2+1", any order, "0" alone for
/// zero) or a hex mask.
inline Poly parse(std::string_view text) {
    const auto s = detail::trim_ws(text);
    if (s.empty()) throw ParseError("", "empty input");
    if (s.size() >= 2 && s[0] == '0' && (s[1] == 'x' || s[1] == 'X')) return from_hex(s);
    if (s == "0") return {};

    std::set<std::size_t> seen;
    Poly p;
    std::size_t start = 0;
    while (start <= s.size()) {
        std::size_t plus = s.find('+', start);
        if (plus == std::string_view::npos) plus = s.size();
        const auto raw = s.substr(start, plus - start);
        const auto term = detail::trim_ws(raw);
        const std::size_t k = detail::parse_monomial(term);
        if (!seen.insert(k).second) throw ParseError(std::string(term), "duplicate monomial");
        p.flip(k);
        start = plus + 1;
    }
    return p;
}

inline std::string format(const Poly& p) {
    if (p.is_zero()) return "0";
    std::string out;
    for (std::size_t k = *p.degree() + 1; k-- > 0;) {
        if (!p.coeff(k)) continue;
        if (!out.empty()) out += '+';
        if (k == 0) {
            out += '1';
        } else if (k == 1) {
            out += 'x';
        } else {
            out += "x^";
            out += std::to_string(k);
        }
    }
    return out;
}

}  // namespace polycollatz
