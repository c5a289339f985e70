#pragma once

// Serialization of CollatzTrace: one-line text records and JSON objects.
// Polynomials are written as hex masks in both forms.

#include <charconv>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "polycollatz/collatz.hpp"

namespace polycollatz {

/// "[31, 29, 24, 24, 16, 16, 16, 16, 0]"
template <class Range>
std::string format_sequence(const Range& values) {
    std::string out = "[";
    bool first = true;
    for (const auto& v : values) {
        if (!first) out += ", ";
        out += std::to_string(v);
        first = false;
    }
    out += ']';
    return out;
}

namespace detail {

template <class T, class F>
std::string join(const std::vector<T>& xs, F&& fmt) {
    if (xs.empty()) return "-";
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ',';
        out += fmt(xs[i]);
    }
    return out;
}

inline std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (;;) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return parts;
}

inline std::size_t to_size(std::string_view s) {
    std::size_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) throw ParseError(std::string(s), "expected an integer");
    return v;
}

}  // namespace detail

/// seed=0x7 a0=0 b0=0 m=2 r_A=3 odd=0x7,0x1 even=0x14,0x6 val=2:2,1:1 odd_deg=2,0 even_deg=4,2
inline std::string to_text_record(const CollatzTrace& t) {
    auto hex = [](const Poly& p) { return to_hex(p); };
    auto num = [](std::size_t v) { return std::to_string(v); };
    std::ostringstream os;
    os << "seed=" << to_hex(t.seed) << " a0=" << t.seed_valuation.a << " b0=" << t.seed_valuation.b << " m=" << t.m
       << " r_A=" << t.r_A << " odd=" << (t.terms_retained ? detail::join(t.odd_terms, hex) : "-")
       << " even=" << (t.terms_retained ? detail::join(t.even_terms, hex) : "-") << " val="
       << detail::join(t.valuations, [](const Valuation& v) { return std::to_string(v.a) + ":" + std::to_string(v.b); })
       << " odd_deg=" << detail::join(t.odd_degrees, num) << " even_deg=" << detail::join(t.even_degrees, num);
    return os.str();
}

inline CollatzTrace from_text_record(std::string_view line) {
    CollatzTrace t;
    t.terms_retained = false;
    for (auto field : detail::split(line, ' ')) {
        if (field.empty()) continue;
        const auto eq = field.find('=');
        if (eq == std::string_view::npos) throw ParseError(std::string(field), "expected key=value");
        const auto key = field.substr(0, eq);
        const auto value = field.substr(eq + 1);
        auto list = [&]() { return value == "-" ? std::vector<std::string_view>{} : detail::split(value, ','); };
        if (key == "seed") {
            t.seed = from_hex(value);
        } else if (key == "a0") {
            t.seed_valuation.a = detail::to_size(value);
        } else if (key == "b0") {
            t.seed_valuation.b = detail::to_size(value);
        } else if (key == "m") {
            t.m = detail::to_size(value);
        } else if (key == "r_A") {
            t.r_A = detail::to_size(value);
        } else if (key == "odd") {
            for (auto h : list()) t.odd_terms.push_back(from_hex(h));
            t.terms_retained = value != "-";
        } else if (key == "even") {
            for (auto h : list()) t.even_terms.push_back(from_hex(h));
        } else if (key == "val") {
            for (auto v : list()) {
                const auto ab = detail::split(v, ':');
                if (ab.size() != 2) throw ParseError(std::string(v), "expected a:b");
                t.valuations.push_back({detail::to_size(ab[0]), detail::to_size(ab[1])});
            }
        } else if (key == "odd_deg") {
            for (auto d : list()) t.odd_degrees.push_back(detail::to_size(d));
        } else if (key == "even_deg") {
            for (auto d : list()) t.even_degrees.push_back(detail::to_size(d));
        } else {
            throw ParseError(std::string(key), "unknown trace field");
        }
    }
    return t;
}

inline nlohmann::json to_json(const CollatzTrace& t) {
    nlohmann::json j;
    j["seed"] = to_hex(t.seed);
    j["seed_valuation"] = {t.seed_valuation.a, t.seed_valuation.b};
    auto hexes = [](const std::vector<Poly>& ps) {
        auto arr = nlohmann::json::array();
        for (const auto& p : ps) arr.push_back(to_hex(p));
        return arr;
    };
    j["odd_terms"] = hexes(t.odd_terms);
    j["even_terms"] = hexes(t.even_terms);
    auto vals = nlohmann::json::array();
    for (const auto& v : t.valuations) vals.push_back({v.a, v.b});
    j["valuations"] = std::move(vals);
    j["m"] = t.m;
    j["r_A"] = t.r_A;
    j["odd_degrees"] = t.odd_degrees;
    j["even_degrees"] = t.even_degrees;
    j["terms_retained"] = t.terms_retained;
    return j;
}

inline CollatzTrace trace_from_json(const nlohmann::json& j) {
    CollatzTrace t;
    t.seed = from_hex(j.at("seed").get<std::string>());
    t.seed_valuation = {j.at("seed_valuation").at(0).get<std::size_t>(), j.at("seed_valuation").at(1).get<std::size_t>()};
    for (const auto& h : j.at("odd_terms")) t.odd_terms.push_back(from_hex(h.get<std::string>()));
    for (const auto& h : j.at("even_terms")) t.even_terms.push_back(from_hex(h.get<std::string>()));
    for (const auto& v : j.at("valuations")) t.valuations.push_back({v.at(0).get<std::size_t>(), v.at(1).get<std::size_t>()});
    t.m = j.at("m").get<std::size_t>();
    t.r_A = j.at("r_A").get<std::size_t>();
    t.odd_degrees = j.at("odd_degrees").get<std::vector<std::size_t>>();
    t.even_degrees = j.at("even_degrees").get<std::vector<std::size_t>>();
    t.terms_retained = j.value("terms_retained", true);
    return t;
}

}  // namespace polycollatz
