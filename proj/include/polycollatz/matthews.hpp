#pragma once

// Generalized map T = (K_r S + R_r) / D over F2[x], where r = S mod D.
// In characteristic 2 the "- R" of the general form is "+ R".
// Every residue may carry its own multiplier K_r (default K), which is how
// the divided-by-x branch of the divergent example map is expressed.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "polycollatz/error.hpp"
#include "polycollatz/parallel.hpp"
#include "polycollatz/poly.hpp"

namespace polycollatz {

class MatthewsConfigError : public Error {
public:
    enum class Kind { zero_modulus, modulus_too_large, not_coprime, incomplete_residues, residue_mismatch };

    MatthewsConfigError(Kind kind, const std::string& what) : Error(what), kind_(kind) {}
    Kind kind() const noexcept { return kind_; }

private:
    Kind kind_;
};

// Residue tables are dense, indexed by the residue's mask.
inline constexpr unsigned kMaxModulusDegree = 20;

struct ResidueBranch {
    Poly multiplier;  // K_r
    Poly offset;      // R_r
};

struct MatthewsConfig {
    Poly K;
    Poly D;
    std::vector<ResidueBranch> branches;  // index = mask of r, deg r < deg D

    const ResidueBranch& branch(const Poly& r) const { return branches[r.is_zero() ? 0 : r.low_word()]; }
};

inline Poly gcd(Poly a, Poly b) {
    while (!b.is_zero()) {
        Poly r = a % b;
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

/// Validates and builds a config. `offsets` maps each residue r to R_r;
/// `multipliers` optionally overrides K for individual residues.
inline MatthewsConfig make_config(const Poly& K, const Poly& D, const std::map<Poly, Poly>& offsets,
                                  const std::map<Poly, Poly>& multipliers = {}) {
    using Kind = MatthewsConfigError::Kind;
    if (D.is_zero()) throw MatthewsConfigError(Kind::zero_modulus, "modulus D is zero");
    const std::size_t dd = *D.degree();
    if (dd > kMaxModulusDegree) {
        throw MatthewsConfigError(Kind::modulus_too_large, "modulus degree above " + std::to_string(kMaxModulusDegree));
    }
    auto check_coprime = [&](const Poly& k, const std::string& label) {
        if (!gcd(k, D).is_one()) {
            throw MatthewsConfigError(Kind::not_coprime, label + " = " + format(k) + " is not coprime to D = " + format(D));
        }
    };
    check_coprime(K, "K");

    const std::size_t residues = std::size_t{1} << dd;
    auto residue_index = [&](const Poly& r, const char* table) -> std::size_t {
        if (!r.is_zero() && *r.degree() >= dd) {
            throw MatthewsConfigError(Kind::incomplete_residues,
                                      std::string(table) + " key " + format(r) + " is not a reduced residue modulo " + format(D));
        }
        return r.is_zero() ? 0 : static_cast<std::size_t>(r.low_word());
    };

    MatthewsConfig cfg{K, D, std::vector<ResidueBranch>(residues, ResidueBranch{K, Poly{}})};
    std::vector<bool> seen(residues, false);
    for (const auto& [r, R] : offsets) {
        const auto i = residue_index(r, "R");
        seen[i] = true;
        cfg.branches[i].offset = R;
    }
    if (offsets.size() != residues || !std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) {
        throw MatthewsConfigError(Kind::incomplete_residues, "residue map has " + std::to_string(offsets.size()) +
                                                                 " entries, modulus needs " + std::to_string(residues));
    }
    for (const auto& [r, k] : multipliers) {
        const auto i = residue_index(r, "K");
        check_coprime(k, "K[" + format(r) + "]");
        cfg.branches[i].multiplier = k;
    }
    for (std::size_t i = 0; i < residues; ++i) {
        const Poly r = Poly::from_word(i);
        const auto& b = cfg.branches[i];
        if (!((b.offset + b.multiplier * r) % D).is_zero()) {
            throw MatthewsConfigError(Kind::residue_mismatch, "R[" + format(r) + "] = " + format(b.offset) +
                                                                  " is not congruent to K_r * r modulo D");
        }
    }
    return cfg;
}

inline Poly step(const MatthewsConfig& cfg, const Poly& s) {
    const Poly r = s % cfg.D;
    const auto& b = cfg.branch(r);
    auto [q, rem] = div_rem(b.multiplier * s + b.offset, cfg.D);
    if (!rem.is_zero()) throw InvariantViolation("inexact division in Matthews step at " + format(s));
    return std::move(q);
}

enum class OutcomeKind { cycle, degree_divergence, step_exhausted };

inline std::string_view to_string(OutcomeKind k) {
    switch (k) {
        case OutcomeKind::cycle: return "cycle";
        case OutcomeKind::degree_divergence: return "degree_divergence";
        case OutcomeKind::step_exhausted: return "step_exhausted";
    }
    return "?";
}

// Number of leading trajectory values kept in an outcome.
inline constexpr std::size_t kPrefixCap = 64;

struct TrajectoryOutcome {
    OutcomeKind kind = OutcomeKind::step_exhausted;
    std::uint64_t steps = 0;        // index of the deciding term
    std::uint64_t cycle_entry = 0;  // cycle only
    std::vector<Poly> cycle;        // cycle only, starting at the entry
    std::size_t threshold = 0;      // degree threshold in force
    std::vector<Poly> prefix;
    std::vector<long> degrees;  // degree of x_0..x_steps, -1 for zero
    long max_degree = -1;

    std::uint64_t cycle_length() const noexcept { return cycle.size(); }
    friend bool operator==(const TrajectoryOutcome&, const TrajectoryOutcome&) = default;
};

namespace detail {

inline long degree_or_minus(const Poly& p) { return p.is_zero() ? -1 : static_cast<long>(*p.degree()); }

}  // namespace detail

/// Classifies the trajectory x_0 = seed, x_{i+1} = step(x_i) by the first of:
/// x_i equals an earlier term (cycle), deg x_i > threshold (divergence), or
/// i = step_cap (exhausted). Repeats are found with Brent's scheme; the result
/// is what direct iteration with a visited set would report.
inline TrajectoryOutcome classify(const MatthewsConfig& cfg, const Poly& seed, std::size_t degree_threshold,
                                  std::uint64_t step_cap) {
    if (degree_threshold == 0 || step_cap == 0) throw DomainError("thresholds must be positive");
    TrajectoryOutcome out;
    out.threshold = degree_threshold;

    std::vector<long> degrees;
    auto finish = [&](OutcomeKind kind, std::uint64_t steps) {
        out.kind = kind;
        out.steps = steps;
        degrees.resize(std::min<std::size_t>(degrees.size(), steps + 1));
        out.degrees = std::move(degrees);
        out.max_degree = *std::max_element(out.degrees.begin(), out.degrees.end());
        Poly x = seed;
        for (std::uint64_t i = 0; i <= steps && i < kPrefixCap; ++i) {
            out.prefix.push_back(x);
            if (i < steps) x = step(cfg, x);
        }
        return out;
    };

    // A cycle closing at index <= cap is detected by hare index 2 * (cap + 1).
    const std::uint64_t hare_limit = 2 * step_cap + 2;
    Poly tortoise = seed;
    Poly hare = seed;
    std::uint64_t h = 0;
    degrees.push_back(detail::degree_or_minus(seed));
    if (degrees.back() > static_cast<long>(degree_threshold)) return finish(OutcomeKind::degree_divergence, 0);

    std::uint64_t power = 1, lam = 0;
    bool found = false;
    while (h < hare_limit) {
        hare = step(cfg, hare);
        ++h;
        ++lam;
        degrees.push_back(detail::degree_or_minus(hare));
        if (degrees.back() > static_cast<long>(degree_threshold)) {
            // Terms past a closed cycle repeat earlier, bounded terms, so this one is new.
            return h <= step_cap ? finish(OutcomeKind::degree_divergence, h) : finish(OutcomeKind::step_exhausted, step_cap);
        }
        if (hare == tortoise) {
            found = true;
            break;
        }
        if (lam == power) {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
    }
    if (!found) return finish(OutcomeKind::step_exhausted, step_cap);

    // Entry index: walk two pointers lam apart from the seed.
    Poly a = seed, b = seed;
    for (std::uint64_t i = 0; i < lam; ++i) b = step(cfg, b);
    std::uint64_t mu = 0;
    while (a != b) {
        a = step(cfg, a);
        b = step(cfg, b);
        ++mu;
    }
    if (mu + lam > step_cap) return finish(OutcomeKind::step_exhausted, step_cap);
    out.cycle_entry = mu;
    Poly c = a;
    for (std::uint64_t i = 0; i < lam; ++i) {
        out.cycle.push_back(c);
        c = step(cfg, c);
    }
    return finish(OutcomeKind::cycle, mu + lam);
}

struct CensusRow {
    Poly seed;
    TrajectoryOutcome outcome;
};

/// Classifies every nonzero seed of degree <= max_seed_degree, in mask order.
inline std::vector<CensusRow> census(const MatthewsConfig& cfg, unsigned max_seed_degree, std::size_t degree_threshold,
                                     std::uint64_t step_cap, unsigned workers = 1) {
    if (max_seed_degree > 24) throw DomainError("census seed degree above 24");
    const std::size_t count = (std::size_t{1} << (max_seed_degree + 1)) - 1;
    auto slots = parallel::run_indexed<CensusRow>(count, workers, [&](std::size_t i) {
        Poly seed = Poly::from_word(i + 1);
        auto o = classify(cfg, seed, degree_threshold, step_cap);
        return CensusRow{std::move(seed), std::move(o)};
    });
    std::vector<CensusRow> rows;
    rows.reserve(count);
    for (auto& s : slots) rows.push_back(std::move(*s));
    return rows;
}

inline std::string census_csv(const std::vector<CensusRow>& rows) {
    std::string out = "seed_hex,kind,steps,max_degree,cycle_len\n";
    for (const auto& r : rows) {
        out += to_hex(r.seed) + "," + std::string(to_string(r.outcome.kind)) + "," + std::to_string(r.outcome.steps) + "," +
               std::to_string(r.outcome.max_degree) + "," + std::to_string(r.outcome.cycle_length()) + "\n";
    }
    return out;
}

/// Reads a config: `K=<poly>`, `D=<poly>`, one `R[<residue>]=<poly>` per
/// residue and optional `K[<residue>]=<poly>` overrides. Blank lines and
/// lines starting with '#' are skipped.
inline MatthewsConfig parse_config(std::istream& in) {
    std::optional<Poly> K, D;
    std::map<Poly, Poly> offsets, multipliers;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        const auto body = detail::trim_ws(line);
        if (body.empty() || body.front() == '#') continue;
        const auto eq = body.find('=');
        if (eq == std::string_view::npos) throw ParseError(std::string(body), "expected key=value");
        const auto key = detail::trim_ws(body.substr(0, eq));
        const Poly value = parse(body.substr(eq + 1));
        if (key == "K") {
            K = value;
        } else if (key == "D") {
            D = value;
        } else if (key.size() > 3 && (key[0] == 'R' || key[0] == 'K') && key[1] == '[' && key.back() == ']') {
            const Poly r = parse(key.substr(2, key.size() - 3));
            auto& table = key[0] == 'R' ? offsets : multipliers;
            if (!table.emplace(r, value).second) throw ParseError(std::string(key), "duplicate residue");
        } else {
            throw ParseError(std::string(key), "unknown config key");
        }
    }
    if (!K) throw ParseError("K", "missing multiplier");
    if (!D) throw ParseError("D", "missing modulus");
    return make_config(*K, *D, offsets, multipliers);
}

inline MatthewsConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DomainError("cannot open config " + path);
    return parse_config(in);
}

/// The divergent example: A/x when x divides A, ((x+1)^3 A + 1)/x otherwise.
inline MatthewsConfig example_divergent_config() {
    const Poly x = Poly::monomial(1);
    const Poly k = pow(x + Poly::one(), 3);
    return make_config(k, x, {{Poly{}, Poly{}}, {Poly::one(), Poly::one()}}, {{Poly{}, Poly::one()}});
}

}  // namespace polycollatz
