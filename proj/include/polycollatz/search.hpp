#pragma once

// Exhaustive searches over degree-n seeds:
//   f(n) - longest trajectory (odd terms through the first 1) of a degree-n seed,
//          or, under the step-count convention, most transformations to reach 1
//   g(n) - longest run of consecutive odd terms that all keep degree n
// Both scan the odd stratum in chunks on a worker pool and reduce the chunk
// results in chunk order, so results do not depend on the worker count.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "json.hpp"
#include "polycollatz/checkpoint.hpp"
#include "polycollatz/collatz.hpp"
#include "polycollatz/enumeration.hpp"
#include "polycollatz/error.hpp"
#include "polycollatz/parallel.hpp"
#include "polycollatz/poly.hpp"
#include "polycollatz/word.hpp"

namespace polycollatz {

/// Identifier of the length convention written next to every search value.
inline constexpr const char* kLengthConvention = "m";
inline constexpr const char* kChainConvention = "chain";

struct SearchRecord {
    unsigned n = 0;
    std::uint64_t value = 0;
    Poly witness;  // smallest degree-n mask attaining value
    std::uint64_t seeds_examined = 0;
    std::string convention = kLengthConvention;
    std::chrono::milliseconds wall_time{0};

    /// Equality of everything except the wall time.
    bool same_result(const SearchRecord& o) const {
        return n == o.n && value == o.value && witness == o.witness && seeds_examined == o.seeds_examined &&
               convention == o.convention;
    }
};

struct ChainCensus {
    unsigned n = 0;
    std::uint64_t chain_count = 0;
    std::uint64_t max_chain_len = 0;
    std::map<std::uint64_t, std::uint64_t> length_histogram;  // length -> number of chains
    std::vector<Poly> witness_chain;
    // Chains counted up to x -> x+1 conjugation.
    std::uint64_t bar_class_count = 0;

    friend bool operator==(const ChainCensus&, const ChainCensus&) = default;
};

struct SearchConfig {
    unsigned workers = 1;
    unsigned chunk_bits = 8;  // at most 2^chunk_bits chunks per degree
    std::optional<unsigned> ceiling;  // default 28 for f, 26 for g
    std::optional<std::filesystem::path> checkpoint;
    bool resume = false;
    // Stop after this many new chunks (simulates an interrupted run).
    std::optional<std::size_t> chunk_budget;
};

class SearchInterrupted : public Error {
public:
    explicit SearchInterrupted(std::size_t pending)
        : Error("search stopped with " + std::to_string(pending) + " chunks pending"), pending_(pending) {}
    std::size_t pending() const noexcept { return pending_; }

private:
    std::size_t pending_;
};

namespace detail {

struct ChunkPlan {
    unsigned degree;
    std::uint64_t chunk;
    StratumRange range;
};

// Odd strata of degrees lo..hi cut into chunks, largest degree first.
inline std::vector<ChunkPlan> plan_odd_chunks(unsigned lo, unsigned hi, unsigned chunk_bits) {
    std::vector<ChunkPlan> plan;
    for (unsigned d = hi + 1; d-- > lo;) {
        const StratumRange all(Stratum{d, Constraint::odd});
        if (all.empty()) continue;
        const std::uint64_t chunks = std::min<std::uint64_t>(all.size(), std::uint64_t{1} << chunk_bits);
        auto pieces = all.split(chunks);
        for (std::uint64_t c = 0; c < chunks; ++c) plan.push_back({d, c, pieces[c]});
    }
    return plan;
}

// Keeps the larger value; ties go to the smaller mask.
inline void merge_best(std::uint64_t& best, std::uint64_t& witness, std::uint64_t value, std::uint64_t mask) {
    if (value > best || (value == best && mask < witness)) {
        best = value;
        witness = mask;
    }
}

inline void check_degree(unsigned n, unsigned lo, unsigned default_ceiling, const SearchConfig& cfg) {
    const unsigned ceiling = cfg.ceiling.value_or(default_ceiling);
    if (n < lo) throw DomainError("n must be at least " + std::to_string(lo));
    if (n > ceiling) throw DomainError("n=" + std::to_string(n) + " exceeds the configured ceiling " + std::to_string(ceiling));
    if (n > static_cast<unsigned>(word::kMaxStepDegree)) throw DomainError("n above the single-word search limit");
    if (cfg.chunk_bits > 32) throw DomainError("chunk_bits above 32");
}

}  // namespace detail

/// Identifier for the step-count convention: the number of transformations
/// (odd-part extraction, then A -> 1 + M1*A) applied before reaching 1, tabulated
/// by coefficient count, so row n covers the seeds of degree n-1.
inline constexpr const char* kStepConvention = "steps";

namespace detail {

// Maximum m over each odd stratum of degree 0..n, as reduced from the chunk scan.
struct OddScan {
    std::vector<std::uint64_t> best, witness, examined;
};

inline OddScan scan_odd_strata(unsigned n, const SearchConfig& cfg) {
    const auto plan = plan_odd_chunks(0, n, cfg.chunk_bits);
    const CheckpointHeader header{1, n, cfg.chunk_bits};

    std::vector<std::optional<ChunkResult>> done(plan.size());
    std::vector<ChunkResult> carried;
    if (cfg.checkpoint && cfg.resume) {
        carried = load_checkpoint(*cfg.checkpoint, header);
        for (const auto& r : carried) {
            auto it = std::find_if(plan.begin(), plan.end(),
                                   [&](const ChunkPlan& p) { return p.degree == r.degree && p.chunk == r.chunk; });
            if (it == plan.end()) throw CheckpointError("checkpoint record outside the search range");
            auto& slot = done[static_cast<std::size_t>(it - plan.begin())];
            if (slot && !(*slot == r)) throw CheckpointError("conflicting checkpoint records");
            slot = r;
        }
    }
    std::optional<CheckpointWriter> writer;
    if (cfg.checkpoint) writer.emplace(*cfg.checkpoint, header, carried);

    auto work = [&](std::size_t i) {
        const auto& p = plan[i];
        ChunkResult r{p.degree, p.chunk, 0, 0, 0};
        for (auto it = p.range.begin(); it != p.range.end(); ++it) {
            const Word mask = it.mask();
            merge_best(r.best, r.witness, word::trajectory_length(mask), mask);
            ++r.examined;
        }
        return r;
    };
    auto fresh = parallel::run_indexed<ChunkResult>(
        plan.size(), cfg.workers, work, [&](std::size_t i) { return done[i].has_value(); },
        [&](std::size_t, const ChunkResult& r) {
            if (writer) writer->append(r);
        },
        cfg.chunk_budget);
    std::size_t pending = 0;
    for (std::size_t i = 0; i < plan.size(); ++i) {
        if (fresh[i]) done[i] = fresh[i];
        if (!done[i]) ++pending;
    }
    if (pending != 0) throw SearchInterrupted(pending);

    OddScan out{std::vector<std::uint64_t>(n + 1, 0), std::vector<std::uint64_t>(n + 1, 0),
                std::vector<std::uint64_t>(n + 1, 0)};
    for (const auto& r : done) {
        merge_best(out.best[r->degree], out.witness[r->degree], r->best, r->witness);
        out.examined[r->degree] += r->examined;
    }
    return out;
}

// Smallest degree-d mask below `limit` whose length equals value, or limit.
template <class Length>
Word first_attaining(unsigned d, Word limit, std::uint64_t value, std::uint64_t& examined, Length&& length) {
    for (Word mask = Word{1} << d; mask < limit; ++mask) {
        ++examined;
        if (length(mask) == value) return mask;
    }
    return limit;
}

}  // namespace detail

/// Transformations applied to a seed before it reaches 1: 2(m-1) for an odd
/// seed, 2m-1 otherwise, with m the trajectory length of its odd core.
inline std::uint64_t step_count(Word mask) noexcept {
    const std::uint64_t m = word::trajectory_length(mask);
    return word::is_odd(mask) ? 2 * (m - 1) : 2 * m - 1;
}

/// f(1..n) in one pass. Trajectory length depends only on the odd core and
/// every odd core of degree k <= n is the core of a degree-n seed (times x^(n-k)),
/// so f(n) = max over odd cores of degree <= n; the odd strata are scanned once
/// and shared by all rows.
inline std::vector<SearchRecord> compute_f_table(unsigned n, const SearchConfig& cfg = {}) {
    detail::check_degree(n, 1, 28, cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const auto scan = detail::scan_odd_strata(n, cfg);

    std::vector<SearchRecord> rows;
    std::uint64_t running_best = 0;  // max over odd cores of degree < d
    std::uint64_t cumulative = 0;
    for (unsigned d = 0; d <= n; ++d) {
        cumulative += scan.examined[d];
        const std::uint64_t below = running_best;
        running_best = std::max(running_best, scan.best[d]);
        if (d == 0) continue;

        SearchRecord rec;
        rec.n = d;
        rec.value = running_best;
        rec.seeds_examined = cumulative;
        Word w = scan.best[d] == running_best && scan.examined[d] != 0 ? scan.witness[d] : Word{1} << (d + 1);
        // A lower-degree core may attain the maximum through a smaller degree-d multiple.
        if (below == running_best) w = detail::first_attaining(d, w, running_best, rec.seeds_examined, word::trajectory_length);
        if (w == Word{1} << (d + 1)) throw InvariantViolation("no witness found for f(" + std::to_string(d) + ")");
        rec.witness = Poly::from_word(w);
        rows.push_back(std::move(rec));
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    for (auto& r : rows) r.wall_time = elapsed;
    return rows;
}

/// Rows 1..n under the step-count convention; row k is the maximum step count
/// over seeds of degree k-1. Shares the odd-stratum scan (and checkpoint) of
/// compute_f_table(n-1).
inline std::vector<SearchRecord> compute_f_steps_table(unsigned n, const SearchConfig& cfg = {}) {
    detail::check_degree(n, 1, 29, cfg);
    const auto t0 = std::chrono::steady_clock::now();
    const auto scan = detail::scan_odd_strata(n - 1, cfg);

    std::vector<SearchRecord> rows;
    std::uint64_t below = 0;  // max m over odd cores of degree < d
    std::uint64_t cumulative = 0;
    for (unsigned d = 0; d + 1 <= n; ++d) {
        cumulative += scan.examined[d];
        const std::uint64_t odd_best = scan.examined[d] != 0 ? 2 * (scan.best[d] - 1) : 0;
        const std::uint64_t even_best = below != 0 ? 2 * below - 1 : 0;

        SearchRecord rec;
        rec.n = d + 1;
        rec.value = std::max(odd_best, even_best);
        rec.seeds_examined = cumulative;
        rec.convention = kStepConvention;
        Word w = scan.examined[d] != 0 && odd_best == rec.value ? scan.witness[d] : Word{2} << d;
        if (even_best == rec.value) w = detail::first_attaining(d, w, rec.value, rec.seeds_examined, step_count);
        if (w == Word{2} << d) throw InvariantViolation("no witness found for row " + std::to_string(d + 1));
        rec.witness = Poly::from_word(w);
        rows.push_back(std::move(rec));
        below = std::max(below, scan.best[d]);
    }
    const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    for (auto& r : rows) r.wall_time = elapsed;
    return rows;
}

inline SearchRecord compute_f(unsigned n, const SearchConfig& cfg = {}) { return compute_f_table(n, cfg).back(); }

namespace detail {

// x^2+x+1 divides t iff t(w) = 0 at a primitive cube root of unity w; since
// x^k mod M1 depends only on k mod 3, that means the three parities of the
// coefficients in each residue class of k mod 3 agree.
constexpr bool divisible_by_m1(Word t) noexcept {
    constexpr Word kClass0 = 0x9249249249249249ULL;
    const int s0 = std::popcount(t & kClass0) & 1;
    const int s1 = std::popcount(t & (kClass0 << 1)) & 1;
    const int s2 = std::popcount(t & (kClass0 << 2)) & 1;
    return s0 == s1 && s1 == s2;
}

// An odd degree-n polynomial b has a within-degree predecessor a iff
// 1 + M1*a = x(x+1)*b, i.e. iff M1 divides x(x+1)*b + 1.
constexpr bool has_within_degree_predecessor(Word b) noexcept {
    return divisible_by_m1(((b << 1) ^ (b << 2)) ^ 1u);
}

}  // namespace detail

/// The next odd term if it keeps degree n (forcing valuations (1,1)), else nothing.
inline std::optional<Poly> within_degree_successor(const Poly& a, unsigned n) {
    if (!a.is_odd() || a.degree() != std::optional<std::size_t>(n)) {
        throw DomainError("within_degree_successor needs an odd polynomial of degree " + std::to_string(n));
    }
    auto s = step(a);
    if (s.next_odd.degree() == std::optional<std::size_t>(n)) return std::move(s.next_odd);
    return std::nullopt;
}

/// Length of the run of degree-n odd terms starting at the odd seed `a`.
inline std::uint64_t within_degree_run(Word a) noexcept {
    const int n = word::degree(a);
    std::uint64_t len = 1;
    for (Word cur = word::next_odd(a); word::degree(cur) == n; cur = word::next_odd(cur)) ++len;
    return len;
}

struct GResult {
    SearchRecord record;
    ChainCensus census;
};

/// g(n): the longest within-degree chain. The within-degree map is injective,
/// so chains are disjoint paths; they are walked from their heads only.
inline GResult compute_g(unsigned n, const SearchConfig& cfg = {}) {
    const SearchConfig& c = cfg;
    detail::check_degree(n, 2, 26, c);
    const auto t0 = std::chrono::steady_clock::now();

    struct Partial {
        std::map<std::uint64_t, std::uint64_t> histogram;
        std::uint64_t chains = 0;
        std::uint64_t self_conjugate = 0;
        std::uint64_t best = 0;
        std::uint64_t head = 0;
        std::uint64_t nodes = 0;
        std::uint64_t examined = 0;
    };

    const auto plan = detail::plan_odd_chunks(n, n, c.chunk_bits);
    auto work = [&](std::size_t i) {
        Partial p;
        for (auto it = plan[i].range.begin(); it != plan[i].range.end(); ++it) {
            const Word b = it.mask();
            ++p.examined;
            if (detail::has_within_degree_predecessor(b)) continue;
            const std::uint64_t len = within_degree_run(b);
            ++p.histogram[len];
            ++p.chains;
            p.nodes += len;
            if (word::bar(b) == b) ++p.self_conjugate;
            detail::merge_best(p.best, p.head, len, b);
        }
        return p;
    };
    auto parts = parallel::run_indexed<Partial>(plan.size(), c.workers, work);

    GResult out;
    ChainCensus& census = out.census;
    census.n = n;
    std::uint64_t head = 0;
    std::uint64_t nodes = 0;
    std::uint64_t self_conjugate = 0;
    std::uint64_t examined = 0;
    for (const auto& p : parts) {
        for (const auto& [len, k] : p->histogram) census.length_histogram[len] += k;
        census.chain_count += p->chains;
        nodes += p->nodes;
        self_conjugate += p->self_conjugate;
        examined += p->examined;
        detail::merge_best(census.max_chain_len, head, p->best, p->head);
    }
    // Every odd degree-n polynomial lies on exactly one chain.
    if (nodes != (std::uint64_t{1} << (n - 2))) {
        throw InvariantViolation("chain census covers " + std::to_string(nodes) + " nodes, expected 2^(n-2)");
    }
    census.bar_class_count = (census.chain_count + self_conjugate) / 2;
    Word cur = head;
    for (std::uint64_t k = 0; k < census.max_chain_len; ++k) {
        census.witness_chain.push_back(Poly::from_word(cur));
        cur = word::next_odd(cur);
    }

    out.record.n = n;
    out.record.convention = kChainConvention;
    out.record.value = census.max_chain_len;
    out.record.witness = Poly::from_word(head);
    out.record.seeds_examined = examined;
    out.record.wall_time = std::chrono::duration_cast<std::chrono::milliseconds>(std::chrono::steady_clock::now() - t0);
    return out;
}

/// Row of the n(n+1)/2 bound check. r_A = m + 1 is the checked quantity; the
/// m column is carried for comparison.
struct PolyBoundRow {
    unsigned n = 0;
    bool exhaustive = false;
    std::uint64_t seeds = 0;
    std::uint64_t max_m = 0;
    std::uint64_t bound = 0;             // n(n+1)/2
    std::uint64_t violations = 0;        // seeds with m + 1 > bound
    std::uint64_t violations_m = 0;      // seeds with m > bound
    std::uint64_t max_steps = 0;
    std::uint64_t violations_steps = 0;  // seeds with step_count > bound
    std::vector<Poly> violating_seeds;   // first few, ascending
    // The bound is motivated for n >= 2; at n = 1 the seed x has r_A = 2 > 1.
    bool in_regime = true;
};

struct PolyBoundReport {
    std::vector<PolyBoundRow> rows;

    std::uint64_t in_regime_violations() const {
        std::uint64_t v = 0;
        for (const auto& r : rows) v += r.in_regime ? r.violations : 0;
        return v;
    }
};

struct PolyBoundOptions {
    unsigned exhaustive_limit = 20;
    std::uint64_t samples = 10000;  // per degree above the exhaustive limit
    std::uint64_t rng_seed = 0x5eed;
    unsigned workers = 1;
    std::size_t max_listed = 16;
};

inline PolyBoundReport polybound_report(unsigned n_max, const PolyBoundOptions& opts = {}) {
    if (n_max < 1 || n_max > static_cast<unsigned>(word::kMaxStepDegree)) throw DomainError("n_max out of range");
    PolyBoundReport report;
    std::mt19937_64 rng(opts.rng_seed);
    for (unsigned n = 1; n <= n_max; ++n) {
        PolyBoundRow row;
        row.n = n;
        row.bound = std::uint64_t{n} * (n + 1) / 2;
        row.in_regime = n >= 2;
        row.exhaustive = n <= opts.exhaustive_limit;

        auto visit = [&](Word seed) {
            const std::uint64_t m = word::trajectory_length(seed);
            ++row.seeds;
            row.max_m = std::max(row.max_m, m);
            if (m > row.bound) ++row.violations_m;
            const std::uint64_t steps = word::is_odd(seed) ? 2 * (m - 1) : 2 * m - 1;
            row.max_steps = std::max(row.max_steps, steps);
            if (steps > row.bound) ++row.violations_steps;
            if (m + 1 > row.bound) {
                ++row.violations;
                if (row.violating_seeds.size() < opts.max_listed) row.violating_seeds.push_back(Poly::from_word(seed));
            }
        };
        if (row.exhaustive) {
            for (Word seed = Word{1} << n; seed < (Word{1} << (n + 1)); ++seed) visit(seed);
        } else {
            std::uniform_int_distribution<Word> low(0, (Word{1} << n) - 1);
            for (std::uint64_t s = 0; s < opts.samples; ++s) visit((Word{1} << n) | low(rng));
        }
        report.rows.push_back(std::move(row));
    }
    return report;
}

/// Degree-n seeds whose within-degree run from the seed has exactly
/// `chain_len` terms, with how their trajectory lengths compare to `target`
/// under the m, m+1 and step-count conventions.
struct TargetedLengthCheck {
    unsigned n = 0;
    std::uint64_t chain_len = 0;
    std::uint64_t target = 0;
    std::uint64_t candidates = 0;
    std::uint64_t min_m = 0;
    std::uint64_t max_m = 0;
    std::uint64_t matches_m = 0;          // m == target
    std::uint64_t matches_m_plus_1 = 0;   // m + 1 == target
    std::uint64_t matches_steps = 0;      // 2(m - 1) == target
    std::optional<Poly> witness_m;
    std::optional<Poly> witness_m_plus_1;
    std::optional<Poly> witness_steps;
};

inline TargetedLengthCheck targeted_length_check(unsigned n, std::uint64_t chain_len, std::uint64_t target,
                                                 unsigned workers = 1) {
    if (n < 2 || n > static_cast<unsigned>(word::kMaxStepDegree)) throw DomainError("n out of range");
    struct Partial {
        std::uint64_t candidates = 0, min_m = ~std::uint64_t{0}, max_m = 0, hit_m = 0, hit_m1 = 0, hit_steps = 0;
        Word first_m = 0, first_m1 = 0, first_steps = 0;
    };
    const auto plan = detail::plan_odd_chunks(n, n, 8);
    auto parts = parallel::run_indexed<Partial>(plan.size(), workers, [&](std::size_t i) {
        Partial p;
        for (auto it = plan[i].range.begin(); it != plan[i].range.end(); ++it) {
            const Word a = it.mask();
            if (within_degree_run(a) != chain_len) continue;
            const std::uint64_t m = word::trajectory_length(a);
            ++p.candidates;
            p.min_m = std::min(p.min_m, m);
            p.max_m = std::max(p.max_m, m);
            if (m == target && p.hit_m++ == 0) p.first_m = a;
            if (m + 1 == target && p.hit_m1++ == 0) p.first_m1 = a;
            if (2 * (m - 1) == target && p.hit_steps++ == 0) p.first_steps = a;
        }
        return p;
    });
    TargetedLengthCheck out;
    out.n = n;
    out.chain_len = chain_len;
    out.target = target;
    out.min_m = ~std::uint64_t{0};
    for (const auto& p : parts) {
        out.candidates += p->candidates;
        out.min_m = std::min(out.min_m, p->min_m);
        out.max_m = std::max(out.max_m, p->max_m);
        if (p->hit_m != 0 && !out.witness_m) out.witness_m = Poly::from_word(p->first_m);
        if (p->hit_m1 != 0 && !out.witness_m_plus_1) out.witness_m_plus_1 = Poly::from_word(p->first_m1);
        out.matches_m += p->hit_m;
        if (p->hit_steps != 0 && !out.witness_steps) out.witness_steps = Poly::from_word(p->first_steps);
        out.matches_m_plus_1 += p->hit_m1;
        out.matches_steps += p->hit_steps;
    }
    if (out.candidates == 0) out.min_m = 0;
    return out;
}

// Output formats.

inline std::string f_csv_header() { return "n,value,witness_hex,convention,seeds_examined,wall_ms"; }

/// One CSV row. wall_ms is left empty unless `with_timing`, which keeps the
/// default output byte-identical across runs and worker counts.
inline std::string to_csv_row(const SearchRecord& r, bool with_timing = false) {
    return std::to_string(r.n) + "," + std::to_string(r.value) + "," + to_hex(r.witness) + "," + r.convention + "," +
           std::to_string(r.seeds_examined) + "," + (with_timing ? std::to_string(r.wall_time.count()) : "");
}

inline nlohmann::json to_json(const SearchRecord& r, bool with_timing = false) {
    nlohmann::json j;
    j["n"] = r.n;
    j["value"] = r.value;
    j["witness_hex"] = to_hex(r.witness);
    j["convention"] = r.convention;
    j["seeds_examined"] = r.seeds_examined;
    if (with_timing) j["wall_ms"] = r.wall_time.count();
    return j;
}

inline SearchRecord record_from_json(const nlohmann::json& j) {
    SearchRecord r;
    r.n = j.at("n").get<unsigned>();
    r.value = j.at("value").get<std::uint64_t>();
    r.witness = from_hex(j.at("witness_hex").get<std::string>());
    r.convention = j.at("convention").get<std::string>();
    r.seeds_examined = j.at("seeds_examined").get<std::uint64_t>();
    r.wall_time = std::chrono::milliseconds(j.value("wall_ms", std::int64_t{0}));
    return r;
}

/// Inverse of to_csv_row.
inline SearchRecord record_from_csv(const std::string& line) {
    std::vector<std::string> f;
    std::size_t start = 0;
    for (;;) {
        const auto comma = line.find(',', start);
        f.push_back(line.substr(start, comma - start));
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    if (f.size() != 6) throw ParseError(line, "expected 6 CSV fields");
    SearchRecord r;
    r.n = static_cast<unsigned>(std::stoul(f[0]));
    r.value = std::stoull(f[1]);
    r.witness = from_hex(f[2]);
    r.convention = f[3];
    r.seeds_examined = std::stoull(f[4]);
    r.wall_time = std::chrono::milliseconds(f[5].empty() ? 0 : std::stoll(f[5]));
    return r;
}

inline nlohmann::json to_json(const ChainCensus& c) {
    nlohmann::json j;
    j["n"] = c.n;
    j["chain_count"] = c.chain_count;
    j["max_chain_len"] = c.max_chain_len;
    nlohmann::json hist = nlohmann::json::object();
    for (const auto& [len, k] : c.length_histogram) hist[std::to_string(len)] = k;
    j["histogram"] = std::move(hist);
    auto chain = nlohmann::json::array();
    for (const auto& p : c.witness_chain) chain.push_back(to_hex(p));
    j["witness_chain"] = std::move(chain);
    j["bar_class_count"] = c.bar_class_count;
    return j;
}

inline ChainCensus census_from_json(const nlohmann::json& j) {
    ChainCensus c;
    c.n = j.at("n").get<unsigned>();
    c.chain_count = j.at("chain_count").get<std::uint64_t>();
    c.max_chain_len = j.at("max_chain_len").get<std::uint64_t>();
    for (const auto& [len, k] : j.at("histogram").items()) c.length_histogram[std::stoull(len)] = k.get<std::uint64_t>();
    for (const auto& h : j.at("witness_chain")) c.witness_chain.push_back(from_hex(h.get<std::string>()));
    c.bar_class_count = j.value("bar_class_count", std::uint64_t{0});
    return c;
}

}  // namespace polycollatz
