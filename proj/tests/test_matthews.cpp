#include <gtest/gtest.h>

#include <cstdlib>
#include <fstream>
#include <map>
#include <random>
#include <sstream>

#include "oracle.hpp"
#include "polycollatz/matthews.hpp"

using namespace polycollatz;

#ifndef POLYCOLLATZ_GOLDEN_DIR
#define POLYCOLLATZ_GOLDEN_DIR "tests/golden"
#endif

namespace {

Poly P(const char* s) { return parse(s); }

const std::string kGoldenDir = POLYCOLLATZ_GOLDEN_DIR;

// Direct iteration on coefficient lists with a visited map; the map branch
// is chosen from the explicit residue table.
struct OracleMap {
    oracle::Coeffs D;
    std::map<oracle::Coeffs, std::pair<oracle::Coeffs, oracle::Coeffs>> branch;  // r -> (K_r, R_r)

    oracle::Coeffs operator()(const oracle::Coeffs& s) const {
        const auto r = oracle::div_rem(s, D).second;
        const auto& [k, off] = branch.at(r);
        auto [q, rem] = oracle::div_rem(oracle::add(oracle::mul(k, s), off), D);
        if (!rem.empty()) throw std::logic_error("inexact");
        return q;
    }
};

OracleMap example_oracle() {
    return {{0, 1}, {{{}, {{1}, {}}}, {{1}, {{1, 1, 1, 1}, {1}}}}};
}

std::string oracle_census(const OracleMap& f, unsigned max_seed_degree, long threshold, std::uint64_t cap) {
    std::string out = "seed_hex,kind,steps,max_degree,cycle_len\n";
    for (std::uint64_t s = 1; s < (std::uint64_t{2} << max_seed_degree); ++s) {
        std::map<oracle::Coeffs, std::uint64_t> seen;
        oracle::Coeffs x = oracle::from_mask(s);
        long max_deg = -1;
        std::string kind;
        std::uint64_t i = 0, cycle = 0;
        for (;; ++i) {
            if (auto it = seen.find(x); it != seen.end()) {
                kind = "cycle";
                cycle = i - it->second;
                break;
            }
            seen.emplace(x, i);
            max_deg = std::max<long>(max_deg, oracle::degree(x));
            if (oracle::degree(x) > threshold) {
                kind = "degree_divergence";
                break;
            }
            if (i == cap) {
                kind = "step_exhausted";
                break;
            }
            x = f(x);
        }
        out += to_hex(Poly::from_word(s)) + "," + kind + "," + std::to_string(i) + "," + std::to_string(max_deg) + "," +
               std::to_string(cycle) + "\n";
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(MakeConfig, ExampleMapsAreValid) {
    EXPECT_NO_THROW(example_divergent_config());
    EXPECT_NO_THROW(make_config(Poly::one(), P("x"), {{Poly{}, Poly{}}, {Poly::one(), Poly::one()}}));
    EXPECT_NO_THROW(make_config(P("x"), P("x+1"), {{Poly{}, Poly{}}, {Poly::one(), P("x")}}));
}

TEST(MakeConfig, DistinctErrors) {
    using Kind = MatthewsConfigError::Kind;
    auto kind_of = [](auto&& f) {
        try {
            f();
        } catch (const MatthewsConfigError& e) {
            return std::optional<Kind>(e.kind());
        }
        return std::optional<Kind>();
    };
    EXPECT_EQ(kind_of([] { make_config(P("x"), Poly{}, {}); }), Kind::zero_modulus);
    EXPECT_EQ(kind_of([] { make_config(P("x^2+x"), P("x"), {{Poly{}, Poly{}}, {Poly::one(), Poly{}}}); }),
              Kind::not_coprime);
    EXPECT_EQ(kind_of([] { make_config(P("x+1"), P("x"), {{Poly{}, Poly{}}}); }), Kind::incomplete_residues);
    EXPECT_EQ(kind_of([] { make_config(P("x+1"), P("x"), {{Poly{}, Poly{}}, {P("x"), Poly{}}}); }),
              Kind::incomplete_residues);
    EXPECT_EQ(kind_of([] { make_config(P("x+1"), P("x"), {{Poly{}, Poly{}}, {Poly::one(), Poly{}}}); }),
              Kind::residue_mismatch);
    EXPECT_EQ(kind_of([] {
                  make_config(P("x+1"), P("x"), {{Poly{}, Poly{}}, {Poly::one(), Poly::one()}}, {{Poly{}, P("x")}});
              }),
              Kind::not_coprime);
}

TEST(MakeConfig, Gcd) {
    EXPECT_EQ(gcd(P("x^4+x^2"), P("x^3+x")), P("x^3+x"));
    EXPECT_TRUE(gcd(P("x^2+x+1"), P("x^3+x+1")).is_one());
}

TEST(MatthewsStep, Examples) {
    const auto cfg = example_divergent_config();
    EXPECT_EQ(step(cfg, Poly::one()), P("x^2+x+1"));
    EXPECT_EQ(step(cfg, P("x^2+x+1")), P("x^4+x^2+x"));
    EXPECT_EQ(step(cfg, P("x^4+x^2+x")), P("x^3+x+1"));
    const auto shift = make_config(Poly::one(), P("x"), {{Poly{}, Poly{}}, {Poly::one(), Poly::one()}});
    EXPECT_EQ(step(shift, P("x^5+x^2+1")), P("x^4+x"));
    const auto k = make_config(P("x^2+x+1"), P("x^2+1"),
                               {{Poly{}, Poly{}}, {Poly::one(), P("x")}, {P("x"), Poly::one()}, {P("x+1"), P("x+1")}});
    const Poly s = P("x^7+x^5+x^2+1");  // divisible by x^2+1
    EXPECT_EQ(step(k, s), P("x^2+x+1") * s / P("x^2+1"));
}

TEST(MatthewsStep, ReconstructionOnRandomConfigs) {
    std::mt19937_64 rng(21);
    int checked = 0;
    while (checked < 10000) {
        const Poly D = oracle::random_poly(rng, 5);
        if (D.is_zero() || *D.degree() == 0) continue;
        const Poly K = oracle::random_poly(rng, 6);
        if (!gcd(K, D).is_one()) continue;
        const std::size_t dd = *D.degree();
        std::map<Poly, Poly> R;
        for (Word r = 0; r < (Word{1} << dd); ++r) {
            const Poly rp = Poly::from_word(r);
            R[rp] = (K * rp) % D + D * oracle::random_poly(rng, 3, false);
        }
        const auto cfg = make_config(K, D, R);
        for (int i = 0; i < 20; ++i, ++checked) {
            const Poly s = oracle::random_poly(rng, 80, false);
            const Poly r = s % D;
            const Poly t = step(cfg, s);
            ASSERT_EQ(D * t + R.at(r), K * s);
        }
    }
}

TEST(Classify, ExamplePrefix) {
    const auto o = classify(example_divergent_config(), Poly::one(), 100, 10000);
    ASSERT_GE(o.prefix.size(), 4u);
    EXPECT_EQ(o.prefix[1], P("x^2+x+1"));
    EXPECT_EQ(o.prefix[2], P("x^4+x^2+x"));
    EXPECT_EQ(o.prefix[3], P("x^3+x+1"));
    EXPECT_EQ((std::vector<long>(o.degrees.begin(), o.degrees.begin() + 4)), (std::vector<long>{0, 2, 4, 3}));
}

TEST(Classify, PureShiftReachesZero) {
    const auto shift = make_config(Poly::one(), P("x"), {{Poly{}, Poly{}}, {Poly::one(), Poly::one()}});
    std::mt19937_64 rng(22);
    for (int i = 0; i < 200; ++i) {
        const Poly s = oracle::random_poly(rng, 40);
        const auto o = classify(shift, s, 1000, 1000);
        ASSERT_EQ(o.kind, OutcomeKind::cycle);
        ASSERT_EQ(o.cycle, std::vector<Poly>{Poly{}});
        ASSERT_LE(o.steps, *s.degree() + 2);
        ASSERT_EQ(o.cycle_entry, *s.degree() + 1);
    }
}

TEST(Classify, CycleClosesUnderMap) {
    const auto cfg = make_config(P("x+1"), P("x^2+x+1"),
                                 {{Poly{}, Poly{}}, {Poly::one(), P("x+1")}, {P("x"), P("x^2+x")}, {P("x+1"), P("x^2+1")}});
    std::mt19937_64 rng(23);
    for (int i = 0; i < 200; ++i) {
        const auto o = classify(cfg, oracle::random_poly(rng, 20), 60, 5000);
        if (o.kind != OutcomeKind::cycle) continue;
        ASSERT_EQ(step(cfg, o.cycle.back()), o.cycle.front());
        ASSERT_EQ(o.steps, o.cycle_entry + o.cycle.size());
    }
}

TEST(Classify, ThresholdsAndCap) {
    const auto cfg = example_divergent_config();
    EXPECT_THROW(classify(cfg, Poly::one(), 0, 10), DomainError);
    EXPECT_THROW(classify(cfg, Poly::one(), 10, 0), DomainError);
    const auto o = classify(cfg, Poly::one(), 100, 2);
    EXPECT_EQ(o.kind, OutcomeKind::step_exhausted);
    EXPECT_EQ(o.steps, 2u);
    EXPECT_EQ(o.degrees, (std::vector<long>{0, 2, 4}));
    const auto d = classify(cfg, Poly::one(), 3, 100);
    EXPECT_EQ(d.kind, OutcomeKind::degree_divergence);
    EXPECT_EQ(d.steps, 2u);
}

TEST(Classify, AgreesWithDirectIteration) {
    // Random small configs: Brent detection must reproduce the visited-set result.
    std::mt19937_64 rng(24);
    for (int c = 0; c < 40; ++c) {
        const Poly D = Poly::from_word(2 + rng() % 6);
        const Poly K = oracle::random_poly(rng, 3);
        if (!gcd(K, D).is_one()) continue;
        std::map<Poly, Poly> R;
        OracleMap f{oracle::from_poly(D), {}};
        for (Word r = 0; r < (Word{1} << *D.degree()); ++r) {
            const Poly rp = Poly::from_word(r);
            R[rp] = (K * rp) % D;
            f.branch[oracle::from_poly(rp)] = {oracle::from_poly(K), oracle::from_poly(R[rp])};
        }
        const auto cfg = make_config(K, D, R);
        for (std::uint64_t cap : {5u, 40u, 300u}) {
            ASSERT_EQ(census_csv(census(cfg, 4, 30, cap)), oracle_census(f, 4, 30, cap)) << to_hex(K) << " " << to_hex(D);
        }
    }
}

TEST(Census, ExampleGoldenFile) {
    const std::string golden_path = kGoldenDir + "/matthews_ex1_census.csv";
    const std::string expected = oracle_census(example_oracle(), 4, 50, 10000);
    if (std::getenv("POLYCOLLATZ_WRITE_GOLDEN")) std::ofstream(golden_path) << expected;
    const std::string golden = read_file(golden_path);
    ASSERT_FALSE(golden.empty()) << golden_path;
    EXPECT_EQ(golden, expected);

    const auto cfg = load_config(kGoldenDir + "/matthews_ex1.cfg");
    const auto first = census_csv(census(cfg, 4, 50, 10000));
    EXPECT_EQ(first, golden);
    EXPECT_EQ(census_csv(census(cfg, 4, 50, 10000, 4)), first);
    EXPECT_NE(golden.find("degree_divergence"), std::string::npos);
}

TEST(ConfigFile, Parsing) {
    std::istringstream ok("K=x+1\n\n# comment\nD=x\nR[0]=0\nR[1]=x+1\n");
    const auto cfg = parse_config(ok);
    EXPECT_EQ(cfg.K, P("x+1"));
    EXPECT_EQ(step(cfg, Poly::one()), Poly{});
    std::istringstream missing("K=x+1\nR[0]=0\n");
    EXPECT_THROW(parse_config(missing), ParseError);
    std::istringstream dup("K=x+1\nD=x\nR[0]=0\nR[0]=0\nR[1]=x+1\n");
    EXPECT_THROW(parse_config(dup), ParseError);
    std::istringstream junk("K=x+1\nD=x\nQ=1\n");
    EXPECT_THROW(parse_config(junk), ParseError);
    std::istringstream bad("K=x^2+x\nD=x\nR[0]=0\nR[1]=0\n");
    EXPECT_THROW(parse_config(bad), MatthewsConfigError);
}
