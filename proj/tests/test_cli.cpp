#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"

using namespace polycollatz;
namespace fs = std::filesystem;

#ifndef POLYCOLLATZ_GOLDEN_DIR
#define POLYCOLLATZ_GOLDEN_DIR "tests/golden"
#endif

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "polycollatz");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST(Cli, Trace) {
    const auto r = run({"trace", "--poly", "x^31+x+1"});
    EXPECT_EQ(r.code, 0);
    const auto ls = lines(r.out);
    ASSERT_GE(ls.size(), 2u);
    EXPECT_EQ(ls[0], "[31, 29, 24, 24, 16, 16, 16, 16, 0]");
    EXPECT_EQ(ls[1], "m=9 r_A=10");

    const auto j = run({"trace", "--poly", "0x13", "--json"});
    EXPECT_EQ(j.code, 0);
    EXPECT_EQ(trace_from_json(nlohmann::json::parse(j.out)), trace(parse("x^4+x+1")));
}

TEST(Cli, Count) {
    EXPECT_EQ(run({"count", "--degree", "6", "--stratum", "odd"}).out, "16\n");
    const auto q = lines(run({"count", "--degree", "6", "--stratum", "quadrants"}).out);
    ASSERT_EQ(q.size(), 4u);
    for (const auto& l : q) EXPECT_EQ(l.substr(l.size() - 3), " 32");
}

TEST(Cli, ExitCodes) {
    const auto zero = run({"trace", "--poly", "0x0"});
    EXPECT_EQ(zero.code, 1);
    EXPECT_NE(zero.err.find("zero polynomial"), std::string::npos);
    EXPECT_EQ(run({"frobnicate"}).code, 2);
    EXPECT_EQ(run({"count", "--degree", "6", "--stratum", "even"}).code, 2);
    EXPECT_EQ(run({"search-f"}).code, 2);
    EXPECT_EQ(run({"search-f", "--n", "40"}).code, 1);
    EXPECT_EQ(run({"trace", "--poly", "x^^2"}).code, 1);
    EXPECT_EQ(run({"matthews", "--config", "x.cfg", "--max-degree", "5", "--steps", "5"}).code, 2);
    EXPECT_EQ(run({"families", "--check", "c4"}).code, 1);
    EXPECT_EQ(run({"--help"}).code, 0);
}

TEST(Cli, SearchOutputIndependentOfWorkers) {
    const auto f1 = run({"search-f", "--n", "16", "--par", "1"});
    ASSERT_EQ(f1.code, 0);
    EXPECT_EQ(lines(f1.out).size(), 17u);
    for (const char* w : {"2", "8"}) EXPECT_EQ(run({"search-f", "--n", "16", "--par", w}).out, f1.out);

    const auto g1 = run({"search-g", "--n", "16", "--par", "1", "--census"});
    for (const char* w : {"2", "8"}) EXPECT_EQ(run({"search-g", "--n", "16", "--par", w, "--census"}).out, g1.out);
}

TEST(Cli, CsvAndJsonAgree) {
    const auto csv = lines(run({"search-f", "--n", "10", "--from", "3"}).out);
    const auto json = nlohmann::json::parse(run({"search-f", "--n", "10", "--from", "3", "--json"}).out);
    ASSERT_EQ(csv.size(), 9u);
    ASSERT_EQ(json.size(), 8u);
    for (std::size_t i = 0; i < json.size(); ++i) {
        EXPECT_TRUE(record_from_csv(csv[i + 1]).same_result(record_from_json(json[i])));
    }
    const auto g = lines(run({"search-g", "--n", "6", "--from", "2"}).out);
    ASSERT_EQ(g.size(), 6u);
    EXPECT_EQ(record_from_csv(g[3]).value, 2u);
    EXPECT_EQ(record_from_csv(g[3]).convention, kChainConvention);
}

TEST(Cli, TimingOnlyWhenRequested) {
    EXPECT_EQ(lines(run({"search-f", "--n", "3"}).out)[3].back(), ',');
    EXPECT_NE(lines(run({"search-f", "--n", "3", "--timing"}).out)[3].back(), ',');
}

TEST(Cli, Families) {
    const auto c4 = run({"families", "--check", "c4", "--range", "31..32"});
    EXPECT_EQ(c4.out, "family,n,predicted,observed,verdict\nT,31,9,9,holds\nT,32,17,9,fails\n");
    const auto tables = run({"families", "--check", "tables", "--family", "MPOW", "--range", "15..16"});
    EXPECT_EQ(tables.out, "MPOW\n15 | [28, 0] | 2\n16 | [0] | 1\n");
    const auto p = lines(run({"families", "--check", "tables", "--family", "P"}).out);
    EXPECT_EQ(p.size(), 4u);
    EXPECT_EQ(run({"families", "--check", "tables", "--range", "9..3"}).code, 1);
}

TEST(Cli, MatthewsCensusMatchesGolden) {
    const std::string dir = POLYCOLLATZ_GOLDEN_DIR;
    const auto r = run({"matthews", "--config", dir + "/matthews_ex1.cfg", "--max-degree", "50", "--steps", "10000",
                        "--all-seeds-upto", "4", "--par", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(r.out, slurp(dir + "/matthews_ex1_census.csv"));

    const auto one = run({"matthews", "--config", dir + "/matthews_ex1.cfg", "--max-degree", "50", "--steps", "10000",
                          "--seed", "x^2+1"});
    EXPECT_EQ(one.code, 0);
    EXPECT_NE(one.out.find("prefix=x^2+1 -> x^4+x^3+1"), std::string::npos) << one.out;
}

TEST(Cli, StopAndResume) {
    const auto ck = fs::temp_directory_path() / "polycollatz_cli_resume.ck";
    fs::remove(ck);
    const auto full = run({"search-f", "--n", "14"});
    const auto stopped = run({"search-f", "--n", "14", "--checkpoint", ck.string(), "--stop-after-chunks", "30"});
    EXPECT_EQ(stopped.code, 1);
    EXPECT_TRUE(stopped.out.empty());
    EXPECT_EQ(run({"search-f", "--n", "14", "--resume"}).code, 1);
    const auto resumed = run({"search-f", "--n", "14", "--checkpoint", ck.string(), "--resume"});
    EXPECT_EQ(resumed.code, 0);
    EXPECT_EQ(resumed.out, full.out);
    fs::remove(ck);
}
