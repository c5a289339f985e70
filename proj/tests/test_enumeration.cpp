#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "oracle.hpp"
#include "polycollatz/enumeration.hpp"

using namespace polycollatz;

namespace {

// Every degree-d mask tested against the evaluations directly.
std::vector<Word> brute_force(unsigned d, Constraint c) {
    std::vector<Word> out;
    for (Word m = Word{1} << d; m < (Word{2} << d); ++m) {
        const auto co = oracle::from_mask(m);
        const int at0 = co[0];
        int at1 = 0;
        for (int v : co) at1 ^= v;
        bool ok = true;
        switch (c) {
            case Constraint::all: break;
            case Constraint::eval0_zero: ok = at0 == 0; break;
            case Constraint::eval0_one: ok = at0 == 1; break;
            case Constraint::eval1_zero: ok = at1 == 0; break;
            case Constraint::eval1_one: ok = at1 == 1; break;
            case Constraint::odd: ok = at0 == 1 && at1 == 1; break;
        }
        if (ok) out.push_back(m);
    }
    return out;
}

std::vector<Word> masks(const StratumRange& r) {
    std::vector<Word> out;
    for (auto it = r.begin(); it != r.end(); ++it) out.push_back(it.mask());
    return out;
}

constexpr Constraint kAll[] = {Constraint::all,       Constraint::eval0_zero, Constraint::eval0_one,
                               Constraint::eval1_zero, Constraint::eval1_one,  Constraint::odd};

}  // namespace

TEST(Iter, SmallOddStrata) {
    EXPECT_EQ(masks(iter({2, Constraint::odd})), std::vector<Word>{0x7});
    EXPECT_TRUE(masks(iter({1, Constraint::odd})).empty());
    std::vector<Poly> got;
    for (const auto& p : iter({4, Constraint::odd})) got.push_back(p);
    EXPECT_EQ(got, (std::vector<Poly>{parse("x^4+x+1"), parse("x^4+x^2+1"), parse("x^4+x^3+1"), parse("x^4+x^3+x^2+x+1")}));
}

TEST(Iter, MatchesBruteForceAscending) {
    for (unsigned d = 0; d <= 12; ++d) {
        for (auto c : kAll) {
            ASSERT_EQ(masks(iter({d, c})), brute_force(d, c)) << d << " " << to_string(c);
        }
    }
}

TEST(Iter, SplitCoversDisjointly) {
    const StratumRange all = iter({13, Constraint::odd});
    for (std::uint64_t parts : {1u, 3u, 7u, 64u, 5000u}) {
        std::vector<Word> joined;
        for (const auto& piece : all.split(parts)) {
            const auto m = masks(piece);
            joined.insert(joined.end(), m.begin(), m.end());
        }
        ASSERT_EQ(joined, masks(all));
    }
    EXPECT_THROW(all.split(0), DomainError);
    EXPECT_THROW(all.slice(5, 3), DomainError);
}

TEST(Count, Examples) {
    EXPECT_EQ(count({6, Constraint::odd}), 16u);
    EXPECT_EQ(count({3, Constraint::eval0_one}), 4u);
    EXPECT_EQ(count({2, Constraint::odd}), 1u);
    EXPECT_EQ(count({1, Constraint::odd}), 0u);
}

TEST(Count, ClosedFormsToDegree18) {
    for (unsigned d = 2; d <= 18; ++d) {
        EXPECT_EQ(count({d, Constraint::odd}), std::uint64_t{1} << (d - 2));
        for (auto c : {Constraint::eval0_zero, Constraint::eval0_one, Constraint::eval1_zero, Constraint::eval1_one}) {
            EXPECT_EQ(count({d, c}), std::uint64_t{1} << (d - 1));
        }
        EXPECT_EQ(count({d, Constraint::eval0_zero}) + count({d, Constraint::eval0_one}), std::uint64_t{1} << d);
    }
    EXPECT_THROW(count({kMaxCountDegree + 1, Constraint::odd}), DomainError);
}

TEST(Count, PlusOneSwapsConstantTerm) {
    for (unsigned d = 1; d <= 10; ++d) {
        std::set<Poly> image, target;
        for (const auto& p : iter({d, Constraint::eval0_zero})) image.insert(p + Poly::one());
        for (const auto& p : iter({d, Constraint::eval0_one})) target.insert(p);
        ASSERT_EQ(image, target);
    }
}
