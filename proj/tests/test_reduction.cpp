#include "support.hpp"

#include <gtest/gtest.h>

using namespace exseq;
using namespace exseq::testing;

namespace {

bool all_rank_one(const Sequence& s) {
    for (const auto& E : s)
        if (E.e != 1) return false;
    return true;
}

// Ranks (1, 2, 5) on the plane, found by searching short words of mutations from line bundles.
Sequence p2_ranks_125() {
    const auto L = make_blowup_p2(0);
    std::vector<Sequence> layer{p2_line_bundles()};
    for (int depth = 0; depth < 5; ++depth) {
        std::vector<Sequence> next;
        for (const auto& s : layer) {
            auto r = ranks_of(ranks_positive(L, s));
            std::sort(r.begin(), r.end());
            if (r == std::vector<Int>{1, 2, 5}) return ranks_positive(L, s);
            for (std::size_t p = 0; p < 2; ++p)
                for (Direction d : {Direction::left, Direction::right}) next.push_back(apply_step(L, s, {p, d}));
        }
        layer = std::move(next);
    }
    throw std::logic_error("no (1, 2, 5) sequence found");
}

}  // namespace

TEST(NormalForm, MarkovSequenceIsAlreadyReduced) {
    const auto L = make_blowup_p2(0);
    const auto c = normal_form(L, p2_markov());
    EXPECT_EQ(c.tag, NormalFormTag::markov_triple);
    EXPECT_TRUE(c.steps.empty());
    EXPECT_TRUE(replays(L, c));
}

TEST(NormalForm, LargerMarkovTriple) {
    const auto L = make_blowup_p2(0);
    const Sequence s = p2_ranks_125();
    const auto c = normal_form(L, s);
    EXPECT_EQ(c.tag, NormalFormTag::markov_triple);
    EXPECT_TRUE(replays(L, c));
    const auto r = to_rank_one(L, s);
    EXPECT_TRUE(all_rank_one(r.final));
    EXPECT_TRUE(replays(L, r));
    bool descended = false;
    for (const auto& line : r.log) descended = descended || line.find("markov descent") != std::string::npos;
    EXPECT_TRUE(descended);
}

TEST(NormalForm, TorsionExample) {
    const auto L = blowup_one();
    const auto c = normal_form(L, torsion_example());
    EXPECT_TRUE(c.tag == NormalFormTag::markov_triple || c.tag == NormalFormTag::rank_one_zero);
    EXPECT_TRUE(replays(L, c));
    EXPECT_TRUE(validate_sequence(L, c.final).ok());
}

TEST(NormalForm, RejectsShortOrInvalidSequences) {
    const auto L = make_blowup_p2(0);
    EXPECT_THROW(normal_form(L, {line_bundle(divisor({0})), line_bundle(divisor({1}))}), DomainError);
    EXPECT_THROW(normal_form(L, {line_bundle(divisor({1})), line_bundle(divisor({0})), line_bundle(divisor({2}))}),
                 DomainError);
}

TEST(ToRankOne, TorsionExample) {
    const auto L = blowup_one();
    const auto c = to_rank_one(L, torsion_example());
    EXPECT_EQ(c.tag, NormalFormTag::rank_one);
    EXPECT_TRUE(all_rank_one(c.final));
    EXPECT_TRUE(replays(L, c));
    const auto fan = fan_of_sequence(L, c.final).fan;
    EXPECT_EQ(fan.size(), 4u);
    EXPECT_EQ(k_squared(fan), 8);
    // A smooth four-ray fan with K^2 = 8 containing a pair of opposite rays and a (-1)-curve.
    EXPECT_TRUE(lattice_equivalent(fan.vectors(), {V2{1, 0}, V2{0, 1}, V2{-1, 1}, V2{0, -1}}));
}

TEST(ToRankOne, LineBundlesNeedNoSteps) {
    const auto L = make_blowup_p2(3);
    const auto c = to_rank_one(L, blowup_line_bundles(L));
    EXPECT_TRUE(c.steps.empty());
    EXPECT_EQ(c.final, blowup_line_bundles(L));
}

TEST(Reduction, RandomScrambles) {
    std::mt19937_64 rng(53);
    for (int t = 0; t < 30; ++t) {
        const int k = static_cast<int>(rng() % 7);
        const auto L = make_blowup_p2(k);
        const Sequence base = (t % 2 && k > 0) ? blowup_with_torsion(L) : blowup_line_bundles(L);
        const auto s = scramble(L, base, rng() % 16, rng);
        const auto nf = normal_form(L, s);
        EXPECT_FALSE(nf.budget_exceeded);
        EXPECT_TRUE(nf.tag == NormalFormTag::markov_triple || nf.tag == NormalFormTag::rank_one_zero);
        EXPECT_TRUE(replays(L, nf));
        // Rank-zero members contract away, so a Markov form only needs three nonzero ranks.
        if (nf.tag == NormalFormTag::markov_triple) {
            std::size_t nonzero = 0;
            for (const auto& E : nf.final) nonzero += E.e != 0;
            EXPECT_EQ(nonzero, 3u);
        }
        const auto r1 = to_rank_one(L, s);
        EXPECT_FALSE(r1.budget_exceeded);
        EXPECT_TRUE(all_rank_one(r1.final));
        EXPECT_TRUE(replays(L, r1));
        for (const auto& v : fan_of_sequence(L, r1.final).fan.volumes) EXPECT_EQ(v, 1);
        EXPECT_LE(nf.steps.size(), nf.budget);
    }
}

TEST(Reduction, ReplayDetectsTampering) {
    const auto L = blowup_one();
    auto c = to_rank_one(L, torsion_example());
    ASSERT_FALSE(c.steps.empty());
    c.steps.pop_back();
    EXPECT_FALSE(replays(L, c));
}

TEST(Reduction, BudgetScalesWithRanks) {
    EXPECT_EQ(reduction_budget(p2_line_bundles()), 9u);
    EXPECT_EQ(reduction_budget(p2_markov()), 18u);
}

TEST(CyclicStrong, Examples) {
    const auto P2 = make_blowup_p2(0);
    const auto p = cyclic_strong_bound_check(P2, p2_line_bundles());
    EXPECT_TRUE(p.candidate());
    EXPECT_EQ(p.k_squared, 9);
    const auto F0 = make_hirzebruch(0);
    EXPECT_TRUE(cyclic_strong_bound_check(F0, hirzebruch_line_bundles()).candidate());
    // O(2H) against O violates e_i e_j K^2 >= chi once K^2 = 3.
    const auto B6 = make_blowup_p2(6);
    const auto b = cyclic_strong_bound_check(B6, blowup_line_bundles(B6));
    EXPECT_FALSE(b.bound_inequality);
    EXPECT_FALSE(b.candidate());
    // K^2 = 0 rules out every sequence, and the length exceeds 11.
    const auto B9 = make_blowup_p2(9);
    const auto z = cyclic_strong_bound_check(B9, blowup_line_bundles(B9));
    EXPECT_FALSE(z.k_squared_positive);
    EXPECT_FALSE(z.length_ok);
    EXPECT_FALSE(z.candidate());
}

TEST(CyclicStrong, AcceptedCandidatesObeyTheBound) {
    std::mt19937_64 rng(59);
    int accepted = 0;
    for (int k = 0; k <= 9; ++k) {
        const auto L = make_blowup_p2(k);
        for (int t = 0; t < 6; ++t) {
            const auto s = scramble(L, blowup_line_bundles(L), rng() % 6, rng);
            const auto r = cyclic_strong_bound_check(L, s);
            if (!r.candidate()) continue;
            ++accepted;
            EXPECT_LE(s.size(), 11u);
            EXPECT_GT(r.k_squared, 0);
            for (std::size_t i = 0; i < s.size(); ++i)
                for (std::size_t j = i + 1; j < s.size(); ++j) {
                    const Int c = euler(L, s[i], s[j]);
                    if (c > 0) {
                        EXPECT_GE(s[i].e * s[j].e * r.k_squared, c);
                    }
                }
        }
    }
    EXPECT_GT(accepted, 0);
}
