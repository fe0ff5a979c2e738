#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include <strcon/closures.hpp>
#include <strcon/embedding.hpp>

#include "support.hpp"

using namespace strcon;
using namespace testing_support;

namespace {

std::vector<Word> deletions(const Word& w)
{
    std::vector<Word> out;
    for (std::size_t i = 0; i < w.size(); ++i) {
        Word v = w;
        v.erase(v.begin() + static_cast<long>(i));
        out.push_back(v);
    }
    return out;
}

std::vector<Word> insertions(const Word& w, int sigma)
{
    std::vector<Word> out;
    for (std::size_t i = 0; i <= w.size(); ++i)
        for (Symbol c = 0; c < sigma; ++c) {
            Word v = w;
            v.insert(v.begin() + static_cast<long>(i), c);
            out.push_back(v);
        }
    return out;
}

// Sigma* v1 Sigma* ... vk Sigma*, built directly.
Nfa superwords(const Word& v)
{
    Nfa a(ab(), static_cast<int>(v.size()) + 1);
    for (State s = 0; s <= static_cast<State>(v.size()); ++s) {
        for (Symbol c = 0; c < 2; ++c)
            a.add(s, c, s);
        if (s < static_cast<State>(v.size()))
            a.add(s, v[static_cast<std::size_t>(s)], s + 1);
    }
    a.finals = {static_cast<State>(v.size())};
    return a;
}

Nfa words_nfa_ab(const std::vector<std::string>& ws)
{
    std::vector<Word> out;
    for (const auto& w : ws)
        out.push_back(ab().parse(w));
    return nfa_from_words(ab(), out);
}

} // namespace

TEST(DownwardClosure, Examples)
{
    Nfa d = downward_closure(words_nfa_ab({"ab"}));
    for (const char* s : {"", "a", "b", "ab"})
        EXPECT_TRUE(nfa_accepts(d, W(ab(), s))) << s;
    EXPECT_FALSE(nfa_accepts(d, W(ab(), "ba")));
    EXPECT_EQ(determinize_minimize(d).size, 4);
    EXPECT_TRUE(nfa_is_empty(downward_closure(empty_nfa(ab()))));
    Nfa u = downward_closure(universal_nfa(ab()));
    for (const auto& w : all_words(2, 4))
        EXPECT_TRUE(nfa_accepts(u, w));
}

TEST(UpwardClosure, Examples)
{
    Nfa u = upward_closure(words_nfa_ab({"ab"}));
    EXPECT_EQ(determinize_minimize(u).size, 3);
    EXPECT_TRUE(nfa_accepts(u, W(ab(), "bab")));
    EXPECT_FALSE(nfa_accepts(u, W(ab(), "bba")));
    Nfa all = upward_closure(epsilon_nfa(ab()));
    for (const auto& w : all_words(2, 4))
        EXPECT_TRUE(nfa_accepts(all, w));
    EXPECT_TRUE(nfa_is_empty(upward_closure(empty_nfa(ab()))));
}

TEST(Closures, RandomAutomataAgainstSubwordOracle)
{
    std::mt19937 rng(11);
    auto words = all_words(2, 5);
    for (int iter = 0; iter < 40; ++iter) {
        Nfa a = random_nfa(rng, ab(), 4);
        Nfa down = downward_closure(a), up = upward_closure(a);
        std::vector<Word> members;
        for (const auto& w : words)
            if (nfa_accepts(a, w))
                members.push_back(w);
        for (const auto& v : all_words(2, 4)) {
            bool inUp = std::any_of(members.begin(), members.end(), [&](const Word& w) {
                return w.size() <= v.size() && is_subword(w, v);
            });
            EXPECT_EQ(nfa_accepts(up, v), inUp);
            if (std::any_of(members.begin(), members.end(), [&](const Word& w) { return is_subword(v, w); })) {
                EXPECT_TRUE(nfa_accepts(down, v));
            }
        }
        for (const auto& w : words) {
            if (nfa_accepts(down, w)) {
                for (const auto& v : deletions(w))
                    EXPECT_TRUE(nfa_accepts(down, v));
            }
            if (w.size() <= 4 && nfa_accepts(up, w)) {
                for (const auto& v : insertions(w, 2))
                    EXPECT_TRUE(nfa_accepts(up, v));
            }
            EXPECT_EQ(nfa_accepts(downward_closure(down), w), nfa_accepts(down, w));
            EXPECT_EQ(nfa_accepts(upward_closure(up), w), nfa_accepts(up, w));
        }
        // every member of the closure embeds into some member of a
        for (const auto& v : all_words(2, 4))
            EXPECT_EQ(nfa_accepts(down, v), !nfa_is_empty(nfa_product({a, superwords(v)})));
    }
}

TEST(ParikhClosure, Examples)
{
    Nfa p = parikh_closure_finite(words_nfa_ab({"ab"}), 4);
    std::vector<std::string> got;
    for (const auto& w : enumerate_words(p, 6))
        got.push_back(ab().format(w));
    EXPECT_EQ(got, (std::vector<std::string>{"ab", "ba"}));
    Nfa q = parikh_closure_finite(words_nfa_ab({"aab"}), 3);
    got.clear();
    for (const auto& w : enumerate_words(q, 6))
        got.push_back(ab().format(w));
    EXPECT_EQ(got, (std::vector<std::string>{"aab", "aba", "baa"}));

    Nfa astar(ab(), 1);
    astar.finals = {0};
    astar.add(0, 0, 0);
    EXPECT_THROW(parikh_closure_finite(astar, 10), NotFinite);
    EXPECT_THROW(parikh_closure_finite(words_nfa_ab({"aab"}), 2), NotFinite);
    EXPECT_TRUE(nfa_is_empty(parikh_closure_finite(empty_nfa(ab()), 3)));
}

TEST(ParikhClosure, PermutationInvariantOnRandomFiniteLanguages)
{
    std::mt19937 rng(5);
    auto words = all_words(2, 5);
    for (int iter = 0; iter < 30; ++iter) {
        std::vector<Word> pick;
        for (const auto& w : words)
            if (rng() % 9 == 0)
                pick.push_back(w);
        Nfa a = nfa_from_words(ab(), pick);
        Nfa p = parikh_closure_finite(a, 5);
        for (const auto& w : words) {
            Word s = w;
            std::sort(s.begin(), s.end());
            bool expect = std::any_of(pick.begin(), pick.end(), [&](Word v) {
                std::sort(v.begin(), v.end());
                return v == s;
            });
            EXPECT_EQ(nfa_accepts(p, w), expect);
        }
    }
}

TEST(FiniteCfgWords, MatchesEnumerationAndRejectsCycles)
{
    Pda p = pda_product_nfas(three_state_pda(), bit_dfas(1, {"a"}, true, true));
    auto members = detail::finite_cfg_words(pda_to_cfg(p));
    const Alphabet& al = p.base.alphabet;
    ASSERT_EQ(members.size(), 1u);
    EXPECT_EQ(*members.begin(), translate(counting_word(1), counter_alphabet({"a"}), al));

    Nfa astar(ab(), 1);
    astar.finals = {0};
    astar.add(0, 0, 0);
    EXPECT_THROW(detail::finite_cfg_words(nfa_to_cfg(astar)), NotFinite);
    auto two = detail::finite_cfg_words(nfa_to_cfg(words_nfa_ab({"", "ab", "b"})));
    EXPECT_EQ(two.size(), 3u);
}

TEST(GrowthReport, SingleWordFamily)
{
    auto down = growth_report("downward", {1, 2, 3});
    ASSERT_EQ(down.size(), 3u);
    for (const auto& r : down) {
        EXPECT_TRUE(r.meetsBound) << r.n;
        EXPECT_GE(r.minimalDfaSize, 1 << r.n);
        ASSERT_TRUE(r.witnessWordLength);
        EXPECT_EQ(*r.witnessWordLength, static_cast<std::size_t>((1 << r.n) * r.n + (1 << r.n) - 1));
    }
    // exact sizes from determinize_minimize, frozen
    EXPECT_EQ(down[0].minimalDfaSize, 5);
    EXPECT_EQ(down[1].minimalDfaSize, 13);
    EXPECT_EQ(down[2].minimalDfaSize, 33);
    auto up = growth_report("upward", {2, 3});
    for (const auto& r : up)
        EXPECT_TRUE(r.meetsBound);
    EXPECT_EQ(up[0].minimalDfaSize, 12);
    EXPECT_EQ(up[1].minimalDfaSize, 32);
    auto par = growth_report("parikh", {2});
    EXPECT_FALSE(par[0].lowerBound);
    EXPECT_EQ(par[0].minimalDfaSize, 101);
    EXPECT_THROW(growth_report("downward", {4}), BudgetExceeded);
    EXPECT_THROW(growth_report("sideways", {2}), InvalidInput);
}

TEST(GrowthReport, PushdownProduct)
{
    auto r = growth_report("downward", {1}, "fig5");
    ASSERT_EQ(r.size(), 1u);
    EXPECT_GE(r[0].minimalDfaSize, 4);
    EXPECT_TRUE(r[0].meetsBound);
    EXPECT_EQ(r[0].witnessWordLength, std::optional<std::size_t>(17));
    EXPECT_EQ(r[0].minimalDfaSize, 19);
    EXPECT_THROW(growth_report("downward", {2}, "fig5"), BudgetExceeded);
    auto j = to_json(r[0]);
    EXPECT_EQ(j["min_dfa_size"], 19);
    EXPECT_EQ(j["witness_len"], 17);
}
