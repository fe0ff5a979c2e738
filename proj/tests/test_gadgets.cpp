#include <gtest/gtest.h>

#include <random>

#include <strcon/gadgets.hpp>

using namespace strcon;

namespace {

Word tokens(const Alphabet& al, const std::string& s) { return al.parse(s); }

bool in_all(const std::vector<Nfa>& dfas, const Word& w)
{
    for (const auto& d : dfas)
        if (!nfa_accepts(d, w))
            return false;
    return true;
}

Word from_tokens(const Alphabet& al, const std::vector<std::string>& t)
{
    Word w;
    for (const auto& s : t)
        w.push_back(al.id(s));
    return w;
}

} // namespace

TEST(CountingPda, StateCountsAndSmallLanguages)
{
    for (int n = 1; n <= 5; ++n) {
        EXPECT_EQ(counting_pda(n).base.states, 3 * n + 2);
        EXPECT_EQ(counting_pda_plus(n).base.states, 3 * n + 3);
    }
    Pda p1 = counting_pda(1);
    EXPECT_EQ(p1.stack.size(), 2);
    auto w1 = pda_enumerate_words(p1, 6, 2);
    ASSERT_EQ(w1.size(), 1u);
    EXPECT_EQ(p1.base.alphabet.format(w1[0]), "aa");
    auto w2 = pda_enumerate_words(counting_pda(2), 8, 3);
    ASSERT_EQ(w2.size(), 1u);
    EXPECT_EQ(w2[0].size(), 4u);
}

TEST(CountingPda, LetterCountViaGrammar)
{
    auto r = cfg_letter_count_range(pda_to_cfg(counting_pda(3)), {0});
    EXPECT_FALSE(r.empty);
    EXPECT_FALSE(r.infinite);
    EXPECT_EQ(r.min, 8);
    EXPECT_EQ(r.max, 8);
    auto r2 = cfg_letter_count_range(pda_to_cfg(counting_pda_plus(1)), {0});
    EXPECT_EQ(r2.min, 4);
    EXPECT_EQ(r2.max, 4);
}

TEST(CountingPda, ConfigGraphOracle)
{
    for (int n = 1; n <= 4; ++n) {
        Pda p = counting_pda(n);
        auto ws = pda_enumerate_words(p, (1 << n) + 1, n + 1);
        ASSERT_EQ(ws.size(), 1u) << n;
        EXPECT_EQ(ws[0].size(), static_cast<std::size_t>(1 << n));
    }
}

TEST(CountingPda, InvalidParameters)
{
    EXPECT_THROW(counting_pda(0), InvalidInput);
    EXPECT_THROW(counting_pda_plus(0), InvalidInput);
    EXPECT_THROW(counting_pda(2, {}), InvalidInput);
    EXPECT_THROW(bit_dfas(0, {"a"}, false), InvalidInput);
    EXPECT_THROW(bit_dfas(1, {"inc"}, false), InvalidInput);
    EXPECT_THROW(single_word_family(0), InvalidInput);
    EXPECT_THROW(verify_counting("fig2", 0), InvalidInput);
}

TEST(VerifyCounting, Certificates)
{
    for (int n = 1; n <= 4; ++n) {
        auto c = verify_counting("fig2", n);
        EXPECT_TRUE(c.certified) << n;
        EXPECT_EQ(c.gamma2Count.min, 1LL << n);
        EXPECT_EQ(c.gamma2Count.max, 1LL << n);
        EXPECT_LE(c.maxHeight, n);
    }
    for (int n = 1; n <= 3; ++n) {
        auto c = verify_counting("fig3", n);
        EXPECT_TRUE(c.certified) << n;
        EXPECT_EQ(c.gamma2Count.max, 2LL << n);
    }
    auto f1 = verify_counting("fig5", 1);
    EXPECT_TRUE(f1.certified);
    EXPECT_EQ(f1.gamma2Count.min, 4);
    EXPECT_EQ(f1.gamma2Count.max, 4);
    auto j = to_json(f1);
    EXPECT_EQ(j["gamma2_count"]["min"], 4);
    EXPECT_THROW(verify_counting("nope", 1), InvalidInput);
}

TEST(VerifyCounting, Fig5LevelTwo)
{
    auto c = verify_counting("fig5", 2);
    EXPECT_TRUE(c.certified);
    EXPECT_EQ(c.gamma2Count.min, 16);
    EXPECT_EQ(c.gamma2Count.max, 16);
    EXPECT_LE(c.maxHeight, 3);
}

TEST(BitDfas, SizesAndDeterminism)
{
    for (int l = 1; l <= 4; ++l)
        for (bool strict : {false, true})
            for (const auto& d : bit_dfas(l, {"a", "b"}, strict)) {
                EXPECT_LE(d.states, 10 * l + 10);
                EXPECT_TRUE(is_deterministic(d));
            }
}

TEST(BitDfas, NonStrictExamples)
{
    auto d = bit_dfas(2, {"a"}, false);
    const Alphabet& al = d[0].alphabet;
    EXPECT_TRUE(in_all(d, tokens(al, "0 0 inc 0 1")));
    EXPECT_FALSE(in_all(d, tokens(al, "0 0 inc 0 0")));
    EXPECT_TRUE(in_all(d, tokens(al, "1 1 inc 0 0")));  // wraps mod 4
    EXPECT_TRUE(in_all(d, tokens(al, "0 0 dec 1 1")));
    EXPECT_TRUE(in_all(d, tokens(al, "1 0 a 1 0")));
    EXPECT_FALSE(in_all(d, tokens(al, "1 0 a 1 1")));
}

TEST(BitDfas, StrictMatchesEnumeratedDefinition)
{
    auto d = bit_dfas(1, {"a"}, true);
    const Alphabet& al = d[0].alphabet;
    auto members = counter_language_members(1, {"a"}, true, 20);
    std::set<Word> fromDef;
    for (const auto& m : members)
        fromDef.insert(from_tokens(al, m));
    auto got = enumerate_words(trim(nfa_product(d)), 20);
    std::set<Word> fromDfa(got.begin(), got.end());
    EXPECT_EQ(fromDfa, fromDef);
    EXPECT_FALSE(in_all(d, tokens(al, "1 dec 0")));
    EXPECT_FALSE(in_all(d, tokens(al, "0 dec 1 inc 0")));
}

TEST(BitDfas, IntersectionAgreesWithDefinition)
{
    std::mt19937 rng(3);
    for (int l = 1; l <= 2; ++l)
        for (bool strict : {false, true})
            for (bool gate : {false, true}) {
                if (gate && !strict)
                    continue;
                auto d = bit_dfas(l, {"a"}, strict, gate);
                const Alphabet& al = d[0].alphabet;
                auto members = counter_language_members(l, {"a"}, strict, 3 * (l + 1) + 2 + 6, gate);
                ASSERT_FALSE(members.empty());
                for (const auto& m : members)
                    EXPECT_TRUE(in_all(d, from_tokens(al, m)));
                // every intersection member up to length 3(l+1)+2 is in the language
                for (const auto& w : enumerate_words(trim(nfa_product(d)), 3 * (l + 1) + 2))
                    EXPECT_TRUE(in_counter_language(tokens_of(al, w), l, {"a"}, strict, gate));
                // mutants
                std::uniform_int_distribution<int> tok(0, al.size() - 1);
                for (int k = 0; k < 300; ++k) {
                    Word w = from_tokens(al, members[rng() % members.size()]);
                    std::size_t pos = w.empty() ? 0 : rng() % w.size();
                    switch (rng() % 3) {
                    case 0:
                        if (!w.empty())
                            w[pos] = tok(rng);
                        break;
                    case 1:
                        if (!w.empty())
                            w.erase(w.begin() + static_cast<long>(pos));
                        break;
                    default:
                        w.insert(w.begin() + static_cast<long>(pos), tok(rng));
                    }
                    EXPECT_EQ(in_all(d, w), in_counter_language(tokens_of(al, w), l, {"a"}, strict, gate))
                        << al.format(w);
                }
            }
}

TEST(ThreeStatePda, Structure)
{
    Pda p = three_state_pda();
    EXPECT_EQ(p.base.states, 3);
    EXPECT_EQ(p.stack.size(), 2);
    const Alphabet& al = p.base.alphabet;
    EXPECT_TRUE(pda_run_bounded(p, tokens(al, "a a"), 4));
    EXPECT_FALSE(pda_run_bounded(p, {}, 4));
}

TEST(ThreeStatePda, CountingWordIsAccepted)
{
    for (int l = 1; l <= 2; ++l) {
        Word w = counting_word(l);
        Pda p = three_state_pda();
        const Alphabet& al = p.base.alphabet;
        EXPECT_TRUE(pda_run_bounded(p, w, 1 << l)) << al.format(w);
        EXPECT_TRUE(in_all(bit_dfas(l, {"a"}, true, true), w));
        EXPECT_TRUE(in_counter_language(tokens_of(al, w), l, {"a"}, true, true));
        EXPECT_EQ(std::count(w.begin(), w.end(), al.id("a")), 1LL << (1 << l));
    }
    EXPECT_EQ(Alphabet(counter_alphabet({"a"})).format(counting_word(1)),
              "0 inc 1 a 1 a 1 dec 0 inc 1 a 1 a 1 dec 0");
}

TEST(ThreeStatePda, LiteralStrictDfasLetGamma2Anywhere)
{
    // without the gate the product accepts "0 a 0 a 0": only two gamma2 letters
    Pda prod = pda_product_nfas(three_state_pda(), bit_dfas(1, {"a"}, true, false));
    const Alphabet& al = prod.base.alphabet;
    EXPECT_TRUE(pda_run_bounded(prod, tokens(al, "0 a 0 a 0"), 2));
    Pda gated = pda_product_nfas(three_state_pda(), bit_dfas(1, {"a"}, true, true));
    EXPECT_FALSE(pda_run_bounded(gated, tokens(al, "0 a 0 a 0"), 2));
}

TEST(SingleWordFamily, UniqueWord)
{
    for (int n = 1; n <= 3; ++n) {
        auto r = certify_family(n);
        EXPECT_EQ(r.words, 1u) << n;
        EXPECT_EQ(r.incCount, (1LL << n) - 1);
        EXPECT_TRUE(r.discrepancy);
        for (const auto& d : single_word_family(n))
            EXPECT_TRUE(is_deterministic(d));
    }
    auto r1 = certify_family(1);
    EXPECT_EQ(Alphabet({"0", "1", "inc"}).format(r1.word), "0 inc 1");
}

TEST(BuildGadget, Kinds)
{
    EXPECT_TRUE(std::holds_alternative<Pda>(build_gadget({"fig2", 2, {"a"}, 0})));
    EXPECT_TRUE(std::holds_alternative<Nfa>(build_gadget({"bitdfa", 2, {"a"}, 1})));
    EXPECT_THROW(build_gadget({"bitdfa", 2, {"a"}, 2}), InvalidInput);
    EXPECT_THROW(build_gadget({"fig9", 2, {"a"}, 0}), InvalidInput);
}

TEST(ThreeStatePda, LiteralVariantCountRange)
{
    Pda prod = pda_product_nfas(three_state_pda(), bit_dfas(1, {"a"}, true, false));
    auto c = detail::explore_counts(prod, {prod.base.alphabet.id("a")}, 1, 100000);
    EXPECT_FALSE(c.gamma2Count.empty);
    EXPECT_EQ(c.gamma2Count.min, 2);
    EXPECT_NE(c.gamma2Count.min, c.gamma2Count.max);
}
