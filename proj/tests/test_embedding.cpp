#include <gtest/gtest.h>

#include <strcon/embedding.hpp>

#include "support.hpp"

using namespace strcon;
using namespace testing_support;

namespace {

std::vector<Word> Ws(std::initializer_list<const char*> xs)
{
    std::vector<Word> v;
    for (auto x : xs)
        v.push_back(W(ab(), x));
    return v;
}

// Exhaustive partition search for exact shuffle membership.
bool exact_oracle(const Word& w, const std::vector<Word>& U)
{
    std::size_t k = U.size();
    if (k == 0)
        return w.empty();
    std::size_t total = 1;
    for (std::size_t i = 0; i < w.size(); ++i)
        total *= k;
    for (std::size_t code = 0; code < total; ++code) {
        std::vector<Word> parts(k);
        std::size_t c = code;
        for (Symbol s : w) {
            parts[c % k].push_back(s);
            c /= k;
        }
        if (parts == U)
            return true;
    }
    return false;
}

} // namespace

TEST(IsSubword, Cases)
{
    EXPECT_TRUE(is_subword(W(ab(), "ba"), W(ab(), "aba")));
    EXPECT_FALSE(is_subword(W(ab(), "aa"), W(ab(), "ab")));
    EXPECT_TRUE(is_subword(W(ab(), "ababab"), W(ab(), "ababab")));
    EXPECT_TRUE(is_subword({}, {}));
}

TEST(ShuffleExactMember, Cases)
{
    auto r = shuffle_exact_member(W(ab(), "ababab"), Ws({"aab", "abb"}));
    ASSERT_TRUE(r.has_value());
    EXPECT_TRUE(exact_oracle(W(ab(), "ababab"), Ws({"aab", "abb"})));
    std::vector<Word> spelled(2);
    Word w = W(ab(), "ababab");
    for (std::size_t p = 0; p < w.size(); ++p)
        spelled[(*r)[p]].push_back(w[p]);
    EXPECT_EQ(spelled, Ws({"aab", "abb"}));
    EXPECT_TRUE(shuffle_exact_member(W(ab(), "ab"), Ws({"ab"})).has_value());
    EXPECT_FALSE(shuffle_exact_member(W(ab(), "ab"), Ws({"a", "a"})).has_value());
}

TEST(ShuffleExactMember, AgreesWithPartitionSearch)
{
    auto words = all_words(2, 3);
    for (const auto& u : words)
        for (const auto& v : words)
            for (const auto& w : all_words(2, 5)) {
                if (w.size() == u.size() + v.size()) {
                    ASSERT_EQ(shuffle_exact_member(w, {u, v}).has_value(), exact_oracle(w, {u, v}));
                }
            }
}

TEST(ShuffleEmbed, ExampleProjection)
{
    auto p = shuffle_embed(W(ab(), "baab"), Ws({"aba", "aba"}));
    ASSERT_TRUE(p.has_value());
    EXPECT_EQ(p->parts, Ws({"ba", "ab"}));
    EXPECT_TRUE(is_witnessing_projection(W(ab(), "baab"), Ws({"aba", "aba"}), *p));
    auto e = shuffle_embed({}, {});
    ASSERT_TRUE(e.has_value());
    EXPECT_TRUE(e->parts.empty());
    EXPECT_FALSE(shuffle_embed(W(ab(), "aaa"), Ws({"a", "b"})).has_value());
}

TEST(ShuffleEmbed, OracleCases)
{
    EXPECT_TRUE(shuffle_embed_oracle(W(ab(), "baab"), Ws({"aba", "aba"})));
    EXPECT_FALSE(shuffle_embed_oracle(W(ab(), "abab"), Ws({"ab"})));
    EXPECT_FALSE(shuffle_embed_oracle(W(ab(), "ab"), Ws({"ba"})));
    EXPECT_FALSE(shuffle_embed(W(ab(), "ab"), Ws({"ba"})).has_value());
    EXPECT_THROW(shuffle_embed_oracle(Word(9, 0), {}), InvalidInput);
    EXPECT_THROW(shuffle_embed_oracle({}, Ws({"a", "a", "a", "a"})), InvalidInput);
}

TEST(ShuffleEmbed, ProjectionClausesAndSuperword)
{
    auto comps = all_words(2, 3);
    for (const auto& w : all_words(2, 5))
        for (const auto& u : comps)
            for (const auto& v : comps) {
                std::vector<Word> U{u, v};
                auto p = shuffle_embed(w, U);
                if (!p)
                    continue;
                ASSERT_TRUE(is_witnessing_projection(w, U, *p));
                for (std::size_t i = 0; i < U.size(); ++i)
                    ASSERT_TRUE(is_subword(p->parts[i], U[i]));
                ASSERT_TRUE(shuffle_exact_member(w, p->parts).has_value());
                Word sup = superword_construct(w, U, *p);
                ASSERT_TRUE(is_subword(w, sup));
                ASSERT_TRUE(shuffle_exact_member(sup, U).has_value());
            }
}

TEST(ShuffleEmbed, MonotoneUnderSubwords)
{
    std::vector<Word> U = Ws({"abba", "bab"});
    for (const auto& w : all_words(2, 6)) {
        if (!shuffle_embed(w, U))
            continue;
        for (std::size_t drop = 0; drop < w.size(); ++drop) {
            Word s = w;
            s.erase(s.begin() + static_cast<long>(drop));
            ASSERT_TRUE(shuffle_embed(s, U).has_value());
        }
    }
}

TEST(SuperwordConstruct, Cases)
{
    auto U = Ws({"aba", "aba"});
    auto p = shuffle_embed(W(ab(), "baab"), U);
    ASSERT_TRUE(p.has_value());
    Word sup = superword_construct(W(ab(), "baab"), U, *p);
    EXPECT_EQ(sup.size(), 6u);
    EXPECT_TRUE(shuffle_exact_member(sup, U).has_value());
    EXPECT_TRUE(is_subword(W(ab(), "baab"), sup));

    auto q = shuffle_embed(W(ab(), "ab"), Ws({"ab"}));
    EXPECT_EQ(superword_construct(W(ab(), "ab"), Ws({"ab"}), *q), W(ab(), "ab"));

    WitnessingProjection e;
    e.parts = {Word{}};
    EXPECT_EQ(superword_construct({}, Ws({"a"}), e), W(ab(), "a"));

    WitnessingProjection bad;
    bad.parts = {W(ab(), "b")};
    bad.partition = {0};
    EXPECT_THROW(superword_construct(W(ab(), "a"), Ws({"a"}), bad), InvalidInput);
}

// The exhaustive equivalence also runs in the acceptance suite; this is a smaller slice.
TEST(ShuffleEmbed, AgreesWithOracleOnSmallInputs)
{
    auto comps = all_words(2, 2);
    for (const auto& w : all_words(2, 4))
        for (const auto& u : comps)
            for (const auto& v : comps)
                for (const auto& x : comps) {
                    std::vector<Word> U{u, v, x};
                    ASSERT_EQ(shuffle_embed(w, U).has_value(), shuffle_embed_oracle(w, U));
                }
}
