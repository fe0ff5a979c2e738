#pragma once

// Downward, upward and Parikh closures of regular languages, and the minimal-DFA
// growth experiments on the single-word family and the three-state PDA product.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "automata/cfg.hpp"
#include "automata/nfa.hpp"
#include "automata/pda.hpp"
#include "gadgets.hpp"

namespace strcon {

// Every letter may be skipped.
inline Nfa downward_closure(const Nfa& a)
{
    a.validate();
    Nfa r = a;
    for (const auto& t : a.transitions)
        if (t.label != kEps)
            r.add(t.src, kEps, t.dst);
    return r;
}

// Any letter may be inserted anywhere.
inline Nfa upward_closure(const Nfa& a)
{
    a.validate();
    Nfa r = a;
    for (State s = 0; s < r.states; ++s)
        for (Symbol c = 0; c < r.alphabet.size(); ++c)
            r.add(s, c, s);
    return r;
}

namespace detail {

// Accepts exactly the words longer than n.
inline Nfa longer_than(const Alphabet& al, int n)
{
    Nfa a(al, n + 2);
    for (State s = 0; s <= n; ++s)
        for (Symbol c = 0; c < al.size(); ++c)
            a.add(s, c, s + 1);
    for (Symbol c = 0; c < al.size(); ++c)
        a.add(n + 1, c, n + 1);
    a.finals = {n + 1};
    return a;
}

using Parikh = std::vector<int>;

inline Parikh parikh_of(const Word& w, int sigma)
{
    Parikh p(static_cast<std::size_t>(sigma), 0);
    for (Symbol s : w)
        ++p[static_cast<std::size_t>(s)];
    return p;
}

} // namespace detail

// All permutations of members of a finite language; maxLen must bound every member.
inline Nfa parikh_closure_finite(const Nfa& a, int maxLen)
{
    a.validate();
    if (maxLen < 0)
        throw InvalidInput("parikh_closure_finite: negative length bound");
    if (!nfa_is_empty(nfa_product({a, detail::longer_than(a.alphabet, maxLen)})))
        throw NotFinite("parikh_closure_finite: language has members longer than " + std::to_string(maxLen));
    const int sigma = a.alphabet.size();
    std::set<detail::Parikh> targets;
    for (const auto& w : enumerate_words(a, maxLen))
        targets.insert(detail::parikh_of(w, sigma));

    // States are count vectors below some target; a letter is allowed while one stays reachable.
    std::map<detail::Parikh, State> id;
    std::vector<detail::Parikh> order;
    Nfa r(a.alphabet, 0);
    auto below = [&](const detail::Parikh& v) {
        for (const auto& t : targets)
            if (std::equal(v.begin(), v.end(), t.begin(), [](int x, int y) { return x <= y; }))
                return true;
        return false;
    };
    auto state_of = [&](const detail::Parikh& v) {
        auto it = id.find(v);
        if (it != id.end())
            return it->second;
        State s = r.add_state();
        id.emplace(v, s);
        order.push_back(v);
        return s;
    };
    if (targets.empty())
        return empty_nfa(a.alphabet);
    state_of(detail::Parikh(static_cast<std::size_t>(sigma), 0));
    for (std::size_t i = 0; i < order.size(); ++i) {
        const detail::Parikh v = order[i];
        const State s = static_cast<State>(i);
        if (targets.count(v))
            r.finals.push_back(s);
        for (Symbol c = 0; c < sigma; ++c) {
            detail::Parikh u = v;
            ++u[static_cast<std::size_t>(c)];
            if (below(u))
                r.add(s, c, state_of(u));
        }
    }
    return r;
}

namespace detail {

// Members of a CNF grammar's language; throws NotFinite on a productive reachable cycle.
inline std::set<Word> finite_cfg_words(const Cfg& g, std::size_t budget = 200000)
{
    g.validate();
    std::vector<char> prod(static_cast<std::size_t>(g.nonterminals), 0);
    for (const auto& t : g.terminal)
        prod[static_cast<std::size_t>(t.lhs)] = 1;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& b : g.binary)
            if (!prod[b.lhs] && prod[b.left] && prod[b.right])
                prod[b.lhs] = changed = 1;
    }
    std::vector<std::optional<std::set<Word>>> memo(static_cast<std::size_t>(g.nonterminals));
    std::vector<char> active(static_cast<std::size_t>(g.nonterminals), 0);
    std::size_t total = 0;
    std::function<const std::set<Word>&(int)> words = [&](int x) -> const std::set<Word>& {
        if (memo[x])
            return *memo[x];
        if (active[x])
            throw NotFinite("finite_cfg_words: grammar has a productive cycle");
        active[x] = 1;
        std::set<Word> out;
        for (const auto& t : g.terminal)
            if (t.lhs == x)
                out.insert({t.letter});
        for (const auto& b : g.binary) {
            if (b.lhs != x || !prod[b.left] || !prod[b.right])
                continue;
            const auto& l = words(b.left);
            const auto& r = words(b.right);
            for (const auto& u : l)
                for (const auto& v : r) {
                    Word w = u;
                    w.insert(w.end(), v.begin(), v.end());
                    out.insert(std::move(w));
                    if (++total > budget)
                        throw BudgetExceeded("finite_cfg_words: too many derivations");
                }
        }
        active[x] = 0;
        memo[x] = std::move(out);
        return *memo[x];
    };
    std::set<Word> res;
    if (prod[g.start])
        res = words(g.start);
    if (g.startEpsilon)
        res.insert(Word{});
    return res;
}

} // namespace detail

struct ClosureReport {
    int n = 0;
    std::string kind;   // downward, upward, parikh
    std::string source; // family or fig5
    int minimalDfaSize = 0;
    std::optional<std::size_t> witnessWordLength; // longest member of the closed language's base
    std::optional<long long> lowerBound;          // downward and upward only
    bool meetsBound = true;
};

inline Nfa apply_closure(const std::string& kind, const Nfa& a, int maxLen)
{
    if (kind == "downward")
        return downward_closure(a);
    if (kind == "upward")
        return upward_closure(a);
    if (kind == "parikh")
        return parikh_closure_finite(a, maxLen);
    throw InvalidInput("closure: unknown kind '" + kind + "'");
}

// source "family": single_word_family(n); source "fig5": the three-state PDA intersected
// with the strict bit-DFAs for l = n.
inline std::vector<ClosureReport> growth_report(const std::string& kind, const std::vector<int>& nRange,
                                                const std::string& source = "family")
{
    std::vector<ClosureReport> out;
    for (int n : nRange) {
        detail::check_positive(n, "growth_report: n");
        std::set<Word> members;
        Alphabet al;
        ClosureReport r;
        r.n = n;
        r.kind = kind;
        r.source = source;
        if (source == "family") {
            if (n > 3)
                throw BudgetExceeded("growth_report: family experiments stop at n = 3");
            Nfa prod = trim(nfa_product(single_word_family(n)));
            al = prod.alphabet;
            const int len = (1 << n) * n + (1 << n) - 1;
            auto ws = enumerate_words(prod, len + 1);
            members.insert(ws.begin(), ws.end());
            if (kind != "parikh")
                r.lowerBound = 1LL << n;
        } else if (source == "fig5") {
            if (n > 1)
                throw BudgetExceeded("growth_report: the pushdown experiment is limited to l = 1");
            Pda p = pda_product_nfas(three_state_pda(), bit_dfas(n, {"a"}, true, true));
            al = p.base.alphabet;
            members = detail::finite_cfg_words(pda_to_cfg(p));
            if (kind != "parikh")
                r.lowerBound = 1LL << (1 << n);
        } else {
            throw InvalidInput("growth_report: unknown source '" + source + "'");
        }
        std::size_t longest = 0;
        for (const auto& w : members)
            longest = std::max(longest, w.size());
        if (!members.empty())
            r.witnessWordLength = longest;
        Nfa base = nfa_from_words(al, {members.begin(), members.end()});
        r.minimalDfaSize = determinize_minimize(apply_closure(kind, base, static_cast<int>(longest))).size;
        if (r.lowerBound)
            r.meetsBound = r.minimalDfaSize >= *r.lowerBound;
        out.push_back(r);
    }
    return out;
}

inline json to_json(const ClosureReport& r)
{
    return {{"n", r.n},
            {"kind", r.kind},
            {"source", r.source},
            {"min_dfa_size", r.minimalDfaSize},
            {"witness_len", r.witnessWordLength ? json(*r.witnessWordLength) : json(nullptr)},
            {"lower_bound", r.lowerBound ? json(*r.lowerBound) : json(nullptr)},
            {"meets_bound", r.meetsBound}};
}

} // namespace strcon
