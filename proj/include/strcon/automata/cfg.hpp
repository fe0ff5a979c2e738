#pragma once

#include <algorithm>
#include <climits>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pda.hpp"

namespace strcon {

namespace detail {

// Unrestricted grammar used before normalization; terminals are encoded as -(a+1).
struct RawGrammar {
    int nonterminals = 0;
    int start = 0;
    std::vector<std::pair<int, std::vector<int>>> rules;
    std::vector<std::string> labels;

    int add(std::string label)
    {
        labels.push_back(std::move(label));
        return nonterminals++;
    }
};

inline bool is_term(int x) { return x < 0; }
inline int term_of(int x) { return -x - 1; }
inline int enc_term(Symbol a) { return -(a + 1); }

inline std::vector<char> productive(const RawGrammar& g)
{
    std::vector<char> prod(static_cast<std::size_t>(g.nonterminals), 0);
    bool changed = true;
    while (changed) {
        changed = false;
        for (const auto& [lhs, rhs] : g.rules) {
            if (prod[lhs])
                continue;
            bool ok = std::all_of(rhs.begin(), rhs.end(), [&](int x) { return is_term(x) || prod[x]; });
            if (ok) {
                prod[lhs] = 1;
                changed = true;
            }
        }
    }
    return prod;
}

// Drops unproductive and unreachable nonterminals, renumbering with the start first.
inline RawGrammar trim(const RawGrammar& g)
{
    auto prod = productive(g);
    std::vector<std::vector<std::size_t>> by_lhs(static_cast<std::size_t>(g.nonterminals));
    for (std::size_t i = 0; i < g.rules.size(); ++i) {
        const auto& [lhs, rhs] = g.rules[i];
        bool ok = prod[lhs] &&
                  std::all_of(rhs.begin(), rhs.end(), [&](int x) { return is_term(x) || prod[x]; });
        if (ok)
            by_lhs[lhs].push_back(i);
    }
    std::vector<int> id(static_cast<std::size_t>(g.nonterminals), -1);
    RawGrammar r;
    std::vector<int> order;
    id[g.start] = r.add(g.labels[g.start]);
    order.push_back(g.start);
    for (std::size_t h = 0; h < order.size(); ++h)
        for (std::size_t ri : by_lhs[order[h]])
            for (int x : g.rules[ri].second)
                if (!is_term(x) && id[x] < 0) {
                    id[x] = r.add(g.labels[x]);
                    order.push_back(x);
                }
    r.start = 0;
    for (int old : order)
        for (std::size_t ri : by_lhs[old]) {
            std::vector<int> rhs;
            for (int x : g.rules[ri].second)
                rhs.push_back(is_term(x) ? x : id[x]);
            r.rules.push_back({id[old], rhs});
        }
    return r;
}

} // namespace detail

// Rules A -> BC / A -> a / optional S -> eps from a grammar whose rules have length <= 3.
inline Cfg to_cnf(const detail::RawGrammar& input, const Alphabet& al)
{
    using namespace detail;
    RawGrammar g = input;
    int s0 = g.add("S");
    g.rules.push_back({s0, {g.start}});
    g.start = s0;
    g = trim(g);

    // Terminals inside long rules get their own nonterminal.
    std::map<int, int> tnt;
    std::vector<std::pair<int, std::vector<int>>> rules;
    for (auto [lhs, rhs] : g.rules) {
        if (rhs.size() >= 2)
            for (int& x : rhs)
                if (is_term(x)) {
                    auto it = tnt.find(x);
                    if (it == tnt.end()) {
                        int n = g.add("T[" + al.name(term_of(x)) + "]");
                        it = tnt.emplace(x, n).first;
                    }
                    x = it->second;
                }
        rules.push_back({lhs, rhs});
    }
    for (auto [t, n] : tnt)
        rules.push_back({n, {t}});

    // Binarize.
    std::vector<std::pair<int, std::vector<int>>> bin;
    int fresh = 0;
    for (auto& [lhs, rhs] : rules) {
        int cur = lhs;
        std::vector<int> r = rhs;
        while (r.size() > 2) {
            int n = g.add("N" + std::to_string(fresh++));
            bin.push_back({cur, {r[0], n}});
            r.erase(r.begin());
            cur = n;
        }
        bin.push_back({cur, r});
    }

    // Remove eps rules.
    const int N = g.nonterminals;
    std::vector<char> nullable(static_cast<std::size_t>(N), 0);
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& [lhs, rhs] : bin)
            if (!nullable[lhs] &&
                std::all_of(rhs.begin(), rhs.end(), [&](int x) { return !is_term(x) && nullable[x]; })) {
                nullable[lhs] = 1;
                changed = true;
            }
    }
    std::set<std::pair<int, std::vector<int>>> noeps;
    for (const auto& [lhs, rhs] : bin) {
        if (rhs.empty())
            continue;
        noeps.insert({lhs, rhs});
        if (rhs.size() == 2) {
            if (!is_term(rhs[1]) && nullable[rhs[1]])
                noeps.insert({lhs, {rhs[0]}});
            if (!is_term(rhs[0]) && nullable[rhs[0]])
                noeps.insert({lhs, {rhs[1]}});
        }
    }

    // Remove unit rules.
    std::vector<std::vector<int>> unit(static_cast<std::size_t>(N));
    std::vector<std::vector<std::vector<int>>> proper(static_cast<std::size_t>(N));
    for (const auto& [lhs, rhs] : noeps) {
        if (rhs.size() == 1 && !is_term(rhs[0])) {
            if (rhs[0] != lhs)
                unit[lhs].push_back(rhs[0]);
        } else {
            proper[lhs].push_back(rhs);
        }
    }
    RawGrammar out;
    out.nonterminals = N;
    out.labels = g.labels;
    out.start = g.start;
    std::set<std::pair<int, std::vector<int>>> final_rules;
    for (int a = 0; a < N; ++a) {
        std::vector<char> seen(static_cast<std::size_t>(N), 0);
        std::vector<int> st{a};
        seen[a] = 1;
        while (!st.empty()) {
            int b = st.back();
            st.pop_back();
            for (const auto& rhs : proper[b])
                final_rules.insert({a, rhs});
            for (int c : unit[b])
                if (!seen[c]) {
                    seen[c] = 1;
                    st.push_back(c);
                }
        }
    }
    out.rules.assign(final_rules.begin(), final_rules.end());
    bool startEps = nullable[g.start];
    // Keep the start symbol even when it derives only eps.
    out = trim(out);

    Cfg c;
    c.alphabet = al;
    c.nonterminals = out.nonterminals;
    c.start = out.start;
    c.labels = out.labels;
    c.startEpsilon = startEps;
    for (const auto& [lhs, rhs] : out.rules) {
        if (rhs.size() == 1)
            c.terminal.push_back({lhs, term_of(rhs[0])});
        else
            c.binary.push_back({lhs, rhs[0], rhs[1]});
    }
    return c;
}

// Pair construction: A[p,q] derives the words of empty-stack-to-empty-stack runs p -> q.
inline Cfg pda_to_cfg(const Pda& p)
{
    p.validate();
    using namespace detail;
    const int Q = p.base.states;
    // reach[p][q]: q reachable from p in the transition graph.
    std::vector<std::vector<char>> reach(static_cast<std::size_t>(Q), std::vector<char>(static_cast<std::size_t>(Q), 0));
    {
        std::vector<std::vector<State>> succ(static_cast<std::size_t>(Q));
        for (const auto& t : p.base.transitions)
            succ[t.src].push_back(t.dst);
        for (State s = 0; s < Q; ++s) {
            std::vector<State> st{s};
            reach[s][s] = 1;
            while (!st.empty()) {
                State x = st.back();
                st.pop_back();
                for (State d : succ[x])
                    if (!reach[s][d]) {
                        reach[s][d] = 1;
                        st.push_back(d);
                    }
            }
        }
    }
    RawGrammar g;
    std::vector<int> id(static_cast<std::size_t>(Q) * Q, -1);
    for (State a = 0; a < Q; ++a)
        for (State b = 0; b < Q; ++b)
            if (reach[a][b])
                id[a * Q + b] = g.add("A[" + std::to_string(a) + "," + std::to_string(b) + "]");
    auto A = [&](State a, State b) { return id[a * Q + b]; };
    int S = g.add("S'");
    g.start = S;
    for (State f : p.base.finals)
        if (reach[p.base.initial][f])
            g.rules.push_back({S, {A(p.base.initial, f)}});
    for (State a = 0; a < Q; ++a)
        g.rules.push_back({A(a, a), {}});
    for (State a = 0; a < Q; ++a)
        for (State r = 0; r < Q; ++r) {
            if (!reach[a][r])
                continue;
            for (State b = 0; b < Q; ++b)
                if (reach[r][b])
                    g.rules.push_back({A(a, b), {A(a, r), A(r, b)}});
        }
    std::vector<std::vector<int>> pushes(static_cast<std::size_t>(p.stack.size()));
    std::vector<std::vector<int>> pops(static_cast<std::size_t>(p.stack.size()));
    for (std::size_t i = 0; i < p.base.transitions.size(); ++i) {
        const auto& t = p.base.transitions[i];
        const auto& op = p.ops[i];
        if (op.kind == OpKind::Nop) {
            std::vector<int> rhs;
            if (t.label != kEps)
                rhs.push_back(enc_term(t.label));
            g.rules.push_back({A(t.src, t.dst), rhs});
        } else if (op.kind == OpKind::Push) {
            pushes[op.symbol].push_back(static_cast<int>(i));
        } else {
            pops[op.symbol].push_back(static_cast<int>(i));
        }
    }
    for (int gam = 0; gam < p.stack.size(); ++gam)
        for (int pi : pushes[gam])
            for (int qi : pops[gam]) {
                const auto& tp = p.base.transitions[pi];
                const auto& tq = p.base.transitions[qi];
                if (!reach[tp.dst][tq.src])
                    continue;
                std::vector<int> rhs;
                if (tp.label != kEps)
                    rhs.push_back(enc_term(tp.label));
                rhs.push_back(A(tp.dst, tq.src));
                if (tq.label != kEps)
                    rhs.push_back(enc_term(tq.label));
                g.rules.push_back({A(tp.src, tq.dst), rhs});
            }
    return to_cnf(g, p.base.alphabet);
}

inline Cfg nfa_to_cfg(const Nfa& a) { return pda_to_cfg(pda_from_nfa(a)); }

struct ParseNode {
    int nt = -1;
    int left = -1, right = -1; // children, -1 at leaves
    Symbol letter = kEps;      // leaves only
    int begin = 0, end = 0;    // span [begin, end)
};

struct ParseTree {
    std::vector<ParseNode> nodes;
    int root = -1;
};

struct CykResult {
    bool member = false;
    std::optional<ParseTree> tree;
};

inline CykResult cfg_cyk(const Cfg& g, const Word& w, bool wantTree = false)
{
    g.validate();
    g.alphabet.check(w);
    CykResult res;
    const int n = static_cast<int>(w.size());
    if (n == 0) {
        res.member = g.startEpsilon;
        if (res.member && wantTree) {
            ParseTree t;
            t.nodes.push_back({g.start, -1, -1, kEps, 0, 0});
            t.root = 0;
            res.tree = t;
        }
        return res;
    }
    const int N = g.nonterminals;
    // back[i][len][A]: -1 for unset; for len 1 the terminal rule index; else split*R + rule.
    auto at = [&](int i, int len, int A) { return (static_cast<std::size_t>(i) * (n + 1) + len) * N + A; };
    std::vector<long> back(static_cast<std::size_t>(n) * (n + 1) * N, -1);
    for (int i = 0; i < n; ++i)
        for (std::size_t r = 0; r < g.terminal.size(); ++r)
            if (g.terminal[r].letter == w[i] && back[at(i, 1, g.terminal[r].lhs)] < 0)
                back[at(i, 1, g.terminal[r].lhs)] = static_cast<long>(r);
    const long R = static_cast<long>(g.binary.size());
    for (int len = 2; len <= n; ++len)
        for (int i = 0; i + len <= n; ++i)
            for (int k = 1; k < len; ++k)
                for (long r = 0; r < R; ++r) {
                    const auto& rule = g.binary[r];
                    if (back[at(i, len, rule.lhs)] >= 0)
                        continue;
                    if (back[at(i, k, rule.left)] >= 0 && back[at(i + k, len - k, rule.right)] >= 0)
                        back[at(i, len, rule.lhs)] = k * R + r;
                }
    res.member = back[at(0, n, g.start)] >= 0;
    if (res.member && wantTree) {
        ParseTree t;
        std::function<int(int, int, int)> build = [&](int i, int len, int A) -> int {
            int idx = static_cast<int>(t.nodes.size());
            t.nodes.push_back({A, -1, -1, kEps, i, i + len});
            long b = back[at(i, len, A)];
            if (len == 1) {
                t.nodes[idx].letter = w[i];
                return idx;
            }
            int k = static_cast<int>(b / R);
            const auto& rule = g.binary[b % R];
            int l = build(i, k, rule.left);
            int r = build(i + k, len - k, rule.right);
            t.nodes[idx].left = l;
            t.nodes[idx].right = r;
            return idx;
        };
        t.root = build(0, n, g.start);
        res.tree = t;
    }
    return res;
}

// Range of the number of marked letters over L(g).
inline CountRange cfg_letter_count_range(const Cfg& g, const std::vector<Symbol>& marked)
{
    g.validate();
    const int N = g.nonterminals;
    std::vector<char> isMarked(static_cast<std::size_t>(g.alphabet.size()), 0);
    for (Symbol s : marked)
        isMarked[s] = 1;
    const long long INF = LLONG_MAX / 4;
    std::vector<long long> mn(static_cast<std::size_t>(N), INF);
    for (const auto& r : g.terminal)
        mn[r.lhs] = std::min(mn[r.lhs], static_cast<long long>(isMarked[r.letter]));
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : g.binary)
            if (mn[r.left] < INF && mn[r.right] < INF && mn[r.left] + mn[r.right] < mn[r.lhs]) {
                mn[r.lhs] = mn[r.left] + mn[r.right];
                changed = true;
            }
    }
    CountRange out;
    bool startProd = mn[g.start] < INF;
    if (!startProd && !g.startEpsilon)
        return out;
    out.empty = false;
    out.min = g.startEpsilon ? 0 : mn[g.start];
    if (!startProd)
        return out; // only eps

    auto prod = [&](int x) { return mn[x] < INF; };
    // canMark: derives some word with a marked letter.
    std::vector<char> canMark(static_cast<std::size_t>(N), 0);
    for (const auto& r : g.terminal)
        if (isMarked[r.letter])
            canMark[r.lhs] = 1;
    for (bool changed = true; changed;) {
        changed = false;
        for (const auto& r : g.binary)
            if (!canMark[r.lhs] && prod(r.left) && prod(r.right) && (canMark[r.left] || canMark[r.right])) {
                canMark[r.lhs] = 1;
                changed = true;
            }
    }
    // Useful graph restricted to productive rules reachable from the start.
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(N));
    std::vector<std::vector<std::size_t>> rulesOf(static_cast<std::size_t>(N));
    for (std::size_t i = 0; i < g.binary.size(); ++i) {
        const auto& r = g.binary[i];
        if (prod(r.left) && prod(r.right)) {
            succ[r.lhs].push_back(r.left);
            succ[r.lhs].push_back(r.right);
            rulesOf[r.lhs].push_back(i);
        }
    }
    // Tarjan SCC (iterative).
    std::vector<int> index(static_cast<std::size_t>(N), -1), low(static_cast<std::size_t>(N), 0),
        comp(static_cast<std::size_t>(N), -1);
    std::vector<char> onStack(static_cast<std::size_t>(N), 0);
    std::vector<int> stack, compOrder;
    int counter = 0, comps = 0;
    std::vector<std::pair<int, std::size_t>> call{{g.start, 0}};
    index[g.start] = low[g.start] = counter++;
    stack.push_back(g.start);
    onStack[g.start] = 1;
    while (!call.empty()) {
        auto& [v, it] = call.back();
        if (it < succ[v].size()) {
            int w = succ[v][it++];
            if (index[w] < 0) {
                index[w] = low[w] = counter++;
                stack.push_back(w);
                onStack[w] = 1;
                call.push_back({w, 0});
            } else if (onStack[w]) {
                low[v] = std::min(low[v], index[w]);
            }
        } else {
            int vv = v;
            call.pop_back();
            if (!call.empty())
                low[call.back().first] = std::min(low[call.back().first], low[vv]);
            if (low[vv] == index[vv]) {
                while (true) {
                    int x = stack.back();
                    stack.pop_back();
                    onStack[x] = 0;
                    comp[x] = comps;
                    if (x == vv)
                        break;
                }
                compOrder.push_back(comps++);
            }
        }
    }
    // Components are produced children-first, so a single pass suffices.
    std::vector<std::vector<int>> members(static_cast<std::size_t>(comps));
    for (int x = 0; x < N; ++x)
        if (comp[x] >= 0)
            members[comp[x]].push_back(x);
    std::vector<long long> cmax(static_cast<std::size_t>(comps), 0);
    for (int c = 0; c < comps; ++c) {
        long long best = 0;
        for (int x : members[c]) {
            for (const auto& r : g.terminal)
                if (r.lhs == x)
                    best = std::max(best, static_cast<long long>(isMarked[r.letter]));
            for (std::size_t ri : rulesOf[x]) {
                const auto& r = g.binary[ri];
                bool inL = comp[r.left] == c, inR = comp[r.right] == c;
                if ((inL && canMark[r.right]) || (inR && canMark[r.left])) {
                    out.infinite = true;
                    return out;
                }
                if (!inL && !inR)
                    best = std::max(best, cmax[comp[r.left]] + cmax[comp[r.right]]);
            }
        }
        cmax[c] = best;
    }
    out.max = cmax[comp[g.start]];
    return out;
}

} // namespace strcon
