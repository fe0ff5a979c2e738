#pragma once

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "types.hpp"

namespace strcon {

// Outgoing transitions grouped by label; eps moves kept apart.
struct Adjacency {
    std::vector<std::vector<std::vector<State>>> next; // [state][letter]
    std::vector<std::vector<State>> eps;

    explicit Adjacency(const Nfa& a)
        : next(static_cast<std::size_t>(a.states),
               std::vector<std::vector<State>>(static_cast<std::size_t>(a.alphabet.size()))),
          eps(static_cast<std::size_t>(a.states))
    {
        for (const auto& t : a.transitions) {
            if (t.label == kEps)
                eps[t.src].push_back(t.dst);
            else
                next[t.src][t.label].push_back(t.dst);
        }
    }
};

using StateSet = std::vector<char>;

inline void close_eps(const Adjacency& adj, StateSet& set)
{
    std::vector<State> stack;
    for (std::size_t s = 0; s < set.size(); ++s)
        if (set[s])
            stack.push_back(static_cast<State>(s));
    while (!stack.empty()) {
        State s = stack.back();
        stack.pop_back();
        for (State d : adj.eps[s])
            if (!set[d]) {
                set[d] = 1;
                stack.push_back(d);
            }
    }
}

inline StateSet step(const Adjacency& adj, const StateSet& set, Symbol a)
{
    StateSet out(set.size(), 0);
    for (std::size_t s = 0; s < set.size(); ++s)
        if (set[s])
            for (State d : adj.next[s][a])
                out[d] = 1;
    close_eps(adj, out);
    return out;
}

inline StateSet initial_set(const Nfa& a, const Adjacency& adj)
{
    StateSet set(static_cast<std::size_t>(a.states), 0);
    set[a.initial] = 1;
    close_eps(adj, set);
    return set;
}

inline bool has_final(const Nfa& a, const StateSet& set)
{
    for (State f : a.finals)
        if (set[f])
            return true;
    return false;
}

inline bool nfa_accepts(const Nfa& a, const Word& w)
{
    a.alphabet.check(w);
    Adjacency adj(a);
    StateSet cur = initial_set(a, adj);
    for (Symbol s : w) {
        cur = step(adj, cur, s);
        if (std::none_of(cur.begin(), cur.end(), [](char c) { return c; }))
            return false;
    }
    return has_final(a, cur);
}

// --- small constructors ---

inline Nfa empty_nfa(const Alphabet& al) { return Nfa(al, 1); }

inline Nfa epsilon_nfa(const Alphabet& al)
{
    Nfa a(al, 1);
    a.finals = {0};
    return a;
}

inline Nfa universal_nfa(const Alphabet& al)
{
    Nfa a(al, 1);
    a.finals = {0};
    for (Symbol s = 0; s < al.size(); ++s)
        a.add(0, s, 0);
    return a;
}

// Trie over a finite word list.
inline Nfa nfa_from_words(const Alphabet& al, const std::vector<Word>& words)
{
    Nfa a(al, 1);
    std::map<std::pair<State, Symbol>, State> kids;
    std::set<State> fin;
    for (const auto& w : words) {
        al.check(w);
        State cur = 0;
        for (Symbol s : w) {
            auto it = kids.find({cur, s});
            if (it == kids.end()) {
                State n = a.add_state();
                a.add(cur, s, n);
                it = kids.emplace(std::make_pair(cur, s), n).first;
            }
            cur = it->second;
        }
        fin.insert(cur);
    }
    a.finals.assign(fin.begin(), fin.end());
    return a;
}

inline Nfa word_nfa(const Alphabet& al, const Word& w) { return nfa_from_words(al, {w}); }

// --- trimming ---

inline std::vector<char> forward_reachable(const Nfa& a)
{
    std::vector<std::vector<State>> succ(static_cast<std::size_t>(a.states));
    for (const auto& t : a.transitions)
        succ[t.src].push_back(t.dst);
    std::vector<char> seen(static_cast<std::size_t>(a.states), 0);
    std::vector<State> st{a.initial};
    seen[a.initial] = 1;
    while (!st.empty()) {
        State s = st.back();
        st.pop_back();
        for (State d : succ[s])
            if (!seen[d]) {
                seen[d] = 1;
                st.push_back(d);
            }
    }
    return seen;
}

inline std::vector<char> backward_reachable(const Nfa& a)
{
    std::vector<std::vector<State>> pred(static_cast<std::size_t>(a.states));
    for (const auto& t : a.transitions)
        pred[t.dst].push_back(t.src);
    std::vector<char> seen(static_cast<std::size_t>(a.states), 0);
    std::vector<State> st;
    for (State f : a.finals)
        if (!seen[f]) {
            seen[f] = 1;
            st.push_back(f);
        }
    while (!st.empty()) {
        State s = st.back();
        st.pop_back();
        for (State d : pred[s])
            if (!seen[d]) {
                seen[d] = 1;
                st.push_back(d);
            }
    }
    return seen;
}

// Keeps useful states only (the initial state always survives).
inline Nfa trim(const Nfa& a)
{
    auto fw = forward_reachable(a);
    auto bw = backward_reachable(a);
    std::vector<int> id(static_cast<std::size_t>(a.states), -1);
    Nfa r(a.alphabet, 0);
    id[a.initial] = r.add_state();
    for (State s = 0; s < a.states; ++s)
        if (s != a.initial && fw[s] && bw[s])
            id[s] = r.add_state();
    for (const auto& t : a.transitions)
        if (id[t.src] >= 0 && id[t.dst] >= 0 && bw[t.src] && bw[t.dst])
            r.add(id[t.src], t.label, id[t.dst]);
    for (State f : a.finals)
        if (id[f] >= 0 && fw[f])
            r.finals.push_back(id[f]);
    std::sort(r.finals.begin(), r.finals.end());
    r.finals.erase(std::unique(r.finals.begin(), r.finals.end()), r.finals.end());
    return r;
}

// --- products ---

inline Nfa nfa_product(const std::vector<Nfa>& list)
{
    if (list.empty())
        throw InvalidInput("nfa_product: empty list");
    for (const auto& a : list) {
        a.validate();
        if (a.alphabet != list.front().alphabet)
            throw InvalidInput("nfa_product: alphabet mismatch");
    }
    if (list.size() == 1)
        return list.front();
    const auto k = list.size();
    std::vector<Adjacency> adj;
    for (const auto& a : list)
        adj.emplace_back(a);
    const Alphabet& al = list.front().alphabet;

    Nfa r(al, 0);
    std::map<std::vector<State>, State> ids;
    std::vector<std::vector<State>> tuples;
    auto get = [&](const std::vector<State>& t) {
        auto it = ids.find(t);
        if (it != ids.end())
            return it->second;
        State s = r.add_state();
        ids.emplace(t, s);
        tuples.push_back(t);
        return s;
    };
    std::vector<State> init;
    for (const auto& a : list)
        init.push_back(a.initial);
    get(init);
    for (std::size_t idx = 0; idx < tuples.size(); ++idx) {
        const auto cur = tuples[idx];
        State s = static_cast<State>(idx);
        for (std::size_t i = 0; i < k; ++i)
            for (State d : adj[i].eps[cur[i]]) {
                auto nt = cur;
                nt[i] = d;
                r.add(s, kEps, get(nt));
            }
        for (Symbol a = 0; a < al.size(); ++a) {
            bool ok = true;
            for (std::size_t i = 0; i < k && ok; ++i)
                ok = !adj[i].next[cur[i]][a].empty();
            if (!ok)
                continue;
            std::vector<State> nt(k);
            std::function<void(std::size_t)> rec = [&](std::size_t i) {
                if (i == k) {
                    r.add(s, a, get(nt));
                    return;
                }
                for (State d : adj[i].next[cur[i]][a]) {
                    nt[i] = d;
                    rec(i + 1);
                }
            };
            rec(0);
        }
        bool fin = true;
        for (std::size_t i = 0; i < k && fin; ++i)
            fin = list[i].is_final(cur[i]);
        if (fin)
            r.finals.push_back(s);
    }
    return r;
}

// --- determinization and minimization ---

struct MinDfa {
    Nfa dfa;
    int size = 0;
};

inline bool is_deterministic(const Nfa& a)
{
    std::set<std::pair<State, Symbol>> seen;
    for (const auto& t : a.transitions)
        if (t.label == kEps || !seen.insert({t.src, t.label}).second)
            return false;
    return true;
}

// Complete minimal DFA; the dead state, if any, is counted.
inline MinDfa determinize_minimize(const Nfa& a)
{
    a.validate();
    Adjacency adj(a);
    const int sigma = a.alphabet.size();
    std::map<StateSet, int> ids;
    std::vector<StateSet> sets;
    std::vector<std::vector<int>> delta;
    auto get = [&](const StateSet& s) {
        auto it = ids.find(s);
        if (it != ids.end())
            return it->second;
        int n = static_cast<int>(sets.size());
        ids.emplace(s, n);
        sets.push_back(s);
        return n;
    };
    get(initial_set(a, adj));
    for (std::size_t i = 0; i < sets.size(); ++i) {
        std::vector<int> row(static_cast<std::size_t>(sigma));
        for (Symbol c = 0; c < sigma; ++c) {
            StateSet nxt = step(adj, sets[i], c);
            row[c] = get(nxt);
        }
        delta.push_back(row);
    }
    const int n = static_cast<int>(sets.size());
    std::vector<int> cls(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
        cls[i] = has_final(a, sets[i]) ? 1 : 0;
    // Moore refinement until the class count stabilizes.
    int count = 0;
    while (true) {
        std::map<std::vector<int>, int> sig;
        std::vector<int> nc(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            std::vector<int> key{cls[i]};
            for (Symbol c = 0; c < sigma; ++c)
                key.push_back(cls[delta[i][c]]);
            auto it = sig.emplace(key, static_cast<int>(sig.size())).first;
            nc[i] = it->second;
        }
        int nc_count = static_cast<int>(sig.size());
        cls = nc;
        if (nc_count == count)
            break;
        count = nc_count;
    }
    // Renumber so the initial class is 0, others in discovery order.
    std::vector<int> order(static_cast<std::size_t>(count), -1);
    int next = 0;
    std::deque<int> q{0};
    order[cls[0]] = next++;
    std::vector<int> rep(static_cast<std::size_t>(count), -1);
    rep[cls[0]] = 0;
    while (!q.empty()) {
        int i = q.front();
        q.pop_front();
        for (Symbol c = 0; c < sigma; ++c) {
            int d = delta[i][c];
            if (order[cls[d]] < 0) {
                order[cls[d]] = next++;
                rep[cls[d]] = d;
                q.push_back(d);
            }
        }
    }
    MinDfa out;
    out.dfa = Nfa(a.alphabet, count);
    for (int k = 0; k < count; ++k) {
        int i = rep[k];
        int sid = order[k];
        for (Symbol c = 0; c < sigma; ++c)
            out.dfa.add(sid, c, order[cls[delta[i][c]]]);
        if (has_final(a, sets[i]))
            out.dfa.finals.push_back(sid);
    }
    std::sort(out.dfa.finals.begin(), out.dfa.finals.end());
    out.size = count;
    return out;
}

// --- words ---

inline std::optional<Word> shortest_word(const Nfa& a)
{
    a.validate();
    Adjacency adj(a);
    std::map<StateSet, std::pair<int, Symbol>> parent;
    std::vector<StateSet> sets{initial_set(a, adj)};
    parent[sets[0]] = {-1, kEps};
    std::vector<std::pair<int, Symbol>> back{{-1, kEps}};
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (has_final(a, sets[i])) {
            Word w;
            for (int j = static_cast<int>(i); back[j].first >= 0; j = back[j].first)
                w.push_back(back[j].second);
            std::reverse(w.begin(), w.end());
            return w;
        }
        for (Symbol c = 0; c < a.alphabet.size(); ++c) {
            StateSet nxt = step(adj, sets[i], c);
            if (std::none_of(nxt.begin(), nxt.end(), [](char x) { return x; }))
                continue;
            if (parent.count(nxt))
                continue;
            parent[nxt] = {static_cast<int>(i), c};
            sets.push_back(nxt);
            back.push_back({static_cast<int>(i), c});
        }
    }
    return std::nullopt;
}

inline bool nfa_is_empty(const Nfa& a)
{
    auto fw = forward_reachable(a);
    for (State f : a.finals)
        if (fw[f])
            return false;
    return true;
}

// Letters needed from each state to some final state (-1 if none).
inline std::vector<int> distance_to_final(const Nfa& a)
{
    std::vector<std::vector<std::pair<State, int>>> pred(static_cast<std::size_t>(a.states));
    for (const auto& t : a.transitions)
        pred[t.dst].push_back({t.src, t.label == kEps ? 0 : 1});
    std::vector<int> dist(static_cast<std::size_t>(a.states), -1);
    std::deque<State> dq;
    for (State f : a.finals)
        if (dist[f] != 0) {
            dist[f] = 0;
            dq.push_back(f);
        }
    while (!dq.empty()) {
        State s = dq.front();
        dq.pop_front();
        for (auto [p, w] : pred[s]) {
            int nd = dist[s] + w;
            if (dist[p] < 0 || nd < dist[p]) {
                dist[p] = nd;
                if (w == 0)
                    dq.push_front(p);
                else
                    dq.push_back(p);
            }
        }
    }
    return dist;
}

inline bool word_less(const Word& a, const Word& b)
{
    if (a.size() != b.size())
        return a.size() < b.size();
    return a < b;
}

// All members up to maxLen, by (length, lexicographic in declared letter order).
inline std::vector<Word> enumerate_words(const Nfa& a, int maxLen, std::size_t limit = 5000000)
{
    a.validate();
    Adjacency adj(a);
    auto dist = distance_to_final(a);
    std::vector<Word> out;
    Word cur;
    auto min_dist = [&](const StateSet& s) {
        int best = -1;
        for (std::size_t i = 0; i < s.size(); ++i)
            if (s[i] && dist[i] >= 0 && (best < 0 || dist[i] < best))
                best = dist[i];
        return best;
    };
    std::function<void(const StateSet&)> dfs = [&](const StateSet& set) {
        if (has_final(a, set)) {
            out.push_back(cur);
            if (out.size() > limit)
                throw BudgetExceeded("enumerate_words: too many words");
        }
        if (static_cast<int>(cur.size()) >= maxLen)
            return;
        for (Symbol c = 0; c < a.alphabet.size(); ++c) {
            StateSet nxt = step(adj, set, c);
            int d = min_dist(nxt);
            if (d < 0 || static_cast<int>(cur.size()) + 1 + d > maxLen)
                continue;
            cur.push_back(c);
            dfs(nxt);
            cur.pop_back();
        }
    };
    StateSet init = initial_set(a, adj);
    int d0 = min_dist(init);
    if (d0 >= 0 && d0 <= maxLen)
        dfs(init);
    std::stable_sort(out.begin(), out.end(),
                     [](const Word& x, const Word& y) { return x.size() < y.size(); });
    return out;
}

// Same alphabet symbols, reindexed to another alphabet containing them.
inline Nfa relabel(const Nfa& a, const Alphabet& to)
{
    Nfa r(to, a.states, a.initial);
    r.finals = a.finals;
    for (const auto& t : a.transitions)
        r.add(t.src, t.label == kEps ? kEps : to.id(a.alphabet.name(t.label)), t.dst);
    return r;
}

} // namespace strcon
