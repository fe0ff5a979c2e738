#pragma once

#include <map>
#include <optional>
#include <tuple>
#include <vector>

#include "nfa.hpp"

namespace strcon {

inline Transducer identity_transducer(const Alphabet& al)
{
    Transducer t;
    t.base = Nfa(al, 1);
    t.base.finals = {0};
    for (Symbol s = 0; s < al.size(); ++s)
        t.add(0, s, {s}, 0);
    return t;
}

// Automaton acting as a transducer with empty outputs.
inline Transducer erasing_transducer(const Nfa& a)
{
    Transducer t;
    t.base = a;
    t.outputs.assign(a.transitions.size(), Word{});
    return t;
}

inline Nfa input_automaton(const Transducer& t) { return t.base; }

// Output language of t on u: product with the line automaton of u, outputs spelled out.
inline Nfa transducer_apply(const Transducer& t, const Word& u)
{
    t.validate();
    t.base.alphabet.check(u);
    const int n = static_cast<int>(u.size());
    Nfa r(t.base.alphabet, 0);
    std::map<std::pair<State, int>, State> ids;
    std::vector<std::pair<State, int>> todo;
    auto get = [&](State q, int i) {
        auto it = ids.find({q, i});
        if (it != ids.end())
            return it->second;
        State s = r.add_state();
        ids.emplace(std::make_pair(q, i), s);
        todo.push_back({q, i});
        return s;
    };
    get(t.base.initial, 0);
    for (std::size_t k = 0; k < todo.size(); ++k) {
        auto [q, i] = todo[k];
        State src = ids[{q, i}];
        for (std::size_t ti = 0; ti < t.base.transitions.size(); ++ti) {
            const auto& tr = t.base.transitions[ti];
            if (tr.src != q)
                continue;
            int ni;
            if (tr.label == kEps)
                ni = i;
            else if (i < n && u[i] == tr.label)
                ni = i + 1;
            else
                continue;
            State dst = get(tr.dst, ni);
            const Word& out = t.outputs[ti];
            if (out.empty()) {
                r.add(src, kEps, dst);
                continue;
            }
            State prev = src;
            for (std::size_t j = 0; j + 1 < out.size(); ++j) {
                State mid = r.add_state();
                r.add(prev, out[j], mid);
                prev = mid;
            }
            r.add(prev, out.back(), dst);
        }
        if (i == n && t.base.is_final(q))
            r.finals.push_back(src);
    }
    return r;
}

// Decides (u, v) in R(t); on success returns the transition indices of an accepting run.
inline std::optional<std::vector<int>> transducer_pair_check(const Transducer& t, const Word& u,
                                                             const Word& v)
{
    t.validate();
    t.base.alphabet.check(u);
    t.base.alphabet.check(v);
    const int n = static_cast<int>(u.size());
    const int m = static_cast<int>(v.size());
    const int Q = t.base.states;
    auto key = [&](State q, int i, int j) { return (static_cast<long>(q) * (n + 1) + i) * (m + 1) + j; };
    std::vector<std::vector<int>> from(static_cast<std::size_t>(Q));
    for (std::size_t ti = 0; ti < t.base.transitions.size(); ++ti)
        from[t.base.transitions[ti].src].push_back(static_cast<int>(ti));
    std::vector<std::pair<long, int>> back(static_cast<std::size_t>(Q) * (n + 1) * (m + 1), {-2, -1});
    std::vector<std::tuple<State, int, int>> q;
    back[key(t.base.initial, 0, 0)] = {-1, -1};
    q.push_back({t.base.initial, 0, 0});
    for (std::size_t h = 0; h < q.size(); ++h) {
        auto [s, i, j] = q[h];
        if (i == n && j == m && t.base.is_final(s)) {
            std::vector<int> run;
            long k = key(s, i, j);
            while (back[k].first != -1) {
                run.push_back(back[k].second);
                k = back[k].first;
            }
            std::reverse(run.begin(), run.end());
            return run;
        }
        for (int ti : from[s]) {
            const auto& tr = t.base.transitions[ti];
            int ni = i;
            if (tr.label != kEps) {
                if (i >= n || u[i] != tr.label)
                    continue;
                ni = i + 1;
            }
            const Word& out = t.outputs[ti];
            if (j + static_cast<int>(out.size()) > m)
                continue;
            if (!std::equal(out.begin(), out.end(), v.begin() + j))
                continue;
            int nj = j + static_cast<int>(out.size());
            long nk = key(tr.dst, ni, nj);
            if (back[nk].first != -2)
                continue;
            back[nk] = {key(s, i, j), ti};
            q.push_back({tr.dst, ni, nj});
        }
    }
    return std::nullopt;
}

// Input and output of a run, checked against t.
inline std::pair<Word, Word> run_io(const Transducer& t, const std::vector<int>& run)
{
    Word in, out;
    State cur = t.base.initial;
    for (int ti : run) {
        if (ti < 0 || ti >= static_cast<int>(t.base.transitions.size()))
            throw InvalidInput("run: transition index out of range");
        const auto& tr = t.base.transitions[ti];
        if (tr.src != cur)
            throw InvalidInput("run: transitions do not chain");
        if (tr.label != kEps)
            in.push_back(tr.label);
        out.insert(out.end(), t.outputs[ti].begin(), t.outputs[ti].end());
        cur = tr.dst;
    }
    if (!t.base.is_final(cur))
        throw InvalidInput("run: does not end in a final state");
    return {in, out};
}

} // namespace strcon
