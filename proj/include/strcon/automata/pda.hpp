#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "nfa.hpp"

namespace strcon {

// A configuration is {state, stack bottom..top}.
using Config = std::vector<int>;
using ConfigSet = std::set<Config>;

struct PdaIndex {
    std::vector<std::vector<int>> from; // transition indices per source state
    explicit PdaIndex(const Pda& p) : from(static_cast<std::size_t>(p.base.states))
    {
        for (std::size_t i = 0; i < p.base.transitions.size(); ++i)
            from[p.base.transitions[i].src].push_back(static_cast<int>(i));
    }
};

inline bool apply_op(const StackOp& op, Config& c, int cap)
{
    switch (op.kind) {
    case OpKind::Nop:
        return true;
    case OpKind::Push:
        if (static_cast<int>(c.size()) - 1 >= cap)
            return false;
        c.push_back(op.symbol);
        return true;
    case OpKind::Pop:
        if (c.size() <= 1 || c.back() != op.symbol)
            return false;
        c.pop_back();
        return true;
    }
    return false;
}

class PdaSimulator {
public:
    PdaSimulator(const Pda& p, int cap, std::size_t budget = 2000000)
        : p_(p), idx_(p), cap_(cap), budget_(budget)
    {
    }

    ConfigSet initial() const
    {
        ConfigSet s{{p_.base.initial}};
        close(s);
        return s;
    }

    void close(ConfigSet& s) const
    {
        std::vector<Config> todo(s.begin(), s.end());
        while (!todo.empty()) {
            Config c = std::move(todo.back());
            todo.pop_back();
            for (int ti : idx_.from[c[0]]) {
                const auto& tr = p_.base.transitions[ti];
                if (tr.label != kEps)
                    continue;
                Config n = c;
                if (!apply_op(p_.ops[ti], n, cap_))
                    continue;
                n[0] = tr.dst;
                if (s.insert(n).second) {
                    charge();
                    todo.push_back(std::move(n));
                }
            }
        }
    }

    ConfigSet step(const ConfigSet& s, Symbol a) const
    {
        ConfigSet out;
        for (const auto& c : s)
            for (int ti : idx_.from[c[0]]) {
                const auto& tr = p_.base.transitions[ti];
                if (tr.label != a)
                    continue;
                Config n = c;
                if (!apply_op(p_.ops[ti], n, cap_))
                    continue;
                n[0] = tr.dst;
                if (out.insert(n).second)
                    charge();
            }
        close(out);
        return out;
    }

    bool accepting(const ConfigSet& s) const
    {
        for (const auto& c : s)
            if (c.size() == 1 && p_.base.is_final(c[0]))
                return true;
        return false;
    }

private:
    void charge() const
    {
        if (++used_ > budget_)
            throw BudgetExceeded("pda simulation: configuration budget exceeded");
    }

    const Pda& p_;
    PdaIndex idx_;
    int cap_;
    std::size_t budget_;
    mutable std::size_t used_ = 0;
};

inline bool pda_run_bounded(const Pda& p, const Word& w, int stackCap, std::size_t budget = 2000000)
{
    p.validate();
    p.base.alphabet.check(w);
    PdaSimulator sim(p, stackCap, budget);
    ConfigSet cur = sim.initial();
    for (Symbol a : w) {
        cur = sim.step(cur, a);
        if (cur.empty())
            return false;
    }
    return sim.accepting(cur);
}

// Height sufficient for every accepting run on a word of length n: a run needing more
// contains a letter-free push/pop pair nest that can be cut out.
inline int exact_stack_cap(const Pda& p, std::size_t n)
{
    long q = p.base.states;
    long cap = static_cast<long>(n + 1) * q * q;
    return cap > 1000000 ? 1000000 : static_cast<int>(cap);
}

// NFA without stack use, viewed as a PDA.
inline Pda pda_from_nfa(const Nfa& a)
{
    Pda p;
    p.base = a;
    p.ops.assign(a.transitions.size(), StackOp::nop());
    return p;
}

inline Nfa underlying_nfa(const Pda& p) { return p.base; }

// Product with NFAs; stack behaviour comes from p.
inline Pda pda_product_nfas(const Pda& p, const std::vector<Nfa>& nfas)
{
    p.validate();
    for (const auto& a : nfas) {
        a.validate();
        if (a.alphabet != p.base.alphabet)
            throw InvalidInput("pda_product_nfas: alphabet mismatch");
    }
    if (nfas.empty())
        return p;
    const std::size_t k = nfas.size();
    std::vector<Adjacency> adj;
    for (const auto& a : nfas)
        adj.emplace_back(a);
    PdaIndex idx(p);
    Pda r;
    r.base = Nfa(p.base.alphabet, 0);
    r.stack = p.stack;
    std::map<std::vector<State>, State> ids;
    std::vector<std::vector<State>> tuples;
    auto get = [&](const std::vector<State>& t) {
        auto it = ids.find(t);
        if (it != ids.end())
            return it->second;
        State s = r.base.add_state();
        ids.emplace(t, s);
        tuples.push_back(t);
        return s;
    };
    std::vector<State> init{p.base.initial};
    for (const auto& a : nfas)
        init.push_back(a.initial);
    get(init);
    for (std::size_t h = 0; h < tuples.size(); ++h) {
        const auto cur = tuples[h];
        State s = static_cast<State>(h);
        for (std::size_t i = 0; i < k; ++i)
            for (State d : adj[i].eps[cur[i + 1]]) {
                auto nt = cur;
                nt[i + 1] = d;
                r.add(s, kEps, StackOp::nop(), get(nt));
            }
        for (int ti : idx.from[cur[0]]) {
            const auto& tr = p.base.transitions[ti];
            if (tr.label == kEps) {
                auto nt = cur;
                nt[0] = tr.dst;
                r.add(s, kEps, p.ops[ti], get(nt));
                continue;
            }
            std::vector<State> nt(k + 1);
            nt[0] = tr.dst;
            std::function<void(std::size_t)> rec = [&](std::size_t i) {
                if (i == k) {
                    r.add(s, tr.label, p.ops[ti], get(nt));
                    return;
                }
                for (State d : adj[i].next[cur[i + 1]][tr.label]) {
                    nt[i + 1] = d;
                    rec(i + 1);
                }
            };
            rec(0);
        }
        bool fin = p.base.is_final(cur[0]);
        for (std::size_t i = 0; i < k && fin; ++i)
            fin = nfas[i].is_final(cur[i + 1]);
        if (fin)
            r.base.finals.push_back(s);
    }
    return r;
}

// L(a)·L(b): eps moves from the finals of a to the start of b. b gets its own copy of the
// stack symbols, so a leftover symbol of a can never be popped by b and blocks acceptance.
inline Pda pda_concat(const Pda& a, const Pda& b)
{
    if (a.base.alphabet != b.base.alphabet)
        throw InvalidInput("pda_concat: alphabet mismatch");
    auto syms = a.stack.symbols();
    std::vector<std::string> bsyms;
    for (auto name : b.stack.symbols()) {
        while (std::count(syms.begin(), syms.end(), name))
            name += "'";
        bsyms.push_back(name);
        syms.push_back(name);
    }
    Alphabet st(syms), bst(bsyms);
    Pda r;
    r.base = Nfa(a.base.alphabet, a.base.states + b.base.states, a.base.initial);
    r.stack = st;
    auto remap = [](const StackOp& op, const Alphabet& from, const Alphabet& to) {
        if (op.kind == OpKind::Nop)
            return op;
        return StackOp{op.kind, to.id(from.name(op.symbol))};
    };
    for (std::size_t i = 0; i < a.base.transitions.size(); ++i) {
        const auto& t = a.base.transitions[i];
        r.add(t.src, t.label, remap(a.ops[i], a.stack, st), t.dst);
    }
    const int off = a.base.states;
    for (std::size_t i = 0; i < b.base.transitions.size(); ++i) {
        const auto& t = b.base.transitions[i];
        r.add(t.src + off, t.label, remap(b.ops[i], bst, st), t.dst + off);
    }
    for (State f : a.base.finals)
        r.add(f, kEps, StackOp::nop(), b.base.initial + off);
    for (State f : b.base.finals)
        r.base.finals.push_back(f + off);
    return r;
}

inline Pda relabel(const Pda& p, const Alphabet& to)
{
    Pda r;
    r.base = relabel(p.base, to);
    r.stack = p.stack;
    r.ops = p.ops;
    return r;
}

// Members of L(p) up to maxLen in (length, lex) order; configurations are tracked exactly
// up to the given stack cap.
inline std::vector<Word> pda_enumerate_words(const Pda& p, int maxLen, int stackCap,
                                             std::size_t budget = 5000000,
                                             std::size_t limit = 2000000)
{
    p.validate();
    PdaSimulator sim(p, stackCap, budget);
    auto dist = distance_to_final(p.base);
    std::vector<Word> out;
    Word cur;
    auto feasible = [&](const ConfigSet& s) {
        int best = -1;
        for (const auto& c : s)
            if (dist[c[0]] >= 0 && (best < 0 || dist[c[0]] < best))
                best = dist[c[0]];
        return best >= 0 && static_cast<int>(cur.size()) + best <= maxLen;
    };
    std::function<void(const ConfigSet&)> dfs = [&](const ConfigSet& s) {
        if (sim.accepting(s)) {
            out.push_back(cur);
            if (out.size() > limit)
                throw BudgetExceeded("pda_enumerate_words: too many words");
        }
        if (static_cast<int>(cur.size()) >= maxLen)
            return;
        for (Symbol c = 0; c < p.base.alphabet.size(); ++c) {
            cur.push_back(c);
            ConfigSet n = sim.step(s, c);
            if (!n.empty() && feasible(n))
                dfs(n);
            cur.pop_back();
        }
    };
    ConfigSet init = sim.initial();
    if (feasible(init))
        dfs(init);
    std::stable_sort(out.begin(), out.end(),
                     [](const Word& x, const Word& y) { return x.size() < y.size(); });
    return out;
}

} // namespace strcon
