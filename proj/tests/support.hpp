#pragma once

#include <functional>
#include <random>
#include <string>
#include <vector>

#include <strcon/automata/cfg.hpp>
#include <strcon/automata/json_io.hpp>
#include <strcon/automata/nfa.hpp>
#include <strcon/automata/pda.hpp>
#include <strcon/automata/transducer.hpp>

namespace testing_support {

using namespace strcon;

inline Alphabet ab() { return Alphabet({"a", "b"}); }

inline Word W(const Alphabet& al, const std::string& s) { return al.parse(s); }

// Duplicates a's or b's: 0 -eps-> 1 (a/a, b/bb), 0 -eps-> 2 (a/aa, b/b).
inline Transducer duplicating_transducer()
{
    Alphabet al = ab();
    Transducer t;
    t.base = Nfa(al, 3, 0);
    t.base.finals = {1, 2};
    t.add(0, kEps, {}, 1);
    t.add(0, kEps, {}, 2);
    t.add(1, 1, {1, 1}, 1);
    t.add(1, 0, {0}, 1);
    t.add(2, 1, {1}, 2);
    t.add(2, 0, {0, 0}, 2);
    return t;
}

inline std::vector<Word> all_words(int sigma, int maxLen)
{
    std::vector<Word> out{{}};
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (static_cast<int>(out[i].size()) >= maxLen)
            continue;
        for (int c = 0; c < sigma; ++c) {
            Word w = out[i];
            w.push_back(c);
            out.push_back(w);
        }
    }
    return out;
}

inline Nfa random_nfa(std::mt19937& rng, const Alphabet& al, int maxStates, double density = 0.35,
                      double epsRate = 0.15)
{
    std::uniform_int_distribution<int> ns(1, maxStates);
    std::uniform_real_distribution<double> u(0, 1);
    Nfa a(al, ns(rng));
    for (State s = 0; s < a.states; ++s) {
        if (u(rng) < 0.4)
            a.finals.push_back(s);
        for (State d = 0; d < a.states; ++d) {
            for (Symbol c = 0; c < al.size(); ++c)
                if (u(rng) < density / a.states * 2)
                    a.add(s, c, d);
            if (u(rng) < epsRate)
                a.add(s, kEps, d);
        }
    }
    return a;
}

inline Pda random_pda(std::mt19937& rng, const Alphabet& al, int maxStates)
{
    std::uniform_int_distribution<int> ns(1, maxStates);
    std::uniform_real_distribution<double> u(0, 1);
    Pda p;
    p.base = Nfa(al, ns(rng));
    p.stack = Alphabet({"X", "Y"});
    for (State s = 0; s < p.base.states; ++s) {
        if (u(rng) < 0.4)
            p.base.finals.push_back(s);
        for (State d = 0; d < p.base.states; ++d)
            for (int l = -1; l < al.size(); ++l) {
                if (u(rng) > (l < 0 ? 0.15 : 0.3))
                    continue;
                double k = u(rng);
                StackOp op = k < 0.4 ? StackOp::nop()
                                     : k < 0.7 ? StackOp::push(u(rng) < 0.5 ? 0 : 1)
                                               : StackOp::pop(u(rng) < 0.5 ? 0 : 1);
                p.add(s, l, op, d);
            }
    }
    return p;
}

inline Transducer random_transducer(std::mt19937& rng, const Alphabet& al, int maxStates)
{
    std::uniform_int_distribution<int> ns(1, maxStates);
    std::uniform_real_distribution<double> u(0, 1);
    std::uniform_int_distribution<int> len(0, 2), letter(0, al.size() - 1);
    Transducer t;
    t.base = Nfa(al, ns(rng));
    for (State s = 0; s < t.base.states; ++s) {
        if (u(rng) < 0.5)
            t.base.finals.push_back(s);
        for (State d = 0; d < t.base.states; ++d)
            for (int l = -1; l < al.size(); ++l) {
                if (u(rng) > (l < 0 ? 0.2 : 0.45))
                    continue;
                Word out;
                int n = len(rng);
                if (l < 0 && n == 0)
                    n = 1; // avoid pure eps/eps edges dominating
                for (int i = 0; i < n; ++i)
                    out.push_back(letter(rng));
                t.add(s, l, out, d);
            }
    }
    return t;
}

// Reference acceptance for the pair relation: explicit recursion over runs.
inline bool pair_oracle(const Transducer& t, const Word& u, const Word& v)
{
    std::set<std::tuple<State, std::size_t, std::size_t>> seen;
    std::function<bool(State, std::size_t, std::size_t)> go = [&](State q, std::size_t i, std::size_t j) {
        if (!seen.insert({q, i, j}).second)
            return false;
        if (i == u.size() && j == v.size() && t.base.is_final(q))
            return true;
        for (std::size_t k = 0; k < t.base.transitions.size(); ++k) {
            const auto& tr = t.base.transitions[k];
            if (tr.src != q)
                continue;
            std::size_t ni = i;
            if (tr.label != kEps) {
                if (i >= u.size() || u[i] != tr.label)
                    continue;
                ++ni;
            }
            const Word& o = t.outputs[k];
            if (j + o.size() > v.size() || !std::equal(o.begin(), o.end(), v.begin() + static_cast<long>(j)))
                continue;
            if (go(tr.dst, ni, j + o.size()))
                return true;
        }
        return false;
    };
    return go(t.base.initial, 0, 0);
}

} // namespace testing_support
