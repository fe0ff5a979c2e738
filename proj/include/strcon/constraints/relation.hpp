#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "../automata/nfa.hpp"
#include "../embedding.hpp"

namespace strcon {

// Transducer whose edges are (a, eps), (eps, eps) or (eps, c): long outputs become chains.
struct NormEdge {
    State src;
    Symbol in;
    Symbol out;
    State dst;
    int orig;  // transition of the original transducer
    bool head; // first edge of that transition's chain
};

struct NormTransducer {
    int states = 0;
    State initial = 0;
    std::vector<char> final;
    std::vector<std::vector<NormEdge>> from;
};

inline NormTransducer normalize(const Transducer& t)
{
    NormTransducer n;
    n.states = t.base.states;
    n.initial = t.base.initial;
    std::vector<NormEdge> edges;
    for (std::size_t i = 0; i < t.base.transitions.size(); ++i) {
        const auto& tr = t.base.transitions[i];
        const Word& out = t.outputs[i];
        int orig = static_cast<int>(i);
        if (out.empty()) {
            edges.push_back({tr.src, tr.label, kEps, tr.dst, orig, true});
            continue;
        }
        State prev = n.states++;
        edges.push_back({tr.src, tr.label, kEps, prev, orig, true});
        for (std::size_t j = 0; j < out.size(); ++j) {
            State next = j + 1 == out.size() ? tr.dst : n.states++;
            edges.push_back({prev, kEps, out[j], next, orig, false});
            prev = next;
        }
    }
    n.final.assign(static_cast<std::size_t>(n.states), 0);
    for (State f : t.base.finals)
        n.final[f] = 1;
    n.from.assign(static_cast<std::size_t>(n.states), {});
    for (const auto& e : edges)
        n.from[e.src].push_back(e);
    return n;
}

// One right-hand side occurrence: its transducer and, once known, its input word.
struct RelComponent {
    const NormTransducer* t = nullptr;
    const Word* input = nullptr; // nullptr while the variable is still free
};

struct RelationWitness {
    std::vector<std::vector<int>> runs; // original transition indices per component
    std::vector<Word> outputs;
    WitnessingProjection projection;
};

// Product of a cursor into the left-hand side word with every component. Emitted output
// letters either match the letter under the cursor or are dropped (the subword closure).
// At most one component may be free; its input letters label the product moves.
class RelationSpace {
public:
    RelationSpace(const Word& lhs, std::vector<RelComponent> comps, std::size_t budget = 4000000)
        : lhs_(lhs), comps_(std::move(comps)), budget_(budget)
    {
        __uint128_t r = lhs.size() + 1;
        radix_.push_back(lhs.size() + 1);
        for (std::size_t i = 0; i < comps_.size(); ++i) {
            if (comps_[i].input)
                continue;
            if (free_ >= 0)
                throw std::logic_error("relation space: more than one free component");
            free_ = static_cast<int>(i);
        }
        for (const auto& c : comps_) {
            std::uint64_t q = static_cast<std::uint64_t>(c.t->states);
            std::uint64_t p = c.input ? c.input->size() + 1 : 1;
            radix_.push_back(q);
            radix_.push_back(p);
            r *= q * p;
            if (r > (static_cast<__uint128_t>(1) << 62))
                throw BudgetExceeded("relation product too large");
        }
    }

    struct Move {
        int comp;
        int edge;
        bool matched;
    };

    std::vector<int> start() const
    {
        std::vector<int> s{0};
        for (const auto& c : comps_) {
            s.push_back(c.t->initial);
            s.push_back(0);
        }
        return s;
    }

    bool accepting(const std::vector<int>& s) const
    {
        if (s[0] != static_cast<int>(lhs_.size()))
            return false;
        for (std::size_t i = 0; i < comps_.size(); ++i) {
            if (!comps_[i].t->final[s[1 + 2 * i]])
                return false;
            if (comps_[i].input && s[2 + 2 * i] != static_cast<int>(comps_[i].input->size()))
                return false;
        }
        return true;
    }

    std::uint64_t encode(const std::vector<int>& s) const
    {
        std::uint64_t code = 0;
        for (std::size_t i = 0; i < s.size(); ++i)
            code = code * radix_[i] + static_cast<std::uint64_t>(s[i]);
        return code;
    }

    // emit(next, label, moves): label is kEps unless the free component read a letter.
    template <class F>
    void successors(const std::vector<int>& s, F&& emit) const
    {
        std::vector<Move> one(1);
        for (std::size_t i = 0; i < comps_.size(); ++i) {
            const auto& c = comps_[i];
            int q = s[1 + 2 * i], p = s[2 + 2 * i];
            const auto& edges = c.t->from[q];
            for (std::size_t e = 0; e < edges.size(); ++e) {
                const auto& ed = edges[e];
                std::vector<int> n = s;
                n[1 + 2 * i] = ed.dst;
                if (ed.in != kEps) {
                    if (!c.input)
                        continue;
                    if (p >= static_cast<int>(c.input->size()) || (*c.input)[p] != ed.in)
                        continue;
                    n[2 + 2 * i] = p + 1;
                }
                one[0] = {static_cast<int>(i), static_cast<int>(e), false};
                if (ed.out != kEps && s[0] < static_cast<int>(lhs_.size()) && lhs_[s[0]] == ed.out) {
                    std::vector<int> m = n;
                    m[0] = s[0] + 1;
                    one[0].matched = true;
                    emit(m, kEps, one);
                    one[0].matched = false;
                }
                emit(n, kEps, one);
            }
        }
        // The free component reads an input letter; that letter labels the move.
        if (free_ < 0)
            return;
        const int i = free_;
        for (std::size_t e = 0; e < comps_[i].t->from[s[1 + 2 * i]].size(); ++e) {
            const auto& ed = comps_[i].t->from[s[1 + 2 * i]][e];
            if (ed.in == kEps)
                continue;
            std::vector<int> n = s;
            n[1 + 2 * i] = ed.dst;
            one[0] = {i, static_cast<int>(e), false};
            emit(n, ed.in, one);
        }
    }

    const std::vector<RelComponent>& comps() const { return comps_; }
    const Word& lhs() const { return lhs_; }
    std::size_t budget() const { return budget_; }

private:
    Word lhs_;
    std::vector<RelComponent> comps_;
    std::vector<std::uint64_t> radix_;
    std::size_t budget_;
    int free_ = -1;
};

// Search for outputs of the fixed components whose subword shuffle contains the lhs word.
inline std::optional<RelationWitness> relation_witness(const RelationSpace& sp)
{
    struct Back {
        std::uint64_t parent;
        int comp, edge;
        bool matched;
        std::vector<int> state;
    };
    std::unordered_map<std::uint64_t, std::size_t> seen;
    std::vector<Back> nodes;
    auto s0 = sp.start();
    nodes.push_back({0, -1, -1, false, s0});
    seen[sp.encode(s0)] = 0;
    std::optional<std::size_t> hit;
    for (std::size_t h = 0; h < nodes.size() && !hit; ++h) {
        if (sp.accepting(nodes[h].state)) {
            hit = h;
            break;
        }
        auto cur = nodes[h].state;
        sp.successors(cur, [&](const std::vector<int>& n, Symbol label, const std::vector<RelationSpace::Move>& mv) {
            if (label != kEps)
                return;
            auto code = sp.encode(n);
            if (seen.count(code))
                return;
            if (nodes.size() >= sp.budget())
                throw BudgetExceeded("relation search: state budget exceeded");
            seen[code] = nodes.size();
            nodes.push_back({h, mv[0].comp, mv[0].edge, mv[0].matched, n});
        });
    }
    if (!hit)
        return std::nullopt;
    const auto& comps = sp.comps();
    const std::size_t k = comps.size();
    std::vector<Back*> path;
    for (std::size_t h = *hit; h != 0; h = nodes[h].parent)
        path.push_back(&nodes[h]);
    std::reverse(path.begin(), path.end());
    RelationWitness w;
    w.runs.assign(k, {});
    w.outputs.assign(k, {});
    w.projection.parts.assign(k, {});
    w.projection.positions.assign(k, {});
    std::vector<State> at(k);
    for (std::size_t i = 0; i < k; ++i)
        at[i] = comps[i].t->initial;
    for (auto* b : path) {
        const auto& ed = comps[b->comp].t->from[at[b->comp]][b->edge];
        at[b->comp] = ed.dst;
        if (ed.head)
            w.runs[b->comp].push_back(ed.orig);
        if (ed.out != kEps) {
            if (b->matched) {
                w.projection.partition.push_back(b->comp);
                w.projection.parts[b->comp].push_back(ed.out);
                w.projection.positions[b->comp].push_back(static_cast<int>(w.outputs[b->comp].size()));
            }
            w.outputs[b->comp].push_back(ed.out);
        }
    }
    return w;
}

// Language of the free component's inputs for which the relation holds, the other
// components' words as given.
inline Nfa relation_nfa(const RelationSpace& sp, const Alphabet& al)
{
    Nfa r(al, 0);
    std::unordered_map<std::uint64_t, State> ids;
    std::vector<std::vector<int>> todo;
    auto get = [&](const std::vector<int>& s) {
        auto code = sp.encode(s);
        auto it = ids.find(code);
        if (it != ids.end())
            return it->second;
        if (ids.size() >= sp.budget())
            throw BudgetExceeded("relation automaton: state budget exceeded");
        State id = r.add_state();
        ids.emplace(code, id);
        todo.push_back(s);
        return id;
    };
    get(sp.start());
    for (std::size_t h = 0; h < todo.size(); ++h) {
        auto cur = todo[h];
        State src = static_cast<State>(h);
        if (sp.accepting(cur))
            r.finals.push_back(src);
        sp.successors(cur, [&](const std::vector<int>& n, Symbol label, const std::vector<RelationSpace::Move>&) {
            State d = get(n);
            r.add(src, label, d);
        });
    }
    return trim(r);
}

} // namespace strcon
