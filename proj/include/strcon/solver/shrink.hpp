#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <stdexcept>
#include <unordered_map>
#include <vector>

#include "../constraints/verify.hpp"
#include "blocks.hpp"

namespace strcon {

struct ShrinkStep {
    std::string variable;
    std::size_t before = 0, after = 0;
};

struct ShrinkResult {
    ExtendedAssignment assignment;
    std::vector<ShrinkStep> trace;
};

namespace detail {

// Accepting NFA run on w; returns the state reached right after each letter
// (entry 0 is the initial state).
inline std::vector<State> nfa_letter_states(const Nfa& a, const Word& w)
{
    const int n = static_cast<int>(w.size());
    const int Q = a.states;
    std::vector<std::pair<int, int>> back(static_cast<std::size_t>(Q) * (n + 1), {-2, -1});
    std::vector<std::pair<int, State>> q{{0, a.initial}};
    auto key = [&](int i, State s) { return static_cast<std::size_t>(i) * Q + s; };
    back[key(0, a.initial)] = {-1, -1};
    std::vector<std::vector<int>> from(static_cast<std::size_t>(Q));
    for (std::size_t t = 0; t < a.transitions.size(); ++t)
        from[a.transitions[t].src].push_back(static_cast<int>(t));
    for (std::size_t h = 0; h < q.size(); ++h) {
        auto [i, s] = q[h];
        if (i == n && a.is_final(s)) {
            std::vector<State> out(static_cast<std::size_t>(n + 1));
            out[0] = a.initial;
            int ci = i;
            State cs = s;
            while (back[key(ci, cs)].first != -1) {
                const auto& tr = a.transitions[back[key(ci, cs)].second];
                int pi = back[key(ci, cs)].first;
                if (tr.label != kEps)
                    out[ci] = tr.dst;
                ci = pi;
                cs = tr.src;
            }
            return out;
        }
        for (int t : from[s]) {
            const auto& tr = a.transitions[t];
            int ni = i;
            if (tr.label != kEps) {
                if (i >= n || w[i] != tr.label)
                    continue;
                ni = i + 1;
            }
            if (back[key(ni, tr.dst)].first != -2)
                continue;
            back[key(ni, tr.dst)] = {i, t};
            q.push_back({ni, tr.dst});
        }
    }
    throw InvalidInput("shrink: word not accepted by its automaton");
}

// Working state for one variable: its word, the fixed transducer runs of its occurrences
// and which output letters the current embeddings use.
class VarShrinker {
public:
    VarShrinker(const StringConstraint& c, const ExtendedAssignment& ea, int x) : c_(c), x_(x), w_(ea.base[x])
    {
        for (const auto& o : c.occurrences())
            if (c.occurrence(o).var == x)
                occs_.push_back(o);
        for (const auto& o : occs_) {
            const auto& t = c.occurrence(o).transducer;
            auto run = transducer_pair_check(t, w_, ea.outputs.at(o));
            if (!run)
                throw InvalidInput("shrink: output " + o.key() + " is not a transduction");
            runs_.push_back(*run);
            crucial_.emplace_back(ea.outputs.at(o).size(), 0);
        }
        for (std::size_t k = 0; k < occs_.size(); ++k) {
            int r = occs_[k].relation;
            auto proj = shuffle_embed(ea.base[c.relations[r].lhs], relation_outputs(c, ea, r));
            if (!proj)
                throw InvalidInput("shrink: relation " + std::to_string(r) + " not embedded");
            for (int p : proj->positions[occs_[k].rhs])
                crucial_[k][p] = 1;
        }
    }

    const Word& word() const { return w_; }
    std::size_t occurrences() const { return occs_.size(); }

    std::vector<RunBlocks> blocks() const
    {
        std::vector<RunBlocks> out;
        for (std::size_t k = 0; k < occs_.size(); ++k)
            out.push_back(block_decompose(trans(k), runs_[k]));
        return out;
    }

    // Boundary tuple after each of the |w|+1 blocks.
    std::vector<std::vector<State>> boundaries() const
    {
        auto bl = blocks();
        std::vector<std::vector<State>> out(w_.size() + 1);
        for (std::size_t j = 0; j <= w_.size(); ++j)
            for (const auto& b : bl)
                out[j].push_back(b.boundaryStates[j]);
        return out;
    }

    // crucial[j] for letters j = 1..|w| (index 0 is block 0).
    std::vector<char> crucial_letters() const
    {
        std::vector<char> out(w_.size() + 1, 0);
        auto bl = blocks();
        for (std::size_t k = 0; k < occs_.size(); ++k) {
            std::size_t pos = 0;
            for (std::size_t j = 0; j < bl[k].outputsPerBlock.size(); ++j) {
                for (std::size_t q = 0; q < bl[k].outputsPerBlock[j].size(); ++q)
                    if (crucial_[k][pos + q])
                        out[j] = 1;
                pos += bl[k].outputsPerBlock[j].size();
            }
        }
        return out;
    }

    // Keeps the letters with keep[j] set (j = 1..|w|) together with their blocks.
    void cut(const std::vector<char>& keep)
    {
        auto bl = blocks();
        Word nw;
        for (std::size_t j = 1; j <= w_.size(); ++j)
            if (keep[j])
                nw.push_back(w_[j - 1]);
        for (std::size_t k = 0; k < occs_.size(); ++k) {
            std::vector<int> run;
            std::vector<char> cr;
            std::size_t pos = 0;
            for (std::size_t j = 0; j < bl[k].blocks.size(); ++j) {
                auto [b, e] = bl[k].blocks[j];
                std::size_t len = bl[k].outputsPerBlock[j].size();
                if (j == 0 || keep[j]) {
                    run.insert(run.end(), runs_[k].begin() + b, runs_[k].begin() + e);
                    cr.insert(cr.end(), crucial_[k].begin() + static_cast<long>(pos),
                              crucial_[k].begin() + static_cast<long>(pos + len));
                }
                pos += len;
            }
            runs_[k] = run;
            crucial_[k] = cr;
        }
        w_ = nw;
    }

    // Loop erasure on the eps-input stretch of every block, keeping transitions that emit
    // a used output letter.
    void shrink_eps()
    {
        for (std::size_t k = 0; k < occs_.size(); ++k) {
            const auto& t = trans(k);
            auto rb = block_decompose(t, runs_[k]);
            std::vector<int> run;
            std::vector<char> cr;
            std::size_t pos = 0;
            State cur = t.base.initial;
            for (std::size_t j = 0; j < rb.blocks.size(); ++j) {
                auto [b, e] = rb.blocks[j];
                int first = b;
                if (j > 0) {
                    int ti = runs_[k][b];
                    run.push_back(ti);
                    auto len = t.outputs[ti].size();
                    cr.insert(cr.end(), crucial_[k].begin() + static_cast<long>(pos),
                              crucial_[k].begin() + static_cast<long>(pos + len));
                    pos += len;
                    cur = t.base.transitions[ti].dst;
                    first = b + 1;
                }
                // stack of kept eps transitions; depth d ends in state at[d]
                std::vector<int> kept;
                std::vector<std::vector<char>> keptCr;
                std::vector<State> at{cur};
                std::unordered_map<State, std::size_t> depth{{cur, 0}};
                for (int r = first; r < e; ++r) {
                    int ti = runs_[k][r];
                    auto len = t.outputs[ti].size();
                    std::vector<char> flags(crucial_[k].begin() + static_cast<long>(pos),
                                            crucial_[k].begin() + static_cast<long>(pos + len));
                    pos += len;
                    bool important = std::any_of(flags.begin(), flags.end(), [](char f) { return f; });
                    State d = t.base.transitions[ti].dst;
                    if (important) {
                        kept.push_back(ti);
                        keptCr.push_back(flags);
                        at.push_back(d);
                        depth.clear();
                        depth[d] = at.size() - 1;
                        continue;
                    }
                    auto it = depth.find(d);
                    if (it != depth.end()) {
                        std::size_t s = it->second;
                        while (at.size() - 1 > s) {
                            depth.erase(at.back());
                            at.pop_back();
                            kept.pop_back();
                            keptCr.pop_back();
                        }
                        depth[d] = s;
                        continue;
                    }
                    kept.push_back(ti);
                    keptCr.push_back(flags);
                    at.push_back(d);
                    depth[d] = at.size() - 1;
                }
                for (std::size_t q = 0; q < kept.size(); ++q) {
                    run.push_back(kept[q]);
                    cr.insert(cr.end(), keptCr[q].begin(), keptCr[q].end());
                }
                cur = at.back();
            }
            runs_[k] = run;
            crucial_[k] = cr;
        }
    }

    void store(ExtendedAssignment& ea) const
    {
        ea.base[x_] = w_;
        for (std::size_t k = 0; k < occs_.size(); ++k)
            ea.outputs[occs_[k]] = run_io(trans(k), runs_[k]).second;
    }

private:
    const Transducer& trans(std::size_t k) const { return c_.occurrence(occs_[k]).transducer; }

    const StringConstraint& c_;
    int x_;
    Word w_;
    std::vector<OccurrenceIndex> occs_;
    std::vector<std::vector<int>> runs_;
    std::vector<std::vector<char>> crucial_;
};

inline std::vector<int> checked_order(const StringConstraint& c, const ExtendedAssignment& ea)
{
    auto dep = dependency_order(c);
    if (dep.cyclic)
        throw InvalidInput("shrink: constraint is cyclic");
    auto rep = verify_extended(c, ea);
    if (!rep.ok)
        throw InvalidInput("shrink: assignment does not satisfy the constraint (" + rep.failures[0].condition +
                           " at " + rep.failures[0].location + ")");
    return dep.order;
}

inline std::size_t total_length(const ExtendedAssignment& ea)
{
    std::size_t n = 0;
    for (const auto& w : ea.base)
        n += w.size();
    for (const auto& [k, w] : ea.outputs)
        n += w.size();
    return n;
}

inline void confirm(const StringConstraint& c, const ExtendedAssignment& ea, const char* who)
{
    auto rep = verify_extended(c, ea);
    if (!rep.ok)
        throw std::logic_error(std::string(who) + ": shrunk assignment fails " + rep.failures[0].condition);
}

} // namespace detail

// Regular case: letters between two boundaries with equal (automaton state, transducer
// state tuple) and no used letter in between are cut together with their blocks.
namespace detail {

inline ShrinkResult regular_pass(const StringConstraint& c, const ExtendedAssignment& ea, const std::vector<int>& order)
{
    ShrinkResult res{ea, {}};
    for (int x : order) {
        detail::VarShrinker vs(c, res.assignment, x);
        std::size_t before = vs.word().size();
        const Nfa& mem = std::get<Nfa>(c.membership[x]);
        auto states = detail::nfa_letter_states(mem, vs.word());
        auto bounds = vs.boundaries();
        auto crucial = vs.crucial_letters();
        const std::size_t n = vs.word().size();
        std::vector<char> keep(n + 1, 0);
        std::vector<std::size_t> stack{0}; // boundaries kept; stack[d] carries letter stack[d]
        std::map<std::vector<State>, std::size_t> seen;
        auto annot = [&](std::size_t j) {
            std::vector<State> a{states[j]};
            a.insert(a.end(), bounds[j].begin(), bounds[j].end());
            return a;
        };
        seen[annot(0)] = 0;
        for (std::size_t j = 1; j <= n; ++j) {
            auto a = annot(j);
            if (crucial[j]) {
                stack.push_back(j);
                seen.clear();
                seen[a] = stack.size() - 1;
                continue;
            }
            auto it = seen.find(a);
            if (it != seen.end()) {
                std::size_t d = it->second;
                while (stack.size() - 1 > d) {
                    seen.erase(annot(stack.back()));
                    stack.pop_back();
                }
                continue;
            }
            stack.push_back(j);
            seen[a] = stack.size() - 1;
        }
        for (std::size_t d = 1; d < stack.size(); ++d)
            keep[stack[d]] = 1;
        vs.cut(keep);
        vs.shrink_eps();
        vs.store(res.assignment);
        res.trace.push_back({c.variables[x], before, vs.word().size()});
    }
    return res;
}

// Repeats a pass until the total length stops decreasing; later passes see new embeddings.
template <class Pass>
ShrinkResult to_fixpoint(const StringConstraint& c, const ExtendedAssignment& ea, const std::vector<int>& order,
                         Pass pass, const char* who)
{
    ShrinkResult res = pass(c, ea, order);
    while (true) {
        std::size_t before = total_length(res.assignment);
        confirm(c, res.assignment, who);
        ShrinkResult next = pass(c, res.assignment, order);
        if (total_length(next.assignment) >= before)
            break;
        for (std::size_t i = 0; i < res.trace.size(); ++i)
            res.trace[i].after = next.trace[i].after;
        res.assignment = std::move(next.assignment);
    }
    return res;
}

} // namespace detail

inline ShrinkResult shrink_regular(const StringConstraint& c, const ExtendedAssignment& ea)
{
    if (!c.is_regular())
        throw InvalidInput("shrink_regular: constraint has pushdown membership");
    auto order = detail::checked_order(c, ea);
    return detail::to_fixpoint(c, ea, order, detail::regular_pass, "shrink_regular");
}

struct AnnotatedParseTree {
    ParseTree tree;
    std::vector<std::pair<std::vector<State>, std::vector<State>>> annotations;
    std::vector<char> crucialLeaves, crucialInternal;
};

namespace detail {

inline AnnotatedParseTree annotate(const ParseTree& t, const std::vector<std::vector<State>>& bounds,
                                   const std::vector<char>& crucialLetter)
{
    AnnotatedParseTree a;
    a.tree = t;
    a.annotations.resize(t.nodes.size());
    a.crucialLeaves.assign(t.nodes.size(), 0);
    a.crucialInternal.assign(t.nodes.size(), 0);
    std::function<int(int)> go = [&](int v) -> int {
        const auto& nd = t.nodes[v];
        a.annotations[v] = {bounds[nd.begin], bounds[nd.end]};
        if (nd.left < 0) {
            bool c = nd.end > nd.begin && crucialLetter[nd.begin + 1];
            a.crucialLeaves[v] = c;
            return c;
        }
        int l = go(nd.left), r = go(nd.right);
        bool lc = l > 0 || a.crucialInternal[nd.left];
        bool rc = r > 0 || a.crucialInternal[nd.right];
        // least common ancestors of crucial nodes
        if (lc && rc)
            a.crucialInternal[v] = 1;
        return l + r;
    };
    if (t.root >= 0)
        go(t.root);
    return a;
}

inline void respan(ParseTree& t)
{
    int pos = 0;
    std::function<void(int)> go = [&](int v) {
        auto& nd = t.nodes[v];
        nd.begin = pos;
        if (nd.left < 0) {
            if (nd.letter != kEps)
                ++pos;
        } else {
            go(nd.left);
            go(nd.right);
        }
        t.nodes[v].end = pos;
    };
    go(t.root);
}

} // namespace detail

// Context-free case: pump down inside a parse tree of the membership grammar. An ancestor
// and a descendant with equal nonterminal and equal boundary annotations can be merged when
// every used letter under the ancestor also lies under the descendant.
namespace detail {

inline ShrinkResult contextfree_pass(const StringConstraint& c, const ExtendedAssignment& ea,
                                     const std::vector<int>& order)
{
    ShrinkResult res{ea, {}};
    for (int x : order) {
        detail::VarShrinker vs(c, res.assignment, x);
        std::size_t before = vs.word().size();
        if (!vs.word().empty()) {
            const Membership& m = c.membership[x];
            Cfg g = std::holds_alternative<Nfa>(m) ? nfa_to_cfg(std::get<Nfa>(m)) : pda_to_cfg(std::get<Pda>(m));
            auto cyk = cfg_cyk(g, vs.word(), true);
            if (!cyk.member)
                throw InvalidInput("shrink_contextfree: word not in its grammar");
            ParseTree tree = *cyk.tree;
            while (true) {
                auto bounds = vs.boundaries();
                auto crucial = vs.crucial_letters();
                auto at = detail::annotate(tree, bounds, crucial);
                std::vector<int> prefix(vs.word().size() + 1, 0);
                for (std::size_t p = 0; p < vs.word().size(); ++p)
                    prefix[p + 1] = prefix[p] + crucial[p + 1];
                auto crucialIn = [&](int v) { return prefix[tree.nodes[v].end] - prefix[tree.nodes[v].begin]; };
                // depth and preorder
                std::vector<int> depth(tree.nodes.size(), -1), pre;
                std::function<void(int, int)> walk = [&](int v, int d) {
                    depth[v] = d;
                    pre.push_back(v);
                    if (tree.nodes[v].left >= 0) {
                        walk(tree.nodes[v].left, d + 1);
                        walk(tree.nodes[v].right, d + 1);
                    }
                };
                walk(tree.root, 0);
                std::vector<int> byDepth = pre;
                std::stable_sort(byDepth.begin(), byDepth.end(), [&](int a, int b) { return depth[a] > depth[b]; });
                int anc = -1, desc = -1;
                for (int v : byDepth) {
                    if (tree.nodes[v].left < 0)
                        continue;
                    std::vector<int> st{tree.nodes[v].left, tree.nodes[v].right};
                    int best = -1;
                    while (!st.empty()) {
                        int u = st.back();
                        st.pop_back();
                        if (tree.nodes[u].nt == tree.nodes[v].nt && at.annotations[u] == at.annotations[v] &&
                            crucialIn(u) == crucialIn(v)) {
                            int span = tree.nodes[u].end - tree.nodes[u].begin;
                            if (best < 0 || span < tree.nodes[best].end - tree.nodes[best].begin)
                                best = u;
                        }
                        if (tree.nodes[u].left >= 0) {
                            st.push_back(tree.nodes[u].right);
                            st.push_back(tree.nodes[u].left);
                        }
                    }
                    if (best >= 0) {
                        anc = v;
                        desc = best;
                        break;
                    }
                }
                if (anc < 0)
                    break;
                std::vector<char> keep(vs.word().size() + 1, 1);
                keep[0] = 0;
                const auto& A = tree.nodes[anc];
                const auto& D = tree.nodes[desc];
                for (int p = A.begin; p < D.begin; ++p)
                    keep[p + 1] = 0;
                for (int p = D.end; p < A.end; ++p)
                    keep[p + 1] = 0;
                vs.cut(keep);
                tree.nodes[anc] = tree.nodes[desc];
                detail::respan(tree);
            }
        }
        vs.shrink_eps();
        vs.store(res.assignment);
        res.trace.push_back({c.variables[x], before, vs.word().size()});
    }
    return res;
}

} // namespace detail

inline ShrinkResult shrink_contextfree(const StringConstraint& c, const ExtendedAssignment& ea)
{
    auto order = detail::checked_order(c, ea);
    return detail::to_fixpoint(c, ea, order, detail::contextfree_pass, "shrink_contextfree");
}

inline json trace_json(const ShrinkResult& r)
{
    json t = json::array();
    for (const auto& s : r.trace)
        t.push_back({{"variable", s.variable}, {"before", s.before}, {"after", s.after}});
    return t;
}

} // namespace strcon
