#pragma once

#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "../constraints/verify.hpp"

namespace strcon {

struct SolveResult {
    bool sat = false;
    std::optional<ExtendedAssignment> assignment;
    std::size_t candidatesTried = 0;
};

namespace detail {

inline std::vector<int> relation_vars(const Relation& r)
{
    std::vector<int> v{r.lhs};
    for (const auto& o : r.rhs)
        v.push_back(o.var);
    return v;
}

// Words for variable y, given the words already chosen. Relations that become fully
// instantiated at y are folded in exactly; other occurrences of y contribute the domain
// of their transducer.
inline std::vector<Word> candidates(const StringConstraint& c, int y, const std::vector<std::optional<Word>>& fixed,
                                    int lenBound)
{
    std::vector<Nfa> filters;
    std::vector<std::vector<NormTransducer>> keep;
    std::vector<const Relation*> exact; // y occurs several times: checked word by word
    for (const auto& rel : c.relations) {
        auto vars = relation_vars(rel);
        bool mentions = false, complete = true;
        for (int v : vars) {
            if (v == y)
                mentions = true;
            else if (!fixed[v])
                complete = false;
        }
        if (!mentions)
            continue;
        if (rel.lhs == y && rel.rhs.empty()) {
            filters.push_back(epsilon_nfa(c.alphabet));
            continue;
        }
        int count = 0;
        for (const auto& o : rel.rhs)
            count += o.var == y;
        if (complete && rel.lhs != y && count == 1) {
            keep.emplace_back();
            auto& norm = keep.back();
            for (const auto& o : rel.rhs)
                norm.push_back(normalize(o.transducer));
            std::vector<RelComponent> comps;
            for (std::size_t i = 0; i < rel.rhs.size(); ++i)
                comps.push_back({&norm[i], rel.rhs[i].var == y ? nullptr : &*fixed[rel.rhs[i].var]});
            RelationSpace sp(*fixed[rel.lhs], comps);
            filters.push_back(relation_nfa(sp, c.alphabet));
            continue;
        }
        if (complete && rel.lhs != y)
            exact.push_back(&rel);
        for (const auto& o : rel.rhs)
            if (o.var == y && !o.identity)
                filters.push_back(trim(o.transducer.base));
    }
    const Membership& m = c.membership[y];
    std::vector<Word> words;
    if (auto* a = std::get_if<Nfa>(&m)) {
        filters.insert(filters.begin(), *a);
        words = enumerate_words(trim(nfa_product(filters)), lenBound);
    } else {
        Pda p = pda_product_nfas(std::get<Pda>(m), filters);
        words = pda_enumerate_words(p, lenBound, exact_stack_cap(p, static_cast<std::size_t>(lenBound)));
    }
    if (exact.empty())
        return words;
    std::vector<Word> out;
    for (const auto& w : words) {
        bool ok = true;
        for (const Relation* rel : exact) {
            std::vector<NormTransducer> norm;
            for (const auto& o : rel->rhs)
                norm.push_back(normalize(o.transducer));
            std::vector<RelComponent> comps;
            for (std::size_t i = 0; i < rel->rhs.size(); ++i)
                comps.push_back({&norm[i], rel->rhs[i].var == y ? &w : &*fixed[rel->rhs[i].var]});
            if (!relation_witness(RelationSpace(*fixed[rel->lhs], comps))) {
                ok = false;
                break;
            }
        }
        if (ok)
            out.push_back(w);
    }
    return out;
}

} // namespace detail

// Backtracking over candidate words of length <= lenBound, variables taken in dependency
// order; every SAT answer is re-checked with verify_extended.
inline SolveResult solve_bounded(const StringConstraint& c, int lenBound)
{
    auto dep = dependency_order(c);
    if (dep.cyclic)
        throw CyclicConstraint("solve: constraint is cyclic");
    SolveResult res;
    std::vector<std::optional<Word>> fixed(c.variables.size());
    std::function<bool(std::size_t)> go = [&](std::size_t idx) -> bool {
        if (idx == dep.order.size()) {
            std::vector<Word> a;
            for (const auto& w : fixed)
                a.push_back(*w);
            auto v = verify_base(c, a);
            if (!v.ok)
                return false;
            if (!verify_extended(c, *v.extended).ok)
                throw std::logic_error("solve: recovered assignment fails verification");
            res.assignment = v.extended;
            return true;
        }
        int y = dep.order[idx];
        for (const auto& w : detail::candidates(c, y, fixed, lenBound)) {
            ++res.candidatesTried;
            fixed[y] = w;
            if (go(idx + 1))
                return true;
        }
        fixed[y].reset();
        return false;
    };
    res.sat = go(0);
    return res;
}

} // namespace strcon
