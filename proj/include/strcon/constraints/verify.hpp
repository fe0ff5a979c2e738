#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "../automata/cfg.hpp"
#include "../embedding.hpp"
#include "constraint.hpp"
#include "relation.hpp"

namespace strcon {

// Exact membership: a cheap bounded-stack search first, CYK over the converted grammar
// when that fails.
inline bool member(const Membership& m, const Word& w)
{
    if (auto* a = std::get_if<Nfa>(&m))
        return nfa_accepts(*a, w);
    const Pda& p = std::get<Pda>(m);
    try {
        if (pda_run_bounded(p, w, 2 * static_cast<int>(w.size()) + 2, 200000))
            return true;
    } catch (const BudgetExceeded&) {
    }
    return cfg_cyk(pda_to_cfg(p), w).member;
}

struct VerifyFailure {
    std::string condition; // E1, E2 or E3
    std::string location;
    std::string detail;
};

struct VerifyReport {
    bool ok = true;
    std::vector<VerifyFailure> failures;
    std::map<int, WitnessingProjection> projections; // per relation
    std::map<OccurrenceIndex, std::vector<int>> runs; // accepting transducer runs
};

inline std::vector<Word> relation_outputs(const StringConstraint& c, const ExtendedAssignment& ea, int r)
{
    std::vector<Word> U;
    for (std::size_t i = 0; i < c.relations[r].rhs.size(); ++i)
        U.push_back(ea.outputs.at({r, static_cast<int>(i)}));
    return U;
}

inline void check_keys(const StringConstraint& c, const ExtendedAssignment& ea)
{
    if (ea.base.size() != c.variables.size())
        throw InvalidInput("assignment does not cover the variables");
    auto occs = c.occurrences();
    if (ea.outputs.size() != occs.size())
        throw InvalidInput("assignment outputs do not match the occurrence set");
    for (const auto& o : occs)
        if (!ea.outputs.count(o))
            throw InvalidInput("assignment lacks output " + o.key());
    for (const auto& w : ea.base)
        c.alphabet.check(w);
    for (const auto& [k, w] : ea.outputs)
        c.alphabet.check(w);
}

inline VerifyReport verify_extended(const StringConstraint& c, const ExtendedAssignment& ea)
{
    check_keys(c, ea);
    VerifyReport rep;
    auto fail = [&](std::string cond, std::string loc, std::string det) {
        rep.ok = false;
        rep.failures.push_back({std::move(cond), std::move(loc), std::move(det)});
    };
    for (std::size_t x = 0; x < c.variables.size(); ++x)
        if (!member(c.membership[x], ea.base[x]))
            fail("E1", c.variables[x], "'" + c.alphabet.format(ea.base[x]) + "' not in Mem(" + c.variables[x] + ")");
    for (const auto& o : c.occurrences()) {
        const auto& occ = c.occurrence(o);
        auto run = transducer_pair_check(occ.transducer, ea.base[occ.var], ea.outputs.at(o));
        if (run)
            rep.runs[o] = *run;
        else
            fail("E2", o.key(), "output not a transduction of " + c.variables[occ.var]);
    }
    for (std::size_t r = 0; r < c.relations.size(); ++r) {
        const auto& rel = c.relations[r];
        auto U = relation_outputs(c, ea, static_cast<int>(r));
        auto proj = shuffle_embed(ea.base[rel.lhs], U);
        if (proj)
            rep.projections[static_cast<int>(r)] = *proj;
        else
            fail("E3", "relation " + std::to_string(r),
                 c.variables[rel.lhs] + " is not a subword of the shuffle of its outputs");
    }
    return rep;
}

struct BaseVerdict {
    bool ok = false;
    std::string reason;
    std::optional<ExtendedAssignment> extended;
};

// Definition-level check of a plain assignment; outputs are recovered, not guessed.
inline BaseVerdict verify_base(const StringConstraint& c, const std::vector<Word>& a)
{
    if (a.size() != c.variables.size())
        throw InvalidInput("verify_base: assignment does not cover the variables");
    for (const auto& w : a)
        c.alphabet.check(w);
    BaseVerdict v;
    for (std::size_t x = 0; x < c.variables.size(); ++x)
        if (!member(c.membership[x], a[x])) {
            v.reason = "membership of " + c.variables[x];
            return v;
        }
    ExtendedAssignment ea;
    ea.base = a;
    for (std::size_t r = 0; r < c.relations.size(); ++r) {
        const auto& rel = c.relations[r];
        std::vector<NormTransducer> norm;
        for (const auto& o : rel.rhs)
            norm.push_back(normalize(o.transducer));
        std::vector<RelComponent> comps;
        for (std::size_t i = 0; i < rel.rhs.size(); ++i)
            comps.push_back({&norm[i], &a[rel.rhs[i].var]});
        RelationSpace sp(a[rel.lhs], comps);
        auto w = relation_witness(sp);
        if (!w) {
            v.reason = "relation " + std::to_string(r);
            return v;
        }
        for (std::size_t i = 0; i < rel.rhs.size(); ++i)
            ea.outputs[{static_cast<int>(r), static_cast<int>(i)}] = w->outputs[i];
    }
    v.ok = true;
    v.extended = ea;
    return v;
}

inline json report_json(const VerifyReport& rep, const StringConstraint& c)
{
    json j;
    j["ok"] = rep.ok;
    json f = json::array();
    for (const auto& x : rep.failures)
        f.push_back({{"condition", x.condition}, {"location", x.location}, {"detail", x.detail}});
    j["failures"] = f;
    json p = json::object();
    for (const auto& [r, proj] : rep.projections) {
        json parts = json::array();
        for (const auto& w : proj.parts)
            parts.push_back(c.alphabet.format(w));
        p[std::to_string(r)] = {{"parts", parts}, {"partition", proj.partition}};
    }
    j["projections"] = p;
    return j;
}

} // namespace strcon
