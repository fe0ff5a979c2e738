#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "../automata/json_io.hpp"

namespace strcon {

using Membership = std::variant<Nfa, Pda>;

struct Occurrence {
    int var = 0;
    Transducer transducer;
    bool identity = false;
};

struct Relation {
    int lhs = 0;
    std::vector<Occurrence> rhs;
};

struct OccurrenceIndex {
    int relation = 0;
    int rhs = 0;
    auto operator<=>(const OccurrenceIndex&) const = default;
    std::string key() const { return std::to_string(relation) + "." + std::to_string(rhs); }
};

struct StringConstraint {
    Alphabet alphabet;
    std::vector<std::string> variables;
    std::vector<Membership> membership;
    std::vector<Relation> relations;

    int var(const std::string& name) const
    {
        for (std::size_t i = 0; i < variables.size(); ++i)
            if (variables[i] == name)
                return static_cast<int>(i);
        throw InvalidInput("undeclared variable '" + name + "'");
    }

    int add_variable(const std::string& name, Membership m)
    {
        variables.push_back(name);
        membership.push_back(std::move(m));
        return static_cast<int>(variables.size()) - 1;
    }

    std::vector<OccurrenceIndex> occurrences() const
    {
        std::vector<OccurrenceIndex> out;
        for (std::size_t r = 0; r < relations.size(); ++r)
            for (std::size_t i = 0; i < relations[r].rhs.size(); ++i)
                out.push_back({static_cast<int>(r), static_cast<int>(i)});
        return out;
    }

    const Occurrence& occurrence(const OccurrenceIndex& o) const { return relations.at(o.relation).rhs.at(o.rhs); }

    bool is_regular() const
    {
        for (const auto& m : membership)
            if (std::holds_alternative<Pda>(m))
                return false;
        return true;
    }
};

struct ExtendedAssignment {
    std::vector<Word> base;
    std::map<OccurrenceIndex, Word> outputs;
};

inline int multiplicity(const StringConstraint& c, int x)
{
    if (x < 0 || x >= static_cast<int>(c.variables.size()))
        throw InvalidInput("multiplicity: variable out of range");
    int n = 0;
    for (const auto& r : c.relations)
        for (const auto& o : r.rhs)
            n += o.var == x;
    return n;
}

struct DependencyOrder {
    bool cyclic = false;
    std::vector<int> order; // when acyclic
    std::vector<int> cycle; // when cyclic: x0 < x1 < ... < x0
};

// Topological order of x < y (x on a left-hand side, y on its right-hand side);
// ties broken by declaration order.
inline DependencyOrder dependency_order(const StringConstraint& c)
{
    const int n = static_cast<int>(c.variables.size());
    std::vector<std::set<int>> succ(static_cast<std::size_t>(n));
    for (const auto& r : c.relations)
        for (const auto& o : r.rhs)
            succ[r.lhs].insert(o.var);
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (int x = 0; x < n; ++x)
        for (int y : succ[x])
            ++indeg[y];
    DependencyOrder res;
    std::set<int> ready;
    for (int x = 0; x < n; ++x)
        if (!indeg[x])
            ready.insert(x);
    while (!ready.empty()) {
        int x = *ready.begin();
        ready.erase(ready.begin());
        res.order.push_back(x);
        for (int y : succ[x])
            if (--indeg[y] == 0)
                ready.insert(y);
    }
    if (static_cast<int>(res.order.size()) == n)
        return res;
    res.cyclic = true;
    res.order.clear();
    // Walk inside the remaining subgraph until a vertex repeats.
    std::vector<int> pos(static_cast<std::size_t>(n), -1);
    int x = 0;
    while (indeg[x] == 0)
        ++x;
    std::vector<int> path;
    while (pos[x] < 0) {
        pos[x] = static_cast<int>(path.size());
        path.push_back(x);
        for (int y : succ[x])
            if (indeg[y] > 0) {
                x = y;
                break;
            }
    }
    res.cycle.assign(path.begin() + pos[x], path.end());
    return res;
}

// --- loading ---

namespace detail {

inline json resolve_file(const json& j, const std::filesystem::path& baseDir)
{
    if (j.is_object() && j.contains("file") && j.size() == 1) {
        auto p = std::filesystem::path(j.at("file").get<std::string>());
        if (p.is_relative())
            p = baseDir / p;
        return read_json_file(p.string());
    }
    return j;
}

// Rebuilds a machine over the constraint alphabet (symbols matched by name).
inline Nfa onto(const Nfa& a, const Alphabet& al, const std::string& where)
{
    for (const auto& s : a.alphabet.symbols())
        if (!al.contains(s))
            throw InvalidInput(where + ": symbol '" + s + "' not in the constraint alphabet");
    return a.alphabet == al ? a : relabel(a, al);
}

} // namespace detail

inline StringConstraint load_constraint(const json& doc, const std::filesystem::path& baseDir = ".")
{
    using namespace detail;
    StringConstraint c;
    try {
        c.alphabet = read_alphabet(field(doc, "alphabet", "constraint"), "constraint.alphabet");
        const json& vars = field(doc, "variables", "constraint");
        if (!vars.is_array())
            throw InvalidInput("constraint.variables: expected an array");
        for (const auto& v : vars) {
            std::string name = as_str(v, "constraint.variables");
            for (const auto& old : c.variables)
                if (old == name)
                    throw InvalidInput("constraint.variables: duplicate '" + name + "'");
            c.add_variable(name, universal_nfa(c.alphabet));
        }
        if (doc.contains("membership")) {
            const json& mem = doc.at("membership");
            if (!mem.is_object())
                throw InvalidInput("constraint.membership: expected an object");
            for (auto it = mem.begin(); it != mem.end(); ++it) {
                std::string where = "constraint.membership." + it.key();
                int x;
                try {
                    x = c.var(it.key());
                } catch (const InvalidInput&) {
                    throw InvalidInput(where + ": undeclared variable");
                }
                Automaton a = automaton_from_json(resolve_file(it.value(), baseDir), where);
                if (auto* n = std::get_if<Nfa>(&a))
                    c.membership[x] = onto(*n, c.alphabet, where);
                else if (auto* p = std::get_if<Pda>(&a))
                    c.membership[x] = Pda{onto(p->base, c.alphabet, where), p->stack, p->ops};
                else
                    throw InvalidInput(where + ": membership must be an nfa or pda");
            }
        }
        if (doc.contains("relations")) {
            const json& rels = doc.at("relations");
            if (!rels.is_array())
                throw InvalidInput("constraint.relations: expected an array");
            for (std::size_t r = 0; r < rels.size(); ++r) {
                std::string where = "constraint.relations[" + std::to_string(r) + "]";
                Relation rel;
                std::string lhs = as_str(field(rels[r], "lhs", where), where + ".lhs");
                try {
                    rel.lhs = c.var(lhs);
                } catch (const InvalidInput&) {
                    throw InvalidInput(where + ".lhs: undeclared variable '" + lhs + "'");
                }
                const json& rhs = field(rels[r], "rhs", where);
                if (!rhs.is_array())
                    throw InvalidInput(where + ".rhs: expected an array");
                for (std::size_t i = 0; i < rhs.size(); ++i) {
                    std::string w = where + ".rhs[" + std::to_string(i) + "]";
                    Occurrence o;
                    std::string v = as_str(field(rhs[i], "var", w), w + ".var");
                    try {
                        o.var = c.var(v);
                    } catch (const InvalidInput&) {
                        throw InvalidInput(w + ".var: undeclared variable '" + v + "'");
                    }
                    const json& t = rhs[i].contains("transducer") ? rhs[i].at("transducer") : json("identity");
                    if (t.is_string() && t.get<std::string>() == "identity") {
                        o.identity = true;
                        o.transducer = identity_transducer(c.alphabet);
                    } else {
                        Automaton a = automaton_from_json(resolve_file(t, baseDir), w + ".transducer");
                        auto* td = std::get_if<Transducer>(&a);
                        if (!td)
                            throw InvalidInput(w + ".transducer: expected a transducer");
                        Transducer x;
                        x.base = onto(td->base, c.alphabet, w + ".transducer");
                        for (const auto& out : td->outputs)
                            x.outputs.push_back(translate(out, td->base.alphabet, c.alphabet));
                        o.transducer = x;
                    }
                    rel.rhs.push_back(std::move(o));
                }
                c.relations.push_back(std::move(rel));
            }
        }
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("constraint: ") + e.what());
    }
    return c;
}

inline StringConstraint load_constraint_file(const std::string& path)
{
    return load_constraint(read_json_file(path), std::filesystem::path(path).parent_path());
}

inline json to_json(const StringConstraint& c)
{
    json j;
    j["alphabet"] = c.alphabet.symbols();
    j["variables"] = c.variables;
    json mem = json::object();
    for (std::size_t x = 0; x < c.variables.size(); ++x)
        mem[c.variables[x]] = std::visit([](const auto& m) { return to_json(m); }, c.membership[x]);
    j["membership"] = mem;
    json rels = json::array();
    for (const auto& r : c.relations) {
        json jr;
        jr["lhs"] = c.variables[r.lhs];
        json rhs = json::array();
        for (const auto& o : r.rhs) {
            json jo;
            jo["var"] = c.variables[o.var];
            jo["transducer"] = o.identity ? json("identity") : to_json(o.transducer);
            rhs.push_back(jo);
        }
        jr["rhs"] = rhs;
        rels.push_back(jr);
    }
    j["relations"] = rels;
    return j;
}

inline ExtendedAssignment load_assignment(const json& doc, const StringConstraint& c, bool needOutputs)
{
    ExtendedAssignment ea;
    ea.base.assign(c.variables.size(), Word{});
    try {
        const json& base = detail::field(doc, "base", "assignment");
        std::vector<char> seen(c.variables.size(), 0);
        for (auto it = base.begin(); it != base.end(); ++it) {
            int x;
            try {
                x = c.var(it.key());
            } catch (const InvalidInput&) {
                throw InvalidInput("assignment.base: undeclared variable '" + it.key() + "'");
            }
            ea.base[x] = c.alphabet.parse(detail::as_str(it.value(), "assignment.base." + it.key()));
            seen[x] = 1;
        }
        for (std::size_t x = 0; x < seen.size(); ++x)
            if (!seen[x])
                throw InvalidInput("assignment.base: missing variable '" + c.variables[x] + "'");
        if (doc.contains("outputs")) {
            auto occs = c.occurrences();
            std::map<std::string, OccurrenceIndex> byKey;
            for (const auto& o : occs)
                byKey[o.key()] = o;
            for (auto it = doc.at("outputs").begin(); it != doc.at("outputs").end(); ++it) {
                auto k = byKey.find(it.key());
                if (k == byKey.end())
                    throw InvalidInput("assignment.outputs: unknown occurrence key '" + it.key() + "'");
                ea.outputs[k->second] = c.alphabet.parse(detail::as_str(it.value(), "assignment.outputs"));
            }
            if (needOutputs && ea.outputs.size() != occs.size())
                throw InvalidInput("assignment.outputs: keys do not match the occurrence set");
        } else if (needOutputs && !c.occurrences().empty()) {
            throw InvalidInput("assignment: outputs required");
        }
    } catch (const json::exception& e) {
        throw InvalidInput(std::string("assignment: ") + e.what());
    }
    return ea;
}

inline json to_json(const ExtendedAssignment& ea, const StringConstraint& c)
{
    json j;
    json base = json::object();
    for (std::size_t x = 0; x < c.variables.size(); ++x)
        base[c.variables[x]] = c.alphabet.format(ea.base[x]);
    j["base"] = base;
    json outs = json::object();
    for (const auto& [k, w] : ea.outputs)
        outs[k.key()] = c.alphabet.format(w);
    j["outputs"] = outs;
    return j;
}

} // namespace strcon
