#pragma once

// Bounded PCP to string constraints, and the cyclic concatenation-only PCP encoding.

#include <algorithm>
#include <map>
#include <string>
#include <vector>

#include "constraints/constraint.hpp"
#include "gadgets.hpp"

namespace strcon {

struct PcpInstance {
    Alphabet sigma1, sigma2;
    std::map<Symbol, Word> f, g; // keyed by sigma1 symbol, images over sigma2
    int ell = 0;                 // 0 when absent (plain PCP)

    void validate() const
    {
        if (sigma1.size() == 0 || sigma2.size() == 0)
            throw InvalidInput("pcp: sigma1 and sigma2 must be nonempty");
        for (const auto& s : sigma1.symbols())
            if (sigma2.contains(s))
                throw InvalidInput("pcp: symbol '" + s + "' in both sigma1 and sigma2");
        for (Symbol a = 0; a < sigma1.size(); ++a) {
            if (!f.count(a) || !g.count(a))
                throw InvalidInput("pcp: f and g must be defined on '" + sigma1.name(a) + "'");
            sigma2.check(f.at(a));
            sigma2.check(g.at(a));
        }
        if (ell < 0)
            throw InvalidInput("pcp: ell must be positive");
    }

    Word apply(const std::map<Symbol, Word>& h, const Word& w) const
    {
        Word out;
        for (Symbol a : w) {
            const Word& img = h.at(a);
            out.insert(out.end(), img.begin(), img.end());
        }
        return out;
    }
};

inline PcpInstance pcp_from_json(const json& j)
{
    PcpInstance p;
    auto syms = [&](const char* k) {
        if (!j.contains(k) || !j[k].is_array())
            throw InvalidInput(std::string("pcp: '") + k + "' must be an array of symbols");
        return Alphabet(j[k].get<std::vector<std::string>>());
    };
    p.sigma1 = syms("sigma1");
    p.sigma2 = syms("sigma2");
    for (const char* k : {"f", "g"}) {
        if (!j.contains(k) || !j[k].is_object())
            throw InvalidInput(std::string("pcp: '") + k + "' must be an object");
        auto& h = std::string(k) == "f" ? p.f : p.g;
        for (auto it = j[k].begin(); it != j[k].end(); ++it)
            h[p.sigma1.id(it.key())] = p.sigma2.parse(it.value().get<std::string>());
    }
    if (j.contains("ell")) {
        if (!j["ell"].is_number_integer() || j["ell"].get<int>() < 1)
            throw InvalidInput("pcp: 'ell' must be a positive integer");
        p.ell = j["ell"].get<int>();
    }
    p.validate();
    return p;
}

inline json to_json(const PcpInstance& p)
{
    json j = {{"sigma1", p.sigma1.symbols()}, {"sigma2", p.sigma2.symbols()}};
    for (const char* k : {"f", "g"}) {
        json h = json::object();
        for (const auto& [a, w] : std::string(k) == "f" ? p.f : p.g)
            h[p.sigma1.name(a)] = p.sigma2.format(w);
        j[k] = h;
    }
    if (p.ell > 0)
        j["ell"] = p.ell;
    return j;
}

// Names of the counter tokens 0, 1, inc, dec and the marker # inside the reduction
// alphabet; tokens clashing with PCP letters get primes appended.
struct ReductionTokens {
    std::map<std::string, std::string> rename; // gadget token -> reduction token
    Alphabet sigma;                            // sigma1, sigma2, counter tokens, marker

    const std::string& operator[](const std::string& k) const { return rename.at(k); }
};

namespace detail {

inline ReductionTokens reduction_tokens(const PcpInstance& p)
{
    ReductionTokens t;
    std::vector<std::string> syms = p.sigma1.symbols();
    for (const auto& s : p.sigma2.symbols())
        syms.push_back(s);
    for (std::string k : {"0", "1", "inc", "dec", "#"}) {
        std::string name = k;
        while (std::count(syms.begin(), syms.end(), name))
            name += "'";
        t.rename[k] = name;
        syms.push_back(name);
    }
    t.sigma = Alphabet(syms);
    return t;
}

// Moves an automaton over counter tokens and gamma2 names onto the reduction alphabet.
inline Nfa onto_reduction(const Nfa& a, const ReductionTokens& t)
{
    std::vector<std::string> names;
    for (const auto& s : a.alphabet.symbols())
        names.push_back(t.rename.count(s) ? t.rename.at(s) : s);
    Nfa renamed = a;
    renamed.alphabet = Alphabet(names);
    return relabel(renamed, t.sigma);
}

inline Pda onto_reduction(const Pda& p, const ReductionTokens& t)
{
    Pda r = p;
    r.base = onto_reduction(p.base, t);
    return r;
}

// Gadget gamma2 names must not collide with the counter tokens of the gadget alphabet, so
// reduction letters are passed under placeholder names and renamed afterwards.
inline std::vector<std::string> placeholders(const std::vector<std::string>& letters, ReductionTokens& t)
{
    std::vector<std::string> out;
    for (const auto& l : letters) {
        std::string ph = "@" + l;
        t.rename[ph] = l;
        out.push_back(ph);
    }
    return out;
}

} // namespace detail

// Mem(x_f): push w, skip #'s, pop letter a while reading h(a); Gamma1 self-loops everywhere.
inline Pda lf_pda(const PcpInstance& p, const std::map<Symbol, Word>& h, const ReductionTokens& t)
{
    const Alphabet& S = t.sigma;
    Pda r;
    r.base = Nfa(S, 3, 0);
    r.base.finals = {2};
    r.stack = p.sigma1;
    for (Symbol a = 0; a < p.sigma1.size(); ++a)
        r.add(0, S.id(p.sigma1.name(a)), StackOp::push(a), 0);
    r.add(0, kEps, StackOp::nop(), 1);
    r.add(1, S.id(t["#"]), StackOp::nop(), 1);
    r.add(1, kEps, StackOp::nop(), 2);
    for (Symbol a = 0; a < p.sigma1.size(); ++a) {
        const Word& img = h.at(a);
        if (img.empty()) {
            r.add(2, kEps, StackOp::pop(a), 2);
            continue;
        }
        State prev = 2;
        for (std::size_t k = 0; k < img.size(); ++k) {
            State next = k + 1 == img.size() ? 2 : r.base.add_state();
            r.add(prev, S.id(p.sigma2.name(img[k])), k == 0 ? StackOp::pop(a) : StackOp::nop(), next);
            prev = next;
        }
    }
    for (State s = 0; s < r.base.states; ++s)
        for (const char* k : {"0", "1", "inc", "dec"})
            r.add(s, S.id(t[k]), StackOp::nop(), s);
    return r;
}

struct Reduction {
    StringConstraint constraint;
    ReductionTokens tokens;
};

// Variables x0, x1, x2, xf, xg; relations x0 <= T_i(x1) (i = 1..l), x0 <= T_i(x2),
// x1 <= xf, xf <= xg, xg <= x2.
inline Reduction reduce_2ebpcp_full(const PcpInstance& p)
{
    p.validate();
    if (p.ell < 1)
        throw InvalidInput("reduce_2ebpcp: 'ell' is required");
    Reduction red;
    auto& t = red.tokens;
    t = detail::reduction_tokens(p);
    const Alphabet& S = t.sigma;
    const auto s1 = p.sigma1.symbols(), s2 = p.sigma2.symbols();

    // P2 = P1 restricted to Sigma1* #* on its gamma2 letters
    auto g1 = s1;
    g1.push_back(t["#"]);
    auto ph1 = detail::placeholders(g1, t);
    Pda P1 = detail::onto_reduction(three_state_pda(ph1), t);
    Nfa shape(S, 2, 0);
    shape.finals = {0, 1};
    for (const char* k : {"0", "1", "inc", "dec"})
        for (State s = 0; s < 2; ++s)
            shape.add(s, S.id(t[k]), s);
    for (const auto& a : s1)
        shape.add(0, S.id(a), 0);
    shape.add(0, S.id(t["#"]), 1);
    shape.add(1, S.id(t["#"]), 1);
    Pda P2 = pda_product_nfas(P1, {shape});
    auto ph2 = detail::placeholders(s2, t);
    Pda P3 = detail::onto_reduction(three_state_pda(ph2), t);
    Pda P4 = pda_concat(P2, P3);

    StringConstraint& c = red.constraint;
    c.alphabet = S;
    c.add_variable("x0", epsilon_nfa(S));
    c.add_variable("x1", P4);
    c.add_variable("x2", P4);
    c.add_variable("xf", lf_pda(p, p.f, t));
    c.add_variable("xg", lf_pda(p, p.g, t));

    auto all = g1;
    all.insert(all.end(), s2.begin(), s2.end());
    auto ph = detail::placeholders(all, t);
    std::vector<Transducer> T;
    for (const auto& a : bit_dfas(p.ell, ph, true, true))
        T.push_back(erasing_transducer(detail::onto_reduction(a, t)));
    for (int x : {1, 2})
        for (const auto& ti : T)
            c.relations.push_back({0, {{x, ti, false}}});
    Transducer id = identity_transducer(S);
    c.relations.push_back({1, {{3, id, true}}});
    c.relations.push_back({3, {{4, id, true}}});
    c.relations.push_back({4, {{2, id, true}}});
    return red;
}

inline StringConstraint reduce_2ebpcp(const PcpInstance& p) { return reduce_2ebpcp_full(p).constraint; }

// Counter word for l whose gamma2 slots spell `letters` in order (and without the final
// number when `dropLast`).
inline Word counting_word_with(int ell, const std::vector<Symbol>& letters, const ReductionTokens& t, bool dropLast)
{
    Alphabet al = counter_alphabet({"a"});
    Word base = counting_word(ell, {"a"});
    const Alphabet& S = t.sigma;
    Word out;
    std::size_t k = 0;
    for (Symbol s : base) {
        if (al.name(s) == "a")
            out.push_back(letters.at(k++));
        else
            out.push_back(S.id(t[al.name(s)]));
    }
    if (dropLast)
        out.resize(out.size() - static_cast<std::size_t>(ell));
    return out;
}

// Satisfying assignment for a solution w: every non-trivial variable gets a counter word
// whose gamma2 projection is w^r #^m f(w).
inline ExtendedAssignment witness_2ebpcp(const PcpInstance& p, const Word& solution)
{
    auto red = reduce_2ebpcp_full(p);
    const auto& t = red.tokens;
    const Alphabet& S = t.sigma;
    p.sigma1.check(solution);
    Word fw = p.apply(p.f, solution), gw = p.apply(p.g, solution);
    if (fw != gw)
        throw InvalidInput("witness_2ebpcp: f(w) != g(w)");
    if (p.ell > 4)
        throw BudgetExceeded("witness_2ebpcp: l > 4 gives words beyond the supported size");
    const std::size_t target = std::size_t{1} << (1u << p.ell);
    if (fw.size() != target)
        throw InvalidInput("witness_2ebpcp: |f(w)| = " + std::to_string(fw.size()) + ", expected " +
                           std::to_string(target));
    if (solution.size() > target)
        throw InvalidInput("witness_2ebpcp: solution longer than the counting width");
    std::vector<Symbol> first, second;
    for (auto it = solution.rbegin(); it != solution.rend(); ++it)
        first.push_back(S.id(p.sigma1.name(*it)));
    while (first.size() < target)
        first.push_back(S.id(t["#"]));
    for (Symbol b : fw)
        second.push_back(S.id(p.sigma2.name(b)));
    Word w = counting_word_with(p.ell, first, t, true);
    Word w2 = counting_word_with(p.ell, second, t, false);
    w.insert(w.end(), w2.begin(), w2.end());
    ExtendedAssignment ea;
    ea.base = {Word{}, w, w, w, w};
    const auto& c = red.constraint;
    for (const auto& o : c.occurrences())
        ea.outputs[o] = c.occurrence(o).identity ? w : Word{};
    return ea;
}

// Reads every letter of the alphabet and may insert letters of `inserted` anywhere.
inline Transducer insertion_transducer(const Alphabet& al, const std::vector<Symbol>& inserted)
{
    Transducer t;
    t.base = Nfa(al, 1, 0);
    t.base.finals = {0};
    for (Symbol a = 0; a < al.size(); ++a)
        t.add(0, a, {a}, 0);
    for (Symbol x : inserted)
        t.add(0, kEps, {x}, 0);
    return t;
}

// Variables u, v, i, s with L_u = (a f(a))*, L_v = (a g(a))*, L_i = sigma1+, L_s = sigma2*.
// The eight relations form a cycle through u and s.
inline StringConstraint concat_undecidable_instance(const PcpInstance& p)
{
    p.validate();
    auto syms = p.sigma1.symbols();
    for (const auto& s : p.sigma2.symbols())
        syms.push_back(s);
    Alphabet S(syms);
    auto s1 = [&](Symbol a) { return S.id(p.sigma1.name(a)); };
    auto s2 = [&](Symbol a) { return S.id(p.sigma2.name(a)); };
    auto pairs = [&](const std::map<Symbol, Word>& h) {
        Nfa a(S, 1, 0);
        a.finals = {0};
        for (Symbol x = 0; x < p.sigma1.size(); ++x) {
            State prev = a.add_state();
            a.add(0, s1(x), prev);
            const Word& img = h.at(x);
            if (img.empty()) {
                a.add(prev, kEps, 0);
                continue;
            }
            for (std::size_t k = 0; k < img.size(); ++k) {
                State next = k + 1 == img.size() ? 0 : a.add_state();
                a.add(prev, s2(img[k]), next);
                prev = next;
            }
        }
        return a;
    };
    Nfa li(S, 2, 0), ls(S, 1, 0);
    li.finals = {1};
    ls.finals = {0};
    std::vector<Symbol> in1, in2;
    for (Symbol x = 0; x < p.sigma1.size(); ++x) {
        li.add(0, s1(x), 1);
        li.add(1, s1(x), 1);
        in1.push_back(s1(x));
    }
    for (Symbol b = 0; b < p.sigma2.size(); ++b) {
        ls.add(0, s2(b), 0);
        in2.push_back(s2(b));
    }
    StringConstraint c;
    c.alphabet = S;
    int u = c.add_variable("u", pairs(p.f));
    int v = c.add_variable("v", pairs(p.g));
    int i = c.add_variable("i", li);
    int s = c.add_variable("s", ls);
    Transducer id = identity_transducer(S), t1 = insertion_transducer(S, in1), t2 = insertion_transducer(S, in2);
    for (int x : {u, v}) {
        c.relations.push_back({i, {{x, id, true}}});
        c.relations.push_back({s, {{x, id, true}}});
        c.relations.push_back({x, {{s, t1, false}}});
        c.relations.push_back({x, {{i, t2, false}}});
    }
    return c;
}

} // namespace strcon
