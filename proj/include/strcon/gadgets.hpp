#pragma once

// Counting machinery: the exponential counting PDAs, per-bit counter DFAs, the
// three-state PDA and certificates built from bounded configuration graphs.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "automata/cfg.hpp"
#include "automata/json_io.hpp"
#include "automata/nfa.hpp"
#include "automata/pda.hpp"

namespace strcon {

inline const std::vector<std::string>& counter_tokens()
{
    static const std::vector<std::string> t{"0", "1", "inc", "dec"};
    return t;
}

struct GadgetSpec {
    std::string kind; // fig2, fig3, bitdfa, bitdfa_strict, fig5, single_word_family
    int n = 1;        // n, or l for the bit-DFA kinds
    std::vector<std::string> gamma2{"a"};
    int bitIndex = 0;
};

namespace detail {

inline void check_gamma2(const std::vector<std::string>& g, bool counterAlphabet)
{
    if (g.empty())
        throw InvalidInput("gadget: gamma2 must be nonempty");
    std::set<std::string> seen;
    for (const auto& s : g) {
        if (!seen.insert(s).second)
            throw InvalidInput("gadget: duplicate gamma2 symbol '" + s + "'");
        if (counterAlphabet && std::count(counter_tokens().begin(), counter_tokens().end(), s))
            throw InvalidInput("gadget: gamma2 symbol '" + s + "' collides with the counter alphabet");
    }
}

inline void check_positive(int v, const char* what)
{
    if (v < 1)
        throw InvalidInput(std::string(what) + " must be at least 1");
}

// Shared layout of Figs. 2 and 3: push_h = h, switch_h = n+1+h, pop_h after that.
inline Pda counting_layout(int n, const std::vector<std::string>& gamma2, bool plus)
{
    check_positive(n, "counting_pda: n");
    check_gamma2(gamma2, false);
    Pda p;
    const int switches = plus ? n + 1 : n;
    p.base = Nfa(Alphabet(gamma2), (n + 1) + switches + (n + 1), 0);
    p.stack = Alphabet({"0", "1"});
    auto push = [](int h) { return h; };
    auto sw = [&](int h) { return n + 1 + h; };
    auto pop = [&](int h) { return n + 1 + switches + h; };
    p.base.finals = {pop(0)};
    for (int h = 0; h < n; ++h) {
        p.add(push(h), kEps, StackOp::push(0), push(h + 1));
        p.add(sw(h), kEps, StackOp::push(1), push(h + 1));
    }
    for (int h = 1; h <= n; ++h) {
        p.add(pop(h), kEps, StackOp::pop(0), sw(h - 1));
        p.add(pop(h), kEps, StackOp::pop(1), pop(h - 1));
    }
    for (Symbol g = 0; g < static_cast<Symbol>(gamma2.size()); ++g) {
        if (plus) {
            p.add(push(n), g, StackOp::nop(), sw(n));
            p.add(sw(n), g, StackOp::nop(), pop(n));
        } else {
            p.add(push(n), g, StackOp::nop(), pop(n));
        }
    }
    return p;
}

} // namespace detail

// 3n+2 states, language (gamma2)^{2^n}.
inline Pda counting_pda(int n, const std::vector<std::string>& gamma2 = {"a"})
{
    return detail::counting_layout(n, gamma2, false);
}

// 3n+3 states, language (gamma2)^{2^{n+1}}.
inline Pda counting_pda_plus(int n, const std::vector<std::string>& gamma2 = {"a"})
{
    return detail::counting_layout(n, gamma2, true);
}

inline Alphabet counter_alphabet(const std::vector<std::string>& gamma2)
{
    detail::check_gamma2(gamma2, true);
    auto s = counter_tokens();
    s.insert(s.end(), gamma2.begin(), gamma2.end());
    return Alphabet(s);
}

namespace detail {

enum Suffix { Both = 0, All0 = 1, All1 = 2, Mixed = 3 };

struct BitDfaRules {
    bool freeStart = false;                          // bit i of the first number unconstrained
    std::function<bool(int, int)> final;             // (bit value, suffix class) at a number's end
    std::function<bool(Symbol, int, int)> allowed;   // operator after a number with (bit, class)
};

// DFA for bit i (1-based, most significant first) of l-bit numbers separated by operators.
// It tracks the position inside the current number, the expected value of bit i and
// whether the bits right of i are all 0 / all 1.
inline Nfa bit_dfa(int ell, int i, const Alphabet& al, const std::vector<Symbol>& ops, Symbol inc, Symbol dec,
                   const BitDfaRules& rules)
{
    const Symbol zero = al.id("0"), one = al.id("1");
    using Key = std::tuple<int, int, int>; // (expected bit or -1, position 1..l+1, suffix class)
    std::map<Key, State> ids;
    std::vector<Key> keys;
    Nfa a(al, 0);
    auto get = [&](Key k) {
        auto it = ids.find(k);
        if (it != ids.end())
            return it->second;
        State s = a.add_state();
        ids.emplace(k, s);
        keys.push_back(k);
        return s;
    };
    get({rules.freeStart ? -1 : 0, 1, Both});
    for (std::size_t h = 0; h < keys.size(); ++h) {
        auto [e, p, cls] = keys[h];
        State s = static_cast<State>(h);
        if (p <= ell) {
            for (int b = 0; b < 2; ++b) {
                Symbol letter = b ? one : zero;
                if (p < i) {
                    a.add(s, letter, get({e, p + 1, Both}));
                } else if (p == i) {
                    if (e < 0 || e == b)
                        a.add(s, letter, get({b, p + 1, Both}));
                } else {
                    int nc = cls == Both ? (b ? All1 : All0)
                                         : cls == (b ? All1 : All0) ? cls : Mixed;
                    a.add(s, letter, get({e, p + 1, nc}));
                }
            }
            continue;
        }
        if (rules.final(e, cls))
            a.finals.push_back(s);
        for (Symbol o : ops) {
            if (!rules.allowed(o, e, cls))
                continue;
            bool toggle = (o == inc && (cls == Both || cls == All1)) || (o == dec && (cls == Both || cls == All0));
            a.add(s, o, get({e ^ static_cast<int>(toggle), 1, Both}));
        }
    }
    std::sort(a.finals.begin(), a.finals.end());
    return a;
}

} // namespace detail

// One DFA per bit. Non-strict: the intersection is L_l. Strict: start at 0^l, end at 0^l,
// inc after 1^l and dec after 0^l removed from the first DFA (L'_l). With gateGamma2 the
// first DFA also allows gamma2 letters only after 1^l.
inline std::vector<Nfa> bit_dfas(int ell, const std::vector<std::string>& gamma2, bool strict, bool gateGamma2 = false)
{
    detail::check_positive(ell, "bit_dfas: l");
    Alphabet al = counter_alphabet(gamma2);
    const Symbol inc = al.id("inc"), dec = al.id("dec");
    std::vector<Symbol> ops{inc, dec};
    for (const auto& g : gamma2)
        ops.push_back(al.id(g));
    std::vector<Nfa> out;
    for (int i = 1; i <= ell; ++i) {
        detail::BitDfaRules r;
        r.freeStart = !strict;
        if (strict)
            r.final = [](int e, int cls) { return e == 0 && (cls == detail::Both || cls == detail::All0); };
        else
            r.final = [](int, int) { return true; };
        const bool first = i == 1;
        r.allowed = [=](Symbol o, int e, int cls) {
            if (!strict || !first)
                return true;
            bool ones = e == 1 && (cls == detail::Both || cls == detail::All1);
            bool zeros = e == 0 && (cls == detail::Both || cls == detail::All0);
            if (o == inc)
                return !ones;
            if (o == dec)
                return !zeros;
            return !gateGamma2 || ones;
        };
        out.push_back(detail::bit_dfa(ell, i, al, ops, inc, dec, r));
    }
    return out;
}

// push = 0, switch = 1, pop = 2; initial push, final pop.
inline Pda three_state_pda(const std::vector<std::string>& gamma2 = {"a"})
{
    Alphabet al = counter_alphabet(gamma2);
    Pda p;
    p.base = Nfa(al, 3, 0);
    p.base.finals = {2};
    p.stack = Alphabet({"0", "1"});
    const Symbol zero = al.id("0"), one = al.id("1"), inc = al.id("inc"), dec = al.id("dec");
    for (State s = 0; s < 3; ++s) {
        p.add(s, zero, StackOp::nop(), s);
        p.add(s, one, StackOp::nop(), s);
    }
    p.add(0, inc, StackOp::push(0), 0);
    p.add(1, inc, StackOp::push(1), 0);
    p.add(2, dec, StackOp::pop(1), 2);
    p.add(2, dec, StackOp::pop(0), 1);
    for (const auto& g : gamma2) {
        p.add(0, al.id(g), StackOp::nop(), 1);
        p.add(1, al.id(g), StackOp::nop(), 2);
    }
    return p;
}

// Intersection has the single word 0^n inc ... inc 1^n visiting every n-bit value once.
inline std::vector<Nfa> single_word_family(int n)
{
    detail::check_positive(n, "single_word_family: n");
    Alphabet al({"0", "1", "inc"});
    const Symbol inc = al.id("inc");
    std::vector<Nfa> out;
    for (int i = 1; i <= n; ++i) {
        detail::BitDfaRules r;
        r.final = [](int e, int cls) { return e == 1 && (cls == detail::Both || cls == detail::All1); };
        const bool first = i == 1;
        r.allowed = [=](Symbol, int e, int cls) {
            return !first || !(e == 1 && (cls == detail::Both || cls == detail::All1));
        };
        out.push_back(detail::bit_dfa(n, i, al, {inc}, inc, kEps, r));
    }
    return out;
}

// --- definitional languages ---

struct CounterWord {
    std::vector<int> numbers;     // values of n_0..n_k
    std::vector<std::string> ops; // o_1..o_k
};

// Splits a token sequence into l-bit numbers and operators; nullopt if not alternating.
inline std::optional<CounterWord> parse_counter_word(const std::vector<std::string>& toks, int ell)
{
    CounterWord cw;
    std::size_t pos = 0;
    while (true) {
        int v = 0;
        for (int b = 0; b < ell; ++b, ++pos) {
            if (pos >= toks.size() || (toks[pos] != "0" && toks[pos] != "1"))
                return std::nullopt;
            v = 2 * v + (toks[pos] == "1");
        }
        cw.numbers.push_back(v);
        if (pos == toks.size())
            return cw;
        if (toks[pos] == "0" || toks[pos] == "1")
            return std::nullopt;
        cw.ops.push_back(toks[pos++]);
    }
}

// Membership in L_l (strict = false) or L'_l (strict = true), evaluated from the definition.
inline bool in_counter_language(const std::vector<std::string>& toks, int ell, const std::vector<std::string>& gamma2,
                                bool strict, bool gateGamma2 = false)
{
    auto cw = parse_counter_word(toks, ell);
    if (!cw)
        return false;
    const long long mod = 1LL << ell, top = mod - 1;
    const auto& n = cw->numbers;
    if (strict && (n.front() != 0 || n.back() != 0))
        return false;
    for (std::size_t i = 0; i < cw->ops.size(); ++i) {
        const auto& o = cw->ops[i];
        long long prev = n[i], next;
        if (o == "inc") {
            if (strict && prev == top)
                return false;
            next = prev + 1;
        } else if (o == "dec") {
            if (strict && prev == 0)
                return false;
            next = prev - 1;
        } else if (std::count(gamma2.begin(), gamma2.end(), o)) {
            if (strict && gateGamma2 && prev != top)
                return false;
            next = prev;
        } else {
            return false;
        }
        if (((next % mod) + mod) % mod != n[i + 1])
            return false;
    }
    return true;
}

// All members of L_l / L'_l with at most maxLen tokens, generated from the definition.
inline std::vector<std::vector<std::string>> counter_language_members(int ell, const std::vector<std::string>& gamma2,
                                                                      bool strict, int maxLen, bool gateGamma2 = false)
{
    std::vector<std::string> ops{"inc", "dec"};
    ops.insert(ops.end(), gamma2.begin(), gamma2.end());
    const int mod = 1 << ell;
    auto bits = [&](int v) {
        std::vector<std::string> b;
        for (int k = ell - 1; k >= 0; --k)
            b.push_back((v >> k) & 1 ? "1" : "0");
        return b;
    };
    std::vector<std::vector<std::string>> out;
    std::vector<std::string> cur;
    std::function<void(int)> go = [&](int v) {
        if (!strict || v == 0)
            out.push_back(cur);
        if (static_cast<int>(cur.size()) + 1 + ell > maxLen)
            return;
        for (const auto& o : ops) {
            int next = v;
            if (o == "inc") {
                if (strict && v == mod - 1)
                    continue;
                next = (v + 1) % mod;
            } else if (o == "dec") {
                if (strict && v == 0)
                    continue;
                next = (v + mod - 1) % mod;
            } else if (strict && gateGamma2 && v != mod - 1) {
                continue;
            }
            auto b = bits(next);
            cur.push_back(o);
            cur.insert(cur.end(), b.begin(), b.end());
            go(next);
            cur.resize(cur.size() - 1 - static_cast<std::size_t>(ell));
        }
    };
    if (ell > maxLen)
        return out;
    for (int v = 0; v < (strict ? 1 : mod); ++v) {
        cur = bits(v);
        go(v);
    }
    return out;
}

inline std::vector<std::string> tokens_of(const Alphabet& al, const Word& w)
{
    std::vector<std::string> t;
    for (Symbol s : w)
        t.push_back(al.name(s));
    return t;
}

// The accepted run of counting_pda_plus with n = 2^l - 1 written as a counter word:
// the canonical member of L(three_state_pda) and the gated strict bit-DFAs.
inline Word counting_word(int ell, const std::vector<std::string>& gamma2 = {"a"})
{
    detail::check_positive(ell, "counting_word: l");
    Alphabet al = counter_alphabet(gamma2);
    const int n = (1 << ell) - 1;
    Word w;
    auto number = [&](int v) {
        for (int k = ell - 1; k >= 0; --k)
            w.push_back(al.id((v >> k) & 1 ? "1" : "0"));
    };
    const Symbol inc = al.id("inc"), dec = al.id("dec"), g = al.id(gamma2.front());
    // stack as a vector of bits; height = current value
    std::vector<int> stack;
    number(0);
    auto fill = [&] {
        while (static_cast<int>(stack.size()) < n) {
            stack.push_back(0);
            w.push_back(inc);
            number(static_cast<int>(stack.size()));
        }
    };
    fill();
    while (true) {
        // at full height: two gamma2 letters, each followed by the unchanged number
        for (int r = 0; r < 2; ++r) {
            w.push_back(g);
            number(n);
        }
        while (!stack.empty() && stack.back() == 1) {
            stack.pop_back();
            w.push_back(dec);
            number(static_cast<int>(stack.size()));
        }
        if (stack.empty())
            return w;
        stack.pop_back();
        w.push_back(dec);
        number(static_cast<int>(stack.size()));
        stack.push_back(1);
        w.push_back(inc);
        number(static_cast<int>(stack.size()));
        fill();
    }
}

// --- certificates ---

struct CountingCertificate {
    std::string kind;
    int param = 0;
    CountRange gamma2Count;
    int stackCap = 0;         // exploration cap (claimed height bound + 1)
    int heightBound = 0;      // claimed bound on reachable stack height
    int maxHeight = 0;        // highest stack actually reached
    std::size_t statesExplored = 0;
    long long expected = 0;
    bool certified = false;
};

namespace detail {

// Bounded configuration graph of p; Gamma2-count range over accepting paths.
inline CountingCertificate explore_counts(const Pda& p, const std::vector<Symbol>& marked, int heightBound,
                                          std::size_t budget)
{
    CountingCertificate cert;
    cert.heightBound = heightBound;
    cert.stackCap = heightBound + 1;
    PdaIndex idx(p);
    std::vector<char> isMarked(static_cast<std::size_t>(p.base.alphabet.size()), 0);
    for (Symbol s : marked)
        isMarked[s] = 1;
    std::map<Config, int> ids;
    std::vector<Config> nodes;
    std::vector<std::vector<std::pair<int, int>>> succ; // (target, weight)
    auto get = [&](const Config& c) {
        auto it = ids.find(c);
        if (it != ids.end())
            return it->second;
        if (nodes.size() >= budget)
            throw BudgetExceeded("verify_counting: configuration budget exceeded");
        int id = static_cast<int>(nodes.size());
        ids.emplace(c, id);
        nodes.push_back(c);
        succ.emplace_back();
        return id;
    };
    get(Config{p.base.initial});
    for (std::size_t h = 0; h < nodes.size(); ++h) {
        Config cur = nodes[h];
        cert.maxHeight = std::max(cert.maxHeight, static_cast<int>(cur.size()) - 1);
        for (int ti : idx.from[cur[0]]) {
            Config n = cur;
            if (!apply_op(p.ops[ti], n, cert.stackCap))
                continue;
            n[0] = p.base.transitions[ti].dst;
            const Symbol l = p.base.transitions[ti].label;
            int id = get(n);
            succ[h].push_back({id, l != kEps && isMarked[l] ? 1 : 0});
        }
    }
    cert.statesExplored = nodes.size();
    const int N = static_cast<int>(nodes.size());
    // co-reachability of accepting configurations
    std::vector<std::vector<int>> pred(static_cast<std::size_t>(N));
    for (int v = 0; v < N; ++v)
        for (auto [u, wgt] : succ[v])
            pred[u].push_back(v);
    std::vector<char> useful(static_cast<std::size_t>(N), 0);
    std::vector<int> todo;
    for (int v = 0; v < N; ++v)
        if (nodes[v].size() == 1 && p.base.is_final(nodes[v][0])) {
            useful[v] = 1;
            todo.push_back(v);
        }
    while (!todo.empty()) {
        int v = todo.back();
        todo.pop_back();
        for (int u : pred[v])
            if (!useful[u]) {
                useful[u] = 1;
                todo.push_back(u);
            }
    }
    if (!useful[0])
        return cert;
    // Tarjan SCCs over useful nodes (iterative)
    std::vector<int> comp(static_cast<std::size_t>(N), -1), low(static_cast<std::size_t>(N)),
        num(static_cast<std::size_t>(N), -1);
    std::vector<int> stack;
    std::vector<char> onStack(static_cast<std::size_t>(N), 0);
    int counter = 0, comps = 0;
    for (int root = 0; root < N; ++root) {
        if (!useful[root] || num[root] >= 0)
            continue;
        std::vector<std::pair<int, std::size_t>> call{{root, 0}};
        num[root] = low[root] = counter++;
        stack.push_back(root);
        onStack[root] = 1;
        while (!call.empty()) {
            auto& [v, k] = call.back();
            if (k < succ[v].size()) {
                int u = succ[v][k++].first;
                if (!useful[u])
                    continue;
                if (num[u] < 0) {
                    num[u] = low[u] = counter++;
                    stack.push_back(u);
                    onStack[u] = 1;
                    call.push_back({u, 0});
                } else if (onStack[u]) {
                    low[v] = std::min(low[v], num[u]);
                }
                continue;
            }
            if (low[v] == num[v]) {
                while (true) {
                    int u = stack.back();
                    stack.pop_back();
                    onStack[u] = 0;
                    comp[u] = comps;
                    if (u == v)
                        break;
                }
                ++comps;
            }
            int done = v;
            call.pop_back();
            if (!call.empty())
                low[call.back().first] = std::min(low[call.back().first], low[done]);
        }
    }
    // Tarjan numbers components in reverse topological order.
    const long long INF = -1;
    std::vector<long long> mn(static_cast<std::size_t>(comps), INF), mx(static_cast<std::size_t>(comps), INF);
    std::vector<char> inf(static_cast<std::size_t>(comps), 0);
    std::vector<std::vector<int>> members(static_cast<std::size_t>(comps));
    for (int v = 0; v < N; ++v)
        if (comp[v] >= 0)
            members[comp[v]].push_back(v);
    for (int cidx = 0; cidx < comps; ++cidx) {
        long long lo = INF, hi = INF;
        bool infinite = false;
        for (int v : members[cidx]) {
            if (nodes[v].size() == 1 && p.base.is_final(nodes[v][0])) {
                lo = lo == INF ? 0 : std::min(lo, 0LL);
                hi = std::max(hi, 0LL);
            }
            for (auto [u, wgt] : succ[v]) {
                if (!useful[u])
                    continue;
                if (comp[u] == cidx) {
                    if (wgt)
                        infinite = true;
                    continue;
                }
                if (mn[comp[u]] == INF)
                    continue;
                lo = lo == INF ? mn[comp[u]] + wgt : std::min(lo, mn[comp[u]] + wgt);
                hi = std::max(hi, mx[comp[u]] + wgt);
                infinite = infinite || inf[comp[u]];
            }
        }
        // weights inside the component are all 0, so every member shares its values
        mn[cidx] = lo;
        mx[cidx] = hi;
        inf[cidx] = infinite;
    }
    int c0 = comp[0];
    cert.gamma2Count.empty = mn[c0] == INF;
    cert.gamma2Count.min = mn[c0];
    cert.gamma2Count.max = mx[c0];
    cert.gamma2Count.infinite = inf[c0];
    return cert;
}

} // namespace detail

// kind: fig2 / fig3 (param n) or fig5 (param l, product with the gated strict bit-DFAs).
inline CountingCertificate verify_counting(const std::string& kind, int param,
                                           const std::vector<std::string>& gamma2 = {"a"},
                                           std::size_t budget = 4000000)
{
    detail::check_positive(param, "verify_counting: parameter");
    CountingCertificate cert;
    if (kind == "fig2" || kind == "fig3") {
        Pda p = kind == "fig2" ? counting_pda(param, gamma2) : counting_pda_plus(param, gamma2);
        std::vector<Symbol> all;
        for (Symbol s = 0; s < p.base.alphabet.size(); ++s)
            all.push_back(s);
        cert = detail::explore_counts(p, all, param, budget);
        cert.expected = 1LL << (kind == "fig2" ? param : param + 1);
    } else if (kind == "fig5") {
        if (param > 4)
            throw BudgetExceeded("verify_counting: l > 4 exceeds the configuration budget");
        Pda p = pda_product_nfas(three_state_pda(gamma2), bit_dfas(param, gamma2, true, true));
        std::vector<Symbol> marked;
        for (const auto& g : gamma2)
            marked.push_back(p.base.alphabet.id(g));
        cert = detail::explore_counts(p, marked, (1 << param) - 1, budget);
        cert.expected = 1LL << (1 << param);
    } else {
        throw InvalidInput("verify_counting: unknown kind '" + kind + "'");
    }
    cert.kind = kind;
    cert.param = param;
    cert.certified = !cert.gamma2Count.empty && !cert.gamma2Count.infinite &&
                     cert.gamma2Count.min == cert.expected && cert.gamma2Count.max == cert.expected &&
                     cert.maxHeight <= cert.heightBound;
    return cert;
}

inline json to_json(const CountingCertificate& c)
{
    json j = {{"kind", c.kind},
              {"param", c.param},
              {"stack_cap", c.stackCap},
              {"height_bound", c.heightBound},
              {"max_height", c.maxHeight},
              {"states_explored", c.statesExplored},
              {"expected", c.expected},
              {"certified", c.certified}};
    if (c.gamma2Count.empty)
        j["gamma2_count"] = nullptr;
    else
        j["gamma2_count"] = {{"min", c.gamma2Count.min},
                             {"max", c.gamma2Count.infinite ? json("inf") : json(c.gamma2Count.max)}};
    return j;
}

struct FamilyReport {
    int n = 0;
    std::size_t words = 0; // members of the intersection up to the expected length + 1
    Word word;
    long long incCount = 0;
    long long printedCount = 0; // 2^n as stated
    bool discrepancy = false;
};

inline FamilyReport certify_family(int n)
{
    auto dfas = single_word_family(n);
    Nfa prod = trim(nfa_product(dfas));
    const long long values = 1LL << n;
    const int len = static_cast<int>(values * n + (values - 1));
    if (len > 5000)
        throw BudgetExceeded("certify_family: word too long");
    auto ws = enumerate_words(prod, len + 1, 2);
    FamilyReport r;
    r.n = n;
    r.words = ws.size();
    if (!ws.empty()) {
        r.word = ws.front();
        Symbol inc = prod.alphabet.id("inc");
        r.incCount = std::count(r.word.begin(), r.word.end(), inc);
    }
    r.printedCount = values;
    r.discrepancy = r.incCount != r.printedCount;
    return r;
}

inline json to_json(const FamilyReport& r, const Alphabet& al)
{
    return {{"kind", "family"},
            {"param", r.n},
            {"words", r.words},
            {"word", al.format(r.word)},
            {"inc_count", r.incCount},
            {"printed_inc_count", r.printedCount},
            {"discrepancy", r.discrepancy}};
}

// Automaton selected by a GadgetSpec (bit-DFA kinds return the DFA for bitIndex).
inline Automaton build_gadget(const GadgetSpec& s)
{
    if (s.kind == "fig2")
        return counting_pda(s.n, s.gamma2);
    if (s.kind == "fig3")
        return counting_pda_plus(s.n, s.gamma2);
    if (s.kind == "fig5")
        return three_state_pda(s.gamma2);
    if (s.kind == "bitdfa" || s.kind == "bitdfa_strict") {
        auto d = bit_dfas(s.n, s.gamma2, s.kind == "bitdfa_strict");
        if (s.bitIndex < 0 || s.bitIndex >= static_cast<int>(d.size()))
            throw InvalidInput("gadget: bit index out of range");
        return d[s.bitIndex];
    }
    if (s.kind == "single_word_family" || s.kind == "family") {
        auto d = single_word_family(s.n);
        if (s.bitIndex < 0 || s.bitIndex >= static_cast<int>(d.size()))
            throw InvalidInput("gadget: bit index out of range");
        return d[s.bitIndex];
    }
    throw InvalidInput("gadget: unknown kind '" + s.kind + "'");
}

} // namespace strcon
