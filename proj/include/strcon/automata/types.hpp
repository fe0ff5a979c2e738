#pragma once

#include <optional>
#include <string>
#include <vector>

#include "../alphabet.hpp"
#include "../error.hpp"

namespace strcon {

using State = int;

struct Transition {
    State src = 0;
    Symbol label = kEps;
    State dst = 0;
};

struct Nfa {
    Alphabet alphabet;
    int states = 1;
    State initial = 0;
    std::vector<State> finals;
    std::vector<Transition> transitions;

    Nfa() = default;
    Nfa(Alphabet a, int n, State init = 0) : alphabet(std::move(a)), states(n), initial(init) {}

    int add_state() { return states++; }
    void add(State s, Symbol l, State d) { transitions.push_back({s, l, d}); }

    bool is_final(State s) const
    {
        for (State f : finals)
            if (f == s)
                return true;
        return false;
    }

    void validate() const
    {
        if (states < 1)
            throw InvalidInput("automaton needs at least one state");
        if (initial < 0 || initial >= states)
            throw InvalidInput("initial state out of range");
        for (State f : finals)
            if (f < 0 || f >= states)
                throw InvalidInput("final state out of range");
        for (const auto& t : transitions) {
            if (t.src < 0 || t.src >= states || t.dst < 0 || t.dst >= states)
                throw InvalidInput("transition endpoint out of range");
            if (t.label != kEps && (t.label < 0 || t.label >= alphabet.size()))
                throw InvalidInput("transition label not in alphabet");
        }
    }
};

struct Transducer {
    Nfa base;
    std::vector<Word> outputs; // parallel to base.transitions

    void add(State s, Symbol in, const Word& out, State d)
    {
        base.add(s, in, d);
        outputs.push_back(out);
    }

    void validate() const
    {
        base.validate();
        if (outputs.size() != base.transitions.size())
            throw InvalidInput("transducer: output missing for some transition");
        for (const auto& o : outputs)
            base.alphabet.check(o);
    }
};

enum class OpKind { Nop, Push, Pop };

struct StackOp {
    OpKind kind = OpKind::Nop;
    int symbol = -1;

    static StackOp nop() { return {}; }
    static StackOp push(int g) { return {OpKind::Push, g}; }
    static StackOp pop(int g) { return {OpKind::Pop, g}; }
};

struct Pda {
    Nfa base;
    Alphabet stack;
    std::vector<StackOp> ops; // parallel to base.transitions

    void add(State s, Symbol l, StackOp op, State d)
    {
        base.add(s, l, d);
        ops.push_back(op);
    }

    // States plus stack symbols.
    int state_size() const { return base.states + stack.size(); }

    void validate() const
    {
        base.validate();
        if (ops.size() != base.transitions.size())
            throw InvalidInput("pda: stack operation missing for some transition");
        for (const auto& op : ops)
            if (op.kind != OpKind::Nop && (op.symbol < 0 || op.symbol >= stack.size()))
                throw InvalidInput("pda: stack symbol out of range");
    }
};

// Chomsky normal form; S -> eps allowed only when S never occurs on a right-hand side.
struct Cfg {
    Alphabet alphabet;
    int nonterminals = 1;
    int start = 0;
    struct Binary {
        int lhs, left, right;
    };
    struct Terminal {
        int lhs;
        Symbol letter;
    };
    std::vector<Binary> binary;
    std::vector<Terminal> terminal;
    bool startEpsilon = false;
    std::vector<std::string> labels; // provenance per nonterminal

    void validate() const
    {
        if (start < 0 || start >= nonterminals)
            throw InvalidInput("cfg: start symbol out of range");
        for (const auto& r : binary) {
            for (int x : {r.lhs, r.left, r.right})
                if (x < 0 || x >= nonterminals)
                    throw InvalidInput("cfg: nonterminal out of range");
            if (startEpsilon && (r.left == start || r.right == start))
                throw InvalidInput("cfg: not in CNF (start symbol on a right-hand side with S -> eps)");
        }
        for (const auto& r : terminal) {
            if (r.lhs < 0 || r.lhs >= nonterminals)
                throw InvalidInput("cfg: nonterminal out of range");
            if (r.letter < 0 || r.letter >= alphabet.size())
                throw InvalidInput("cfg: not in CNF (bad terminal rule)");
        }
    }
};

struct CountRange {
    bool empty = true;
    long long min = 0;
    bool infinite = false;
    long long max = 0;

    bool operator==(const CountRange& o) const
    {
        if (empty || o.empty)
            return empty == o.empty;
        return min == o.min && infinite == o.infinite && (infinite || max == o.max);
    }
};

} // namespace strcon
