#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "transducer.hpp"
#include "pda.hpp"

namespace strcon {

using json = nlohmann::json;

using Automaton = std::variant<Nfa, Pda, Transducer>;

inline json read_json_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in)
        throw InvalidInput("cannot open '" + path + "'");
    try {
        return json::parse(in);
    } catch (const json::exception& e) {
        throw InvalidInput(path + ": " + e.what());
    }
}

namespace detail {

inline const json& field(const json& j, const char* key, const std::string& where)
{
    if (!j.is_object() || !j.contains(key))
        throw InvalidInput(where + ": missing field '" + key + "'");
    return j.at(key);
}

inline int as_int(const json& j, const std::string& where)
{
    if (!j.is_number_integer())
        throw InvalidInput(where + ": expected an integer");
    return j.get<int>();
}

inline std::string as_str(const json& j, const std::string& where)
{
    if (!j.is_string())
        throw InvalidInput(where + ": expected a string");
    return j.get<std::string>();
}

inline Alphabet read_alphabet(const json& j, const std::string& where)
{
    if (!j.is_array())
        throw InvalidInput(where + ": expected an array of symbols");
    std::vector<std::string> syms;
    for (const auto& s : j)
        syms.push_back(as_str(s, where));
    try {
        return Alphabet(syms);
    } catch (const InvalidInput& e) {
        throw InvalidInput(where + ": " + e.what());
    }
}

inline json write_alphabet(const Alphabet& a) { return json(a.symbols()); }

} // namespace detail

inline Automaton automaton_from_json(const json& j, const std::string& where = "automaton")
{
    using namespace detail;
    try {
        std::string kind = as_str(field(j, "kind", where), where + ".kind");
        Alphabet al = read_alphabet(field(j, "alphabet", where), where + ".alphabet");
        Nfa base(al, as_int(field(j, "states", where), where + ".states"),
                 as_int(field(j, "initial", where), where + ".initial"));
        for (const auto& f : field(j, "finals", where))
            base.finals.push_back(as_int(f, where + ".finals"));
        const json& trs = field(j, "transitions", where);
        if (!trs.is_array())
            throw InvalidInput(where + ".transitions: expected an array");
        std::vector<Word> outs;
        std::vector<StackOp> ops;
        Alphabet stack;
        bool isPda = kind == "pda", isTrans = kind == "transducer";
        if (!isPda && !isTrans && kind != "nfa")
            throw InvalidInput(where + ".kind: unknown kind '" + kind + "'");
        if (isPda)
            stack = read_alphabet(field(j, "stack_alphabet", where), where + ".stack_alphabet");
        for (std::size_t i = 0; i < trs.size(); ++i) {
            std::string w = where + ".transitions[" + std::to_string(i) + "]";
            const json& t = trs[i];
            State s = as_int(field(t, "src", w), w + ".src");
            State d = as_int(field(t, "dst", w), w + ".dst");
            const json& lab = field(t, "label", w);
            Symbol l = lab.is_null() ? kEps : al.id(as_str(lab, w + ".label"));
            base.add(s, l, d);
            if (isTrans)
                outs.push_back(al.parse(as_str(field(t, "out", w), w + ".out")));
            if (isPda) {
                const json& op = t.contains("op") ? t.at("op") : json("nop");
                if (op.is_string() && op.get<std::string>() == "nop")
                    ops.push_back(StackOp::nop());
                else if (op.is_object() && op.contains("push"))
                    ops.push_back(StackOp::push(stack.id(as_str(op.at("push"), w + ".op.push"))));
                else if (op.is_object() && op.contains("pop"))
                    ops.push_back(StackOp::pop(stack.id(as_str(op.at("pop"), w + ".op.pop"))));
                else
                    throw InvalidInput(w + ".op: expected \"nop\", {\"push\":X} or {\"pop\":X}");
            }
        }
        if (isPda) {
            Pda p{base, stack, ops};
            p.validate();
            return p;
        }
        if (isTrans) {
            Transducer t{base, outs};
            t.validate();
            return t;
        }
        base.validate();
        return base;
    } catch (const InvalidInput& e) {
        std::string msg = e.what();
        if (msg.rfind(where, 0) != 0)
            msg = where + ": " + msg;
        throw InvalidInput(msg);
    } catch (const json::exception& e) {
        throw InvalidInput(where + ": " + e.what());
    }
}

namespace detail {

inline json base_json(const Nfa& a, const char* kind)
{
    json j;
    j["kind"] = kind;
    j["alphabet"] = write_alphabet(a.alphabet);
    j["states"] = a.states;
    j["initial"] = a.initial;
    j["finals"] = a.finals;
    json trs = json::array();
    for (const auto& t : a.transitions) {
        json x;
        x["src"] = t.src;
        x["dst"] = t.dst;
        x["label"] = t.label == kEps ? json(nullptr) : json(a.alphabet.name(t.label));
        trs.push_back(x);
    }
    j["transitions"] = trs;
    return j;
}

} // namespace detail

inline json to_json(const Nfa& a) { return detail::base_json(a, "nfa"); }

inline json to_json(const Transducer& t)
{
    json j = detail::base_json(t.base, "transducer");
    for (std::size_t i = 0; i < t.outputs.size(); ++i)
        j["transitions"][i]["out"] = t.base.alphabet.format(t.outputs[i]);
    return j;
}

inline json to_json(const Pda& p)
{
    json j = detail::base_json(p.base, "pda");
    j["stack_alphabet"] = detail::write_alphabet(p.stack);
    for (std::size_t i = 0; i < p.ops.size(); ++i) {
        const auto& op = p.ops[i];
        if (op.kind == OpKind::Nop)
            j["transitions"][i]["op"] = "nop";
        else
            j["transitions"][i]["op"] = {{op.kind == OpKind::Push ? "push" : "pop", p.stack.name(op.symbol)}};
    }
    return j;
}

inline json to_json(const Automaton& a)
{
    return std::visit([](const auto& x) { return to_json(x); }, a);
}

} // namespace strcon
