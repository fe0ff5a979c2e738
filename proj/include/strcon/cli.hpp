#pragma once

// Command-line front end. Reports go to `out` as JSON, diagnostics to `err`.

#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "closures.hpp"
#include "constraints/bounds.hpp"
#include "constraints/verify.hpp"
#include "gadgets.hpp"
#include "reductions.hpp"
#include "solver/shrink.hpp"
#include "solver/solve.hpp"

namespace strcon {

enum ExitCode { kExitOk = 0, kExitNo = 1, kExitInvalid = 2, kExitCyclic = 3, kExitBudget = 4 };

inline const char* cli_grammar()
{
    return "Grammar:\n"
           "  solve   --constraint F --bound N [--trace]\n"
           "  verify  --constraint F --assignment F [--extended]\n"
           "  shrink  --constraint F --assignment F --mode reg|cf\n"
           "  gadget  --kind fig2|fig3|bitdfa|fig5|family --n N [--strict] [--gamma2 a,b]\n"
           "  certify --kind fig2|fig3|fig5|family --n N\n"
           "  reduce  --pcp F [--concat-undecidable]\n"
           "  closure --kind down|up|parikh --n N\n"
           "  closure --kind down|up|parikh --automaton F\n"
           "  bound   --constraint F --mode reg|cf\n"
           "Exit codes: 0 success, 1 unsat or not certified, 2 invalid input, 3 cyclic, 4 budget exceeded.\n";
}

namespace detail {

inline json bounds_json(const Bounds& b, const std::string& mode)
{
    json vals = json::array(), bits = json::array();
    for (const auto& v : b.perVariable) {
        vals.push_back(big_to_string(v));
        bits.push_back(v > 0 ? static_cast<long>(msb(v)) : -1L);
    }
    json j = {{"mode", mode}, {"m", b.m}, {"t", b.t}, {"k", b.k}, {"floored", b.floored}};
    if (mode == "cf") {
        j["p"] = b.p;
        j["c"] = b.c;
        j["B"] = vals;
        j["B_log2_floor"] = bits;
        j["output_factor"] = big_to_string(b.outputFactor);
    } else {
        j["D"] = vals;
        j["D_log2_floor"] = bits;
    }
    return j;
}

inline std::string closure_kind(const std::string& k)
{
    if (k == "down" || k == "downward")
        return "downward";
    if (k == "up" || k == "upward")
        return "upward";
    if (k == "parikh")
        return "parikh";
    throw InvalidInput("closure: unknown kind '" + k + "'");
}

} // namespace detail

inline int dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"strcon: string constraints with subword and transducer relations", "strcon"};
    app.footer(cli_grammar());
    app.require_subcommand(1);
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    std::string constraintFile, assignmentFile, pcpFile, automatonFile, mode, kind, source = "family";
    int bound = 0, n = 0, bit = -1, maxLen = 12;
    bool trace = false, extended = false, strict = false, concat = false;
    std::vector<std::string> gamma2{"a"};

    auto* solve = app.add_subcommand("solve", "Bounded search for a satisfying assignment");
    solve->add_option("--constraint", constraintFile)->required();
    solve->add_option("--bound", bound, "Length bound per variable")->required();
    solve->add_flag("--trace", trace, "Include the search order and candidate count");

    auto* verify = app.add_subcommand("verify", "Check an assignment");
    verify->add_option("--constraint", constraintFile)->required();
    verify->add_option("--assignment", assignmentFile)->required();
    verify->add_flag("--extended", extended, "Check the given transducer outputs as well");

    auto* shrink = app.add_subcommand("shrink", "Shrink an extended assignment");
    shrink->add_option("--constraint", constraintFile)->required();
    shrink->add_option("--assignment", assignmentFile)->required();
    shrink->add_option("--mode", mode)->required()->check(CLI::IsMember({"reg", "cf"}));

    auto* gadget = app.add_subcommand("gadget", "Emit a counting gadget");
    gadget->add_option("--kind", kind)->required()->check(CLI::IsMember({"fig2", "fig3", "bitdfa", "fig5", "family"}));
    gadget->add_option("--n", n)->required();
    gadget->add_flag("--strict", strict, "Strict bit-DFAs");
    gadget->add_option("--gamma2", gamma2, "Comma-separated letters")->delimiter(',');
    gadget->add_option("--bit", bit, "Emit only the DFA for this bit (0-based)");

    auto* certify = app.add_subcommand("certify", "Certify the letter count of a gadget");
    certify->add_option("--kind", kind)->required()->check(CLI::IsMember({"fig2", "fig3", "fig5", "family"}));
    certify->add_option("--n", n)->required();
    certify->add_option("--gamma2", gamma2, "Comma-separated letters")->delimiter(',');

    auto* reduce = app.add_subcommand("reduce", "Build a constraint from a PCP instance");
    reduce->add_option("--pcp", pcpFile)->required();
    reduce->add_flag("--concat-undecidable", concat, "Emit the cyclic concatenation instance");

    auto* closure = app.add_subcommand("closure", "Closure sizes");
    closure->add_option("--kind", kind)->required()->check(
        CLI::IsMember({"down", "up", "parikh", "downward", "upward"}));
    auto* nOpt = closure->add_option("--n", n);
    auto* aOpt = closure->add_option("--automaton", automatonFile);
    nOpt->excludes(aOpt);
    closure->add_option("--source", source, "family or fig5")->check(CLI::IsMember({"family", "fig5"}));
    closure->add_option("--max-len", maxLen, "Length bound for parikh on an automaton");

    auto* boundCmd = app.add_subcommand("bound", "Evaluate the length-bound recurrences");
    boundCmd->add_option("--constraint", constraintFile)->required();
    boundCmd->add_option("--mode", mode)->required()->check(CLI::IsMember({"reg", "cf"}));

    std::vector<std::string> argv(args.rbegin(), args.rend());
    try {
        app.parse(argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, err, err);
        return kExitInvalid;
    }

    auto emit = [&](const json& j) { out << j.dump(2) << "\n"; };
    try {
        if (*solve) {
            auto c = load_constraint_file(constraintFile);
            auto r = solve_bounded(c, bound);
            json j = {{"sat", r.sat}, {"bound", bound}};
            if (r.sat) {
                json a = to_json(*r.assignment, c);
                j["base"] = a["base"];
                j["outputs"] = a["outputs"];
            }
            if (trace) {
                json order = json::array();
                for (int x : dependency_order(c).order)
                    order.push_back(c.variables[x]);
                j["trace"] = {{"order", order}, {"candidates_tried", r.candidatesTried}};
            }
            emit(j);
            return r.sat ? kExitOk : kExitNo;
        }
        if (*verify) {
            auto c = load_constraint_file(constraintFile);
            json doc = read_json_file(assignmentFile);
            auto ea = load_assignment(doc, c, extended);
            if (extended) {
                auto rep = verify_extended(c, ea);
                emit(report_json(rep, c));
                return rep.ok ? kExitOk : kExitNo;
            }
            auto v = verify_base(c, ea.base);
            json j = {{"ok", v.ok}};
            if (v.ok)
                j["outputs"] = to_json(*v.extended, c)["outputs"];
            else
                j["reason"] = v.reason;
            emit(j);
            return v.ok ? kExitOk : kExitNo;
        }
        if (*shrink) {
            auto c = load_constraint_file(constraintFile);
            auto ea = load_assignment(read_json_file(assignmentFile), c, true);
            auto r = mode == "reg" ? shrink_regular(c, ea) : shrink_contextfree(c, ea);
            json a = to_json(r.assignment, c);
            a["trace"] = trace_json(r);
            emit(a);
            return kExitOk;
        }
        if (*gadget) {
            if (kind == "bitdfa") {
                auto dfas = bit_dfas(n, gamma2, strict);
                if (bit >= 0) {
                    if (bit >= static_cast<int>(dfas.size()))
                        throw InvalidInput("gadget: --bit out of range");
                    emit(to_json(dfas[static_cast<std::size_t>(bit)]));
                } else {
                    json arr = json::array();
                    for (const auto& d : dfas)
                        arr.push_back(to_json(d));
                    emit(arr);
                }
            } else if (kind == "family") {
                json arr = json::array();
                for (const auto& d : single_word_family(n))
                    arr.push_back(to_json(d));
                emit(arr);
            } else {
                GadgetSpec s;
                s.kind = kind;
                s.n = n;
                s.gamma2 = gamma2;
                emit(to_json(build_gadget(s)));
            }
            return kExitOk;
        }
        if (*certify) {
            if (kind == "family") {
                auto r = certify_family(n);
                emit(to_json(r, single_word_family(n).front().alphabet));
                return r.words == 1 ? kExitOk : kExitNo;
            }
            auto cert = verify_counting(kind, n, gamma2);
            emit(to_json(cert));
            return cert.certified ? kExitOk : kExitNo;
        }
        if (*reduce) {
            auto p = pcp_from_json(read_json_file(pcpFile));
            emit(to_json(concat ? concat_undecidable_instance(p) : reduce_2ebpcp(p)));
            return kExitOk;
        }
        if (*closure) {
            const std::string k = detail::closure_kind(kind);
            if (!automatonFile.empty()) {
                Automaton a = automaton_from_json(read_json_file(automatonFile));
                auto* nfa = std::get_if<Nfa>(&a);
                if (!nfa)
                    throw InvalidInput("closure: --automaton must be an nfa");
                Nfa r = apply_closure(k, *nfa, maxLen);
                emit({{"kind", k}, {"min_dfa_size", determinize_minimize(r).size}, {"automaton", to_json(r)}});
                return kExitOk;
            }
            if (n <= 0)
                throw InvalidInput("closure: --n or --automaton is required");
            json arr = json::array();
            bool ok = true;
            for (const auto& r : growth_report(k, {n}, source)) {
                arr.push_back(to_json(r));
                ok = ok && r.meetsBound;
            }
            emit(arr);
            return ok ? kExitOk : kExitNo;
        }
        if (*boundCmd) {
            auto c = load_constraint_file(constraintFile);
            emit(detail::bounds_json(mode == "cf" ? bound_cf(c) : bound_reg(c), mode));
            return kExitOk;
        }
    } catch (const CyclicConstraint& e) {
        err << "error: " << e.what() << "\n";
        return kExitCyclic;
    } catch (const BudgetExceeded& e) {
        err << "error: " << e.what() << "\n";
        return kExitBudget;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    } catch (const json::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitInvalid;
    }
    return kExitInvalid;
}

inline int dispatch(int argc, char** argv, std::ostream& out = std::cout, std::ostream& err = std::cerr)
{
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i)
        args.emplace_back(argv[i]);
    return dispatch(args, out, err);
}

} // namespace strcon
