#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "tinv/glue.hpp"
#include "tinv/history.hpp"
#include "tinv/model.hpp"
#include "tinv/regexinv.hpp"
#include "tinv/solver.hpp"
#include "tinv/traps.hpp"
#include "tinv/verifier.hpp"
#include "tinv/zonegraph.hpp"

using namespace tinv;

namespace {

struct CommonArgs {
    std::string model_path;
    std::vector<std::string> glue;
    std::vector<std::string> heuristics;
    bool symmetry = false;
    bool allow_history_props = false;
    bool exact_k = false;
    std::string solver = "internal";
    std::string smt_out;
    std::int64_t budget = 1000000;
};

VerifierOptions to_options(const CommonArgs& a) {
    VerifierOptions o;
    if (!a.glue.empty()) {
        o.glue.clear();
        for (auto& g : a.glue) {
            std::stringstream ss(g);
            std::string tok;
            while (std::getline(ss, tok, ','))
                if (tok != "none" && !tok.empty()) o.glue.insert(tok);
        }
    }
    for (auto& h : a.heuristics) {
        std::stringstream ss(h);
        std::string tok;
        while (std::getline(ss, tok, ',')) {
            if (tok == "regex") o.heuristic_regex = true;
            if (tok == "prec") o.heuristic_prec = true;
        }
    }
    o.symmetry = a.symmetry;
    o.allow_history_props = a.allow_history_props;
    o.exact_k = a.exact_k;
    o.use_smt = a.solver == "smtlib";
    o.smt_out = a.smt_out;
    o.cube_budget = a.budget;
    return o;
}

void add_common(CLI::App* cmd, CommonArgs& a) {
    cmd->add_option("model", a.model_path, "model file (.tinv)")->required();
    cmd->add_option("--glue", a.glue,
                    "glue families: e, estar, sep, sepc, prec, none (default estar,sep)");
    cmd->add_option("--heuristic", a.heuristics, "heuristics: regex, prec");
    cmd->add_flag("--symmetry", a.symmetry, "use the symmetry-reduced separation constraints");
    cmd->add_flag("--allow-history-props", a.allow_history_props,
                  "allow properties over history clocks");
    cmd->add_flag("--exact-k", a.exact_k, "refine separation constants with an observer clock");
    cmd->add_option("--solver", a.solver, "internal | smtlib")->check(CLI::IsMember({"internal", "smtlib"}));
    cmd->add_option("--smt-out", a.smt_out, "write the SMT-LIB2 query to this path");
    cmd->add_option("--budget", a.budget, "cube budget for the internal checker");
}

int print_report(const VerificationReport& rep, const SystemModel& m, const ClockLayout& lay) {
    const char* verdicts[] = {"PROVED", "UNKNOWN", "BUDGET", "ERROR"};
    std::cout << rep.property << ": " << verdicts[static_cast<int>(rep.verdict)] << "\n";
    if (!rep.message.empty()) std::cout << "  " << rep.message << "\n";
    if (rep.witness) {
        std::cout << "  POTENTIAL counter-example (may be spurious):\n  "
                  << witness_to_string(*rep.witness, m, lay);
    }
    for (auto& [name, n] : rep.sizes) std::cout << "  " << name << ": " << n << "\n";
    for (auto& [name, t] : rep.timings_ms) std::cout << "  " << name << ": " << t << " ms\n";
    if (rep.cubes) std::cout << "  cubes: " << rep.cubes << "\n";
    return rep.exit_code();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tinv: compositional invariant-based verification for timed systems"};
    app.require_subcommand(1);

    CommonArgs check_args, inv_args, reach_args, oracle_args, dl_args;
    std::string prop_name;
    std::string reach_component;
    bool dump_zonegraph = false, dump_extended = false, dump_traps_flag = false,
         dump_regex = false, eliminate_mode = false;
    std::string oracle_prop;
    bool oracle_extended = false;

    auto* c_check = app.add_subcommand("check", "prove a property via rule (VR)");
    add_common(c_check, check_args);
    c_check->add_option("--prop", prop_name, "property name (declared in the model)");

    auto* c_inv = app.add_subcommand("invariants", "print CI / II / glue invariants");
    add_common(c_inv, inv_args);
    c_inv->add_flag("--eliminate", eliminate_mode,
                    "project history clocks away for a readable invariant");
    c_inv->add_flag("--dump-extended", dump_extended, "print components with history clocks");
    c_inv->add_flag("--dump-traps", dump_traps_flag, "print the marked traps behind II");
    c_inv->add_flag("--dump-regex", dump_regex, "print per-location regular expressions");

    auto* c_reach = app.add_subcommand("reach", "explore one component's zone graph");
    add_common(c_reach, reach_args);
    c_reach->add_option("--component", reach_component, "instance name")->required();
    c_reach->add_flag("--dump-zonegraph", dump_zonegraph, "print states and edges");

    auto* c_oracle = app.add_subcommand("oracle", "explicit product exploration (ground truth)");
    add_common(c_oracle, oracle_args);
    c_oracle->add_option("--prop", oracle_prop, "property name to check on every state");
    c_oracle->add_flag("--extended", oracle_extended, "explore the history-clock extension");

    auto* c_dl = app.add_subcommand("deadlock", "prove deadlock freedom via rule (VR)");
    add_common(c_dl, dl_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_check->parsed()) {
            SystemModel m = parse_model_file(check_args.model_path);
            ClockLayout lay = build_layout(m);
            const PropertyDef* p = nullptr;
            if (!prop_name.empty()) {
                p = m.find_property(prop_name);
                if (!p) throw std::runtime_error("no property named '" + prop_name + "'");
            } else if (!m.properties.empty()) {
                p = &m.properties.front();
            } else {
                throw std::runtime_error("the model declares no property; use --prop");
            }
            auto rep = check(m, lay, p->name, p->formula, p->uses_history, to_options(check_args));
            return print_report(rep, m, lay);
        }
        if (c_dl->parsed()) {
            SystemModel m = parse_model_file(dl_args.model_path);
            ClockLayout lay = build_layout(m);
            FormulaP dlf = deadlock_freedom_property(m, lay);
            auto rep = check(m, lay, "deadlock-freedom", dlf, false, to_options(dl_args));
            return print_report(rep, m, lay);
        }
        if (c_inv->parsed()) {
            SystemModel m = parse_model_file(inv_args.model_path);
            ClockLayout lay = build_layout(m);
            VerifierOptions opts = to_options(inv_args);
            if (dump_extended) {
                ExtendedSystem ex = extend_system(m, true);
                SystemModel printable = ex.model;
                printable.templates = printable.instances;
                printable.template_names = printable.instance_names;
                std::cout << pretty_print(printable);
                return 0;
            }
            if (dump_traps_flag) {
                PetriNet net = induce_net(m);
                auto traps = minimal_marked_traps(net);
                std::cout << dump_traps(m, net, traps);
                return 0;
            }
            if (dump_regex) {
                for (std::size_t i = 0; i < m.instances.size(); ++i)
                    if (m.instances[i].num_ordinary_clocks() == 0)
                        std::cout << dump_regex_invariant(m, static_cast<int>(i));
                return 0;
            }
            FormulaP sym_prop = m.properties.empty() ? nullptr : m.properties.front().formula;
            GlobalInvariant gi = build_global_invariant(m, lay, opts, sym_prop);
            Engine eng(m, lay, EngineOptions{opts.cube_budget});
            for (std::size_t i = 0; i < gi.ci.size(); ++i) {
                FormulaP ci = gi.ci[i];
                if (eliminate_mode) {
                    std::vector<int> drop;
                    for (int cidx = 1; cidx < lay.dim(); ++cidx)
                        if (lay.clocks[static_cast<std::size_t>(cidx)].kind != ClockKind::Ordinary)
                            drop.push_back(cidx);
                    ci = eng.project_clocks(ci, drop);
                }
                std::cout << "CI(" << m.instance_names[i]
                          << ") = " << formula_to_string(ci, m, lay) << "\n";
            }
            std::cout << "II = " << formula_to_string(gi.ii, m, lay) << "\n";
            for (auto& [name, g] : gi.glue)
                std::cout << name << " = " << formula_to_string(g, m, lay) << "\n";
            return 0;
        }
        if (c_reach->parsed()) {
            SystemModel m = parse_model_file(reach_args.model_path);
            int inst = m.find_instance(reach_component);
            if (inst < 0) throw std::runtime_error("no instance named '" + reach_component + "'");
            ExtendedSystem ex = extend_system(m, false);
            const Component& c = ex.model.instances[static_cast<std::size_t>(inst)];
            ZoneGraph g = reach(c);
            std::cout << c.name << ": " << g.states.size() << " symbolic states, "
                      << g.edges.size() << " edges\n";
            if (dump_zonegraph) std::cout << dump_zone_graph(g, c);
            return 0;
        }
        if (c_oracle->parsed()) {
            SystemModel m = parse_model_file(oracle_args.model_path);
            ClockLayout lay = build_layout(m);
            OracleOptions oo;
            oo.extended = oracle_extended;
            FormulaP prop;
            if (!oracle_prop.empty()) {
                const PropertyDef* p = m.find_property(oracle_prop);
                if (!p) throw std::runtime_error("no property named '" + oracle_prop + "'");
                prop = p->formula;
                if (p->uses_history) oo.extended = true;
            }
            Oracle o = oracle_reach(m, lay, oo);
            std::cout << "product: " << o.cs.product.locations.size() << " locations, reachable "
                      << o.graph.states.size() << " symbolic states\n";
            if (prop) {
                Engine eng(m, lay);
                auto v = oracle_check_on(o, eng, prop);
                if (v.holds) {
                    std::cout << oracle_prop << ": holds on every reachable state\n";
                    return 0;
                }
                std::cout << oracle_prop << ": VIOLATED (" << v.description << ")\n";
                return 1;
            }
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 3;
}
