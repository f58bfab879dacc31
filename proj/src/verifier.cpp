#include "tinv/verifier.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <fstream>
#include <sstream>

#include "tinv/history.hpp"
#include "tinv/regexinv.hpp"
#include "tinv/traps.hpp"

namespace tinv {

int VerificationReport::exit_code() const {
    switch (verdict) {
        case Verdict::Proved: return 0;
        case Verdict::Unknown: return 1;
        case Verdict::Budget: return 2;
        case Verdict::Error: return 3;
    }
    return 3;
}

namespace {

double ms_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
        .count();
}

bool wants(const VerifierOptions& o, const char* fam) { return o.glue.count(fam) > 0; }

// pi(phi) under the transposition of two class members: at/clock atoms have
// their instances swapped; everything else is structural.
FormulaP transpose(const FormulaP& f, const SystemModel& m, const ClockLayout& lay, int a, int b) {
    auto swap_inst = [&](int inst) { return inst == a ? b : inst == b ? a : inst; };
    auto swap_clock = [&](int id) {
        const auto& info = lay.clocks[static_cast<std::size_t>(id)];
        if (info.instance != a && info.instance != b) return id;
        int other = info.instance == a ? b : a;
        if (info.kind == ClockKind::Ordinary) {
            const auto& mine = lay.ordinary[static_cast<std::size_t>(info.instance)];
            for (std::size_t i = 0; i < mine.size(); ++i)
                if (mine[i] == id) return lay.ordinary[static_cast<std::size_t>(other)][i];
        } else if (info.kind == ClockKind::ActionHistory) {
            const auto& mine = lay.action_clock[static_cast<std::size_t>(info.instance)];
            for (std::size_t i = 0; i < mine.size(); ++i)
                if (mine[i] == id) return lay.action_clock[static_cast<std::size_t>(other)][i];
        }
        return id;
    };
    switch (f->kind) {
        case Formula::Kind::True:
        case Formula::Kind::False: return f;
        case Formula::Kind::At: return f_at(swap_inst(f->instance), f->location);
        case Formula::Kind::Clock:
            return f_clock(swap_clock(f->lhs), f->rhs >= 0 ? swap_clock(f->rhs) : -1, f->op, f->ct);
        default: {
            std::vector<FormulaP> kids;
            for (auto& k : f->kids) kids.push_back(transpose(k, m, lay, a, b));
            if (f->kind == Formula::Kind::And) return f_and(std::move(kids));
            if (f->kind == Formula::Kind::Or) return f_or(std::move(kids));
            if (f->kind == Formula::Kind::Not) return f_not(kids[0]);
            return f_implies(kids[0], kids[1]);
        }
    }
}

bool property_symmetric(const SystemModel& m, const ClockLayout& lay, const FormulaP& prop) {
    if (!m.symmetry || !prop) return false;
    Engine eng(m, lay);
    const auto& cls = m.symmetry->cls;
    // Adjacent transpositions generate the full permutation group.
    for (std::size_t i = 0; i + 1 < cls.size(); ++i) {
        FormulaP swapped = transpose(prop, m, lay, cls[i], cls[i + 1]);
        if (!eng.equivalent(prop, swapped)) return false;
    }
    return true;
}

}  // namespace

GlobalInvariant build_global_invariant(const SystemModel& m, const ClockLayout& lay,
                                       const VerifierOptions& opts,
                                       const FormulaP& property_for_symmetry) {
    GlobalInvariant out;
    bool needs_bstar = wants(opts, "estar") || wants(opts, "sep") || wants(opts, "sepc") ||
                       wants(opts, "prec") || opts.heuristic_prec;
    ExtendedSystem ex = extend_system(m, needs_bstar);

    // Component invariants over the extended components (B* contributes
    // nothing: a single location and unconstrained clocks).
    for (std::size_t i = 0; i < m.instances.size(); ++i) {
        if (opts.heuristic_regex && m.instances[i].num_ordinary_clocks() == 0) {
            out.ci.push_back(regex_invariant(m, lay, static_cast<int>(i)));
            continue;
        }
        const Component& c = ex.model.instances[i];
        ZoneGraph g = reach(c, opts.reach);
        auto map = local_clock_map(ex.model, lay, static_cast<int>(i), c, ex.bstar_instance);
        out.ci.push_back(component_invariant(g, static_cast<int>(i), map));
    }

    PetriNet net = induce_net(m);
    out.ii = interaction_invariant(net, minimal_marked_traps(net));

    if (wants(opts, "e"))
        out.glue.emplace_back("E", build_E(m, lay, m.gamma, true, opts.glue_limits));
    if (wants(opts, "estar")) out.glue.emplace_back("E*", build_E_star(m, lay));
    if (wants(opts, "sep") || wants(opts, "sepc")) out.k = separation_constants(m, opts.exact_k);
    bool use_canonical = wants(opts, "sepc") || (opts.symmetry && wants(opts, "sep"));
    if (use_canonical) {
        if (!m.symmetry) throw std::runtime_error("--symmetry needs a symmetry declaration");
        if (!property_symmetric(m, lay, property_for_symmetry))
            throw std::runtime_error(
                "the property is not fully symmetric; the reduced separation constraints do not "
                "apply");
        out.glue.emplace_back("S^c", build_S_canonical(m, lay, out.k));
    } else if (wants(opts, "sep")) {
        out.glue.emplace_back("S", build_S(m, lay, out.k));
    }
    if (wants(opts, "prec") || opts.heuristic_prec) {
        auto refinements = prec_refinements(m, lay);
        if (!refinements.empty()) out.glue.emplace_back("Prec", f_and(std::move(refinements)));
    }

    std::vector<FormulaP> conj = out.ci;
    conj.push_back(out.ii);
    for (auto& [_, g] : out.glue) conj.push_back(g);
    out.gi = f_and(std::move(conj));
    return out;
}

VerificationReport check(const SystemModel& m, const ClockLayout& lay, const std::string& prop_name,
                         const FormulaP& property, bool property_uses_history,
                         const VerifierOptions& opts) {
    VerificationReport rep;
    rep.property = prop_name;
    auto t0 = std::chrono::steady_clock::now();
    try {
        if (property_uses_history && !opts.allow_history_props)
            throw std::runtime_error(
                "property mentions history clocks; re-run with --allow-history-props");

        GlobalInvariant gi = build_global_invariant(m, lay, opts, property);
        rep.timings_ms.emplace_back("invariants", ms_since(t0));
        for (std::size_t i = 0; i < gi.ci.size(); ++i)
            rep.sizes.emplace_back("CI(" + m.instance_names[i] + ") disjuncts",
                                   top_disjuncts(gi.ci[i]));
        rep.sizes.emplace_back("II clauses",
                               gi.ii->kind == Formula::Kind::And ? gi.ii->kids.size()
                               : is_true(gi.ii)                  ? 0
                                                                 : 1);
        for (auto& [name, g] : gi.glue) rep.sizes.emplace_back(name + " atoms", formula_atoms(g));

        // not(phi) first: it pins the interesting locations early.
        FormulaP target = f_and({f_not(property), gi.gi});

        if (!opts.smt_out.empty()) {
            std::ofstream out(opts.smt_out);
            out << export_smtlib(target, m, lay);
        }

        auto t1 = std::chrono::steady_clock::now();
        if (opts.use_smt) {
            auto solver = find_smt_solver();
            if (!solver) throw std::runtime_error("no SMT solver found on PATH");
            std::string path = opts.smt_out.empty() ? "/tmp/tinv_query.smt2" : opts.smt_out;
            if (opts.smt_out.empty()) {
                std::ofstream out(path);
                out << export_smtlib(target, m, lay);
            }
            auto verdict = run_smt_file(*solver, path);
            if (!verdict) throw std::runtime_error("SMT solver gave no verdict");
            rep.timings_ms.emplace_back("smt", ms_since(t1));
            rep.verdict = *verdict ? Verdict::Unknown : Verdict::Proved;
            if (*verdict) rep.message = "satisfiable under " + *solver + " (potential counter-example)";
            return rep;
        }

        Engine eng(m, lay, EngineOptions{opts.cube_budget});
        SatResult sat = eng.is_satisfiable(target);
        rep.timings_ms.emplace_back("check", ms_since(t1));
        rep.cubes = sat.cubes;
        switch (sat.verdict) {
            case SatVerdict::Unsat: rep.verdict = Verdict::Proved; break;
            case SatVerdict::Sat:
                rep.verdict = Verdict::Unknown;
                rep.witness = sat.witness;
                rep.message = "GI does not entail the property (potential counter-example)";
                break;
            case SatVerdict::Budget:
                rep.verdict = Verdict::Budget;
                rep.message = "cube budget exceeded; consider --solver smtlib";
                break;
        }
    } catch (const std::exception& e) {
        rep.verdict = Verdict::Error;
        rep.message = e.what();
    }
    return rep;
}

// ── Enabledness and deadlock freedom ────────────────────────────────────────

namespace {

FormulaP enabled_tuple(const SystemModel& m, const ClockLayout& lay,
                       const std::vector<std::pair<int, const Edge*>>& tuple) {
    Dbm zone = Dbm::universal(lay.dim());
    std::vector<FormulaP> at_atoms;
    std::vector<int> resets;
    Dbm target_tpc = Dbm::universal(lay.dim());

    for (auto& [inst, e] : tuple) {
        const Component& c = m.instances[static_cast<std::size_t>(inst)];
        auto map = local_clock_map(m, lay, inst, c);
        at_atoms.push_back(f_at(inst, e->src));
        auto lift = [&](const Guard& g, Dbm& into) {
            for (auto a : g) {
                GuardAtom ga = a;
                ga.lhs = map[static_cast<std::size_t>(a.lhs)] - 1;
                if (a.rhs >= 0) ga.rhs = map[static_cast<std::size_t>(a.rhs)] - 1;
                Dbm atom = from_constraint({ga}, lay.dim());
                into.intersect(atom);
            }
        };
        lift(e->guard, zone);
        lift(c.tpc[static_cast<std::size_t>(e->src)], zone);
        lift(c.tpc[static_cast<std::size_t>(e->dst)], target_tpc);
        for (int r : e->resets) resets.push_back(map[static_cast<std::size_t>(r)]);
    }
    target_tpc.inverse_reset(resets);
    zone.intersect(target_tpc);
    zone.down();
    if (zone.is_empty()) return f_false();

    std::vector<int> identity(static_cast<std::size_t>(lay.dim()) - 1);
    for (std::size_t i = 0; i < identity.size(); ++i) identity[i] = static_cast<int>(i) + 1;
    at_atoms.push_back(zone_to_formula(zone, identity));
    return f_and(std::move(at_atoms));
}

}  // namespace

FormulaP enabled_predicate(const SystemModel& m, const ClockLayout& lay, const Interaction& alpha) {
    std::vector<std::vector<const Edge*>> choices;
    for (auto& part : alpha.participants) {
        std::vector<const Edge*> es;
        for (auto& e : m.instances[static_cast<std::size_t>(part.instance)].edges)
            if (e.action == part.action) es.push_back(&e);
        choices.push_back(std::move(es));
    }
    if (std::any_of(choices.begin(), choices.end(), [](auto& v) { return v.empty(); }))
        return f_false();
    std::vector<FormulaP> disj;
    std::vector<std::size_t> pick(choices.size(), 0);
    while (true) {
        std::vector<std::pair<int, const Edge*>> tuple;
        for (std::size_t j = 0; j < choices.size(); ++j)
            tuple.emplace_back(alpha.participants[j].instance, choices[j][pick[j]]);
        disj.push_back(enabled_tuple(m, lay, tuple));
        std::size_t j = 0;
        for (; j < choices.size(); ++j) {
            if (++pick[j] < choices[j].size()) break;
            pick[j] = 0;
        }
        if (j == choices.size()) break;
    }
    return f_or(std::move(disj));
}

FormulaP deadlock_freedom_property(const SystemModel& m, const ClockLayout& lay) {
    std::vector<FormulaP> disj;
    for (auto& alpha : m.gamma) disj.push_back(enabled_predicate(m, lay, alpha));
    // Internal transitions fire as singleton interactions.
    for (std::size_t i = 0; i < m.instances.size(); ++i)
        for (auto& e : m.instances[i].edges)
            if (e.action < 0)
                disj.push_back(enabled_tuple(m, lay, {{static_cast<int>(i), &e}}));
    return f_or(std::move(disj));
}

// ── Oracle ──────────────────────────────────────────────────────────────────

Oracle oracle_reach(const SystemModel& m, const ClockLayout& lay, const OracleOptions& opts) {
    Oracle o;
    if (opts.extended || opts.with_bstar) {
        ExtendedSystem ex = extend_system(m, opts.with_bstar);
        o.cs = compose_syntactically(ex.model, lay, ex.bstar_instance, opts.max_locations);
    } else {
        o.cs = compose_syntactically(m, lay, -1, opts.max_locations);
    }
    o.graph = reach(o.cs.product, opts.reach);
    return o;
}

OracleVerdict oracle_check_on(const Oracle& o, const Engine& eng, const FormulaP& f) {
    const SystemModel& m = eng.model();
    for (std::size_t si = 0; si < o.graph.states.size(); ++si) {
        const auto& s = o.graph.states[si];
        auto locs = o.cs.location_of(s.location);
        std::vector<FormulaP> conj;
        for (std::size_t i = 0; i < m.instances.size() && i < locs.size(); ++i)
            conj.push_back(f_at(static_cast<int>(i), locs[i]));
        conj.push_back(zone_to_formula(s.zone, o.cs.clock_of_global));
        conj.push_back(f_not(f));
        SatResult r = eng.is_satisfiable(f_and(std::move(conj)));
        if (r.verdict == SatVerdict::Budget)
            return {false, static_cast<int>(si), "budget exceeded during oracle check"};
        if (r.verdict == SatVerdict::Sat) {
            OracleVerdict v;
            v.holds = false;
            v.state = static_cast<int>(si);
            v.description = "state " + o.cs.product.locations[static_cast<std::size_t>(s.location)] +
                            " violates the formula";
            return v;
        }
    }
    return {};
}

OracleVerdict oracle_check(const SystemModel& m, const ClockLayout& lay, const FormulaP& f,
                           const OracleOptions& opts) {
    Oracle o = oracle_reach(m, lay, opts);
    Engine eng(m, lay);
    return oracle_check_on(o, eng, f);
}

OracleVerdict oracle_glue_inductive(const SystemModel& m, const ClockLayout& lay,
                                    const std::vector<std::pair<std::string, FormulaP>>& glue,
                                    const ReachLimits& limits) {
    ExtendedSystem ex = extend_system(m, true);
    ComposedSystem cs = compose_syntactically(ex.model, lay, ex.bstar_instance);
    const Component& p = cs.product;
    const int dim = static_cast<int>(p.clocks.size()) + 1;
    const std::int64_t cap = p.constant_sum();
    std::vector<std::int64_t> maxc(static_cast<std::size_t>(dim), cap);

    // global layout id -> product clock index (1-based), for translating glue
    // cubes into product zones.
    std::vector<int> to_product(static_cast<std::size_t>(lay.dim()), -1);
    for (std::size_t i = 0; i < cs.clock_of_global.size(); ++i)
        to_product[static_cast<std::size_t>(cs.clock_of_global[i])] = static_cast<int>(i) + 1;

    Engine eng(m, lay);
    std::vector<FormulaP> all;
    for (auto& [_, g] : glue) all.push_back(g);
    FormulaP conj = f_and(std::move(all));

    Dbm init = from_constraint(p.initial_constraint, dim);
    std::vector<std::pair<int, Dbm>> seeds;
    eng.for_each_cube(conj, [&](const WitnessCube& w) {
        Dbm z = init;
        // Translate the cube zone entry-wise.
        for (int i = 0; i < lay.dim() && !z.is_empty(); ++i) {
            int pi = i == 0 ? 0 : to_product[static_cast<std::size_t>(i)];
            if (pi < 0) continue;
            for (int j = 0; j < lay.dim(); ++j) {
                int pj = j == 0 ? 0 : to_product[static_cast<std::size_t>(j)];
                if (pj < 0 || pi == pj) continue;
                Bound b = w.zone.at(i, j);
                if (!b.is_infinity()) z.constrain(pi, pj, b);
            }
        }
        if (!z.is_empty()) {
            z = time_succ(p, p.initial_location, std::move(z));
            z.extrapolate(maxc, cap);
            if (!z.is_empty()) seeds.emplace_back(p.initial_location, std::move(z));
        }
        return true;
    });

    std::vector<SymbolicState> states;
    std::deque<int> work;
    auto add_state = [&](int loc, Dbm z) {
        for (auto& s : states)
            if (s.location == loc && s.zone.includes(z)) return;
        if (states.size() >= limits.max_states)
            throw std::runtime_error("glue-inductiveness exploration exceeded the state limit");
        states.push_back({loc, std::move(z)});
        work.push_back(static_cast<int>(states.size()) - 1);
    };
    for (auto& [loc, z] : seeds) add_state(loc, z);

    while (!work.empty()) {
        int si = work.front();
        work.pop_front();
        SymbolicState s = states[static_cast<std::size_t>(si)];
        // Membership check for each glue family.
        for (auto& [name, g] : glue) {
            std::vector<FormulaP> state_conj;
            state_conj.push_back(zone_to_formula(s.zone, cs.clock_of_global));
            state_conj.push_back(f_not(g));
            SatResult r = eng.is_satisfiable(f_and(std::move(state_conj)));
            if (r.verdict != SatVerdict::Unsat) {
                OracleVerdict v;
                v.holds = false;
                v.state = si;
                v.description =
                    name + " violated at " +
                    p.locations[static_cast<std::size_t>(s.location)];
                return v;
            }
        }
        for (std::size_t ei = 0; ei < p.edges.size(); ++ei) {
            const Edge& e = p.edges[ei];
            if (e.src != s.location) continue;
            Dbm nz = succ(p, e, e.src, s.zone, maxc, cap);
            if (!nz.is_empty()) add_state(e.dst, std::move(nz));
        }
    }
    return {};
}

}  // namespace tinv
