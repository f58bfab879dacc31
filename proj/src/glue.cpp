#include "tinv/glue.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "tinv/history.hpp"

namespace tinv {

namespace {

std::vector<ActionRef> act_of(const std::vector<Interaction>& gamma) {
    std::set<ActionRef> s;
    for (auto& a : gamma)
        for (auto& p : a.participants) s.insert(p);
    return {s.begin(), s.end()};
}

bool subset_of(const Interaction& a, const Interaction& b) {
    for (auto& p : a.participants)
        if (std::find(b.participants.begin(), b.participants.end(), p) == b.participants.end())
            return false;
    return true;
}

std::string key_of(const std::vector<Interaction>& gamma) {
    std::vector<std::string> parts;
    for (auto& a : gamma) {
        std::string s;
        for (auto& p : a.participants)
            s += std::to_string(p.instance) + "." + std::to_string(p.action) + ",";
        parts.push_back(s);
    }
    std::sort(parts.begin(), parts.end());
    std::string k;
    for (auto& p : parts) k += p + ";";
    return k;
}

int hclock(const ClockLayout& lay, const ActionRef& a) {
    return lay.action_clock[static_cast<std::size_t>(a.instance)]
                           [static_cast<std::size_t>(a.action)];
}

}  // namespace

std::vector<Interaction> gamma_minus(const std::vector<Interaction>& gamma,
                                     const Interaction& alpha) {
    std::vector<Interaction> out;
    for (auto& beta : gamma) {
        if (subset_of(beta, alpha)) continue;
        Interaction rest;
        for (auto& p : beta.participants)
            if (std::find(alpha.participants.begin(), alpha.participants.end(), p) ==
                alpha.participants.end())
                rest.participants.push_back(p);
        bool dup = false;
        for (auto& o : out)
            if (o.participants == rest.participants) dup = true;
        if (!dup) out.push_back(std::move(rest));
    }
    return out;
}

namespace {

struct EBuilder {
    const ClockLayout& lay;
    const GlueLimits& limits;
    std::map<std::string, FormulaP> memo;
    std::size_t atoms = 0;

    void charge(std::size_t n) {
        atoms += n;
        if (atoms > limits.max_atoms)
            throw std::runtime_error(
                "interaction inequalities exceed the size limit; consider --heuristic regex or "
                "--glue estar");
    }

    FormulaP equalities(const Interaction& alpha) {
        std::vector<FormulaP> eqs;
        for (std::size_t i = 0; i + 1 < alpha.participants.size(); ++i) {
            charge(1);
            eqs.push_back(f_clock(hclock(lay, alpha.participants[i]),
                                  hclock(lay, alpha.participants[i + 1]), CmpOp::Eq, 0));
        }
        return f_and(std::move(eqs));
    }

    FormulaP recurse(const std::vector<Interaction>& gamma) {
        if (gamma.empty()) return f_true();
        std::string key = key_of(gamma);
        auto it = memo.find(key);
        if (it != memo.end()) return it->second;
        std::vector<FormulaP> disjuncts;
        for (auto& alpha : gamma) {
            auto rest = gamma_minus(gamma, alpha);
            std::vector<FormulaP> conj;
            conj.push_back(equalities(alpha));
            int rep = hclock(lay, alpha.participants.front());
            for (auto& ak : act_of(rest)) {
                charge(1);
                conj.push_back(f_clock(rep, hclock(lay, ak), CmpOp::Le, 0));
            }
            conj.push_back(recurse(rest));
            disjuncts.push_back(f_and(std::move(conj)));
        }
        FormulaP out = f_or(std::move(disjuncts));
        memo[key] = out;
        return out;
    }
};

// Partition into groups transitively sharing actions.
std::vector<std::vector<Interaction>> disjoint_groups(const std::vector<Interaction>& gamma) {
    std::vector<int> group(gamma.size());
    for (std::size_t i = 0; i < gamma.size(); ++i) group[i] = static_cast<int>(i);
    std::function<int(int)> find = [&](int x) { return group[static_cast<std::size_t>(x)] == x ? x : group[static_cast<std::size_t>(x)] = find(group[static_cast<std::size_t>(x)]); };
    for (std::size_t i = 0; i < gamma.size(); ++i)
        for (std::size_t j = i + 1; j < gamma.size(); ++j) {
            bool share = false;
            for (auto& p : gamma[i].participants)
                if (std::find(gamma[j].participants.begin(), gamma[j].participants.end(), p) !=
                    gamma[j].participants.end())
                    share = true;
            if (share) group[static_cast<std::size_t>(find(static_cast<int>(j)))] = find(static_cast<int>(i));
        }
    std::map<int, std::vector<Interaction>> buckets;
    for (std::size_t i = 0; i < gamma.size(); ++i)
        buckets[find(static_cast<int>(i))].push_back(gamma[i]);
    std::vector<std::vector<Interaction>> out;
    for (auto& [_, g] : buckets) out.push_back(g);
    return out;
}

}  // namespace

FormulaP build_E(const SystemModel& m, const ClockLayout& lay,
                 const std::vector<Interaction>& gamma, bool simplify, const GlueLimits& limits) {
    (void)m;
    EBuilder eb{lay, limits, {}, 0};
    if (!simplify) return eb.recurse(gamma);
    std::vector<FormulaP> conj;
    for (auto& group : disjoint_groups(gamma)) {
        if (group.size() == 1)
            conj.push_back(eb.equalities(group[0]));
        else
            conj.push_back(eb.recurse(group));
    }
    return f_and(std::move(conj));
}

FormulaP build_E_star(const SystemModel& m, const ClockLayout& lay) {
    std::vector<FormulaP> conj;
    auto conf = conflicts(m);
    for (auto& [a, inters] : conf) {
        int ha = hclock(lay, a);
        if (inters.size() == 1) {
            conj.push_back(f_clock(ha, lay.interaction_clock[static_cast<std::size_t>(inters[0])],
                                   CmpOp::Eq, 0));
            continue;
        }
        std::vector<FormulaP> les, eqs;
        for (int k : inters) {
            int hk = lay.interaction_clock[static_cast<std::size_t>(k)];
            les.push_back(f_clock(ha, hk, CmpOp::Le, 0));
            eqs.push_back(f_clock(ha, hk, CmpOp::Eq, 0));
        }
        conj.push_back(f_and({f_and(std::move(les)), f_or(std::move(eqs))}));
    }
    return f_and(std::move(conj));
}

// ── Separation constants ────────────────────────────────────────────────────

namespace {

// Largest ct such that some clock is reset at position i and then required
// >= ct at a later position of the path.
std::int64_t best_witness(const Component& c, const std::vector<const Edge*>& path) {
    std::int64_t best = 0;
    for (std::size_t i = 0; i + 1 < path.size(); ++i)
        for (int r : path[i]->resets) {
            if (c.clock_kinds[static_cast<std::size_t>(r)] != ClockKind::Ordinary &&
                c.clock_kinds[static_cast<std::size_t>(r)] != ClockKind::Observer)
                continue;
            for (std::size_t j = i + 1; j < path.size(); ++j)
                for (auto& g : path[j]->guard) {
                    if (g.lhs != r || g.rhs >= 0) continue;
                    if (g.op == CmpOp::Ge || g.op == CmpOp::Gt || g.op == CmpOp::Eq)
                        best = std::max(best, g.ct);
                }
        }
    return best;
}

struct PathSearch {
    const Component& c;
    int action;
    std::vector<const Edge*> starts;  // edges labelled with the action
    std::int64_t k = -1;              // min over paths; -1 = no path seen
    bool hopeless = false;

    void consider(const std::vector<const Edge*>& path) {
        std::int64_t w = best_witness(c, path);
        if (w == 0) {
            hopeless = true;
            return;
        }
        k = k < 0 ? w : std::min(k, w);
    }

    // DFS over simple interior paths of non-action edges from `loc` to the
    // source of any action edge.
    void dfs(std::vector<const Edge*>& path, int loc, std::vector<bool>& seen) {
        if (hopeless) return;
        for (auto* e1 : starts)
            if (e1->src == loc) {
                path.push_back(e1);
                consider(path);
                path.pop_back();
            }
        for (auto& e : c.edges) {
            if (e.action == action) continue;
            if (e.src != loc || seen[static_cast<std::size_t>(e.dst)]) continue;
            seen[static_cast<std::size_t>(e.dst)] = true;
            path.push_back(&e);
            dfs(path, e.dst, seen);
            path.pop_back();
            seen[static_cast<std::size_t>(e.dst)] = false;
        }
    }
};

}  // namespace

std::int64_t separation_constant(const Component& c, int action) {
    PathSearch ps{c, action, {}, -1, false};
    for (auto& e : c.edges)
        if (e.action == action) ps.starts.push_back(&e);
    if (ps.starts.empty()) return 0;
    for (auto* e0 : ps.starts) {
        std::vector<const Edge*> path{e0};
        std::vector<bool> seen(c.locations.size(), false);
        seen[static_cast<std::size_t>(e0->dst)] = true;
        ps.dfs(path, e0->dst, seen);
        if (ps.hopeless) return 0;
    }
    return ps.k < 0 ? 0 : ps.k;  // no path at all: treated as unknown
}

std::int64_t separation_constant_exact(const Component& c, int action, const ReachLimits& limits) {
    // Copy with an observer clock reset on the action's edges, and locations
    // doubled so states after the first occurrence are distinguishable.
    Component obs = c;
    int oclk = add_observer_clock(obs, action);
    Component dup;
    dup.name = obs.name + "#obs";
    dup.clocks = obs.clocks;
    dup.clock_kinds = obs.clock_kinds;
    const int n = static_cast<int>(obs.locations.size());
    for (int phase = 0; phase < 2; ++phase)
        for (int l = 0; l < n; ++l) {
            dup.locations.push_back(obs.locations[static_cast<std::size_t>(l)] +
                                    (phase ? "#1" : "#0"));
            dup.tpc.push_back(obs.tpc[static_cast<std::size_t>(l)]);
        }
    dup.actions = obs.actions;
    for (auto& e : obs.edges)
        for (int phase = 0; phase < 2; ++phase) {
            Edge ne = e;
            ne.src = e.src + phase * n;
            ne.dst = (e.action == action ? e.dst + n : e.dst + phase * n);
            dup.edges.push_back(ne);
        }
    dup.initial_location = obs.initial_location;
    dup.initial_constraint = obs.initial_constraint;

    ZoneGraph g = reach(dup, limits);
    std::int64_t k = -1;
    for (std::size_t si = 0; si < g.states.size(); ++si) {
        const auto& s = g.states[si];
        if (s.location < n) continue;  // action not fired yet
        for (auto& e : dup.edges) {
            if (e.action != action || e.src != s.location) continue;
            Dbm fire = s.zone;
            fire.intersect(from_constraint(e.guard, fire.dim()));
            if (fire.is_empty()) continue;
            Bound lb = fire.at(0, oclk + 1);  // 0 - obs <= -low
            std::int64_t low = lb.is_infinity() ? 0 : -lb.value();
            k = k < 0 ? low : std::min(k, low);
        }
    }
    return k < 0 ? 0 : k;
}

KMap separation_constants(const SystemModel& m, bool exact) {
    KMap k;
    auto conf = conflicts(m);
    for (auto& [a, inters] : conf) {
        if (inters.size() < 2) continue;
        const Component& c = m.instances[static_cast<std::size_t>(a.instance)];
        std::int64_t v = separation_constant(c, a.action);
        if (exact) v = std::max(v, separation_constant_exact(c, a.action));
        k[a] = v;
    }
    return k;
}

// ── Separation constraints ──────────────────────────────────────────────────

namespace {

struct ConflictPair {
    ActionRef action;
    int alpha;
    int beta;
};

std::vector<ConflictPair> conflict_pairs(const SystemModel& m) {
    std::vector<ConflictPair> out;
    for (auto& [a, inters] : conflicts(m)) {
        if (inters.size() < 2) continue;
        for (std::size_t i = 0; i < inters.size(); ++i)
            for (std::size_t j = i + 1; j < inters.size(); ++j)
                out.push_back({a, inters[i], inters[j]});
    }
    return out;
}

}  // namespace

FormulaP build_S(const SystemModel& m, const ClockLayout& lay, const KMap& k) {
    std::vector<FormulaP> conj;
    for (auto& cp : conflict_pairs(m)) {
        auto it = k.find(cp.action);
        std::int64_t ka = it == k.end() ? 0 : it->second;
        if (ka <= 0) continue;
        int ha = lay.interaction_clock[static_cast<std::size_t>(cp.alpha)];
        int hb = lay.interaction_clock[static_cast<std::size_t>(cp.beta)];
        conj.push_back(f_or({f_clock(ha, hb, CmpOp::Ge, ka), f_clock(hb, ha, CmpOp::Ge, ka)}));
    }
    return f_and(std::move(conj));
}

FormulaP build_S_star(const SystemModel& m, const ClockLayout& lay, const KMap& k) {
    std::vector<FormulaP> conj;
    for (auto& cp : conflict_pairs(m)) {
        auto it = k.find(cp.action);
        std::int64_t ka = it == k.end() ? 0 : it->second;
        int hact = hclock(lay, cp.action);
        int ha = lay.interaction_clock[static_cast<std::size_t>(cp.alpha)];
        int hb = lay.interaction_clock[static_cast<std::size_t>(cp.beta)];
        if (ka <= 0) {
            conj.push_back(f_and({f_clock(hact, ha, CmpOp::Le, 0), f_clock(hact, hb, CmpOp::Le, 0)}));
            continue;
        }
        conj.push_back(f_or({f_and({f_clock(hact, ha, CmpOp::Le, 0), f_clock(ha, hb, CmpOp::Le, -ka)}),
                             f_and({f_clock(hact, hb, CmpOp::Le, 0), f_clock(hb, ha, CmpOp::Le, -ka)})}));
    }
    return f_and(std::move(conj));
}

FormulaP build_S_canonical(const SystemModel& m, const ClockLayout& lay, const KMap& k) {
    if (!m.symmetry) throw std::runtime_error("S^c requires a symmetry declaration");
    const SymmetryDecl& sym = *m.symmetry;
    auto class_index = [&](int interaction) -> int {
        for (auto& p : m.gamma[static_cast<std::size_t>(interaction)].participants)
            for (std::size_t i = 0; i < sym.cls.size(); ++i)
                if (sym.cls[i] == p.instance) return static_cast<int>(i);
        return -1;
    };
    std::vector<FormulaP> conj;
    for (auto& cp : conflict_pairs(m)) {
        auto it = k.find(cp.action);
        std::int64_t ka = it == k.end() ? 0 : it->second;
        if (sym.serialize && cp.action.instance == sym.controller) {
            auto ks = k.find(*sym.serialize);
            if (ks != k.end()) ka = ks->second;
        }
        if (ka <= 0) continue;
        int ha = lay.interaction_clock[static_cast<std::size_t>(cp.alpha)];
        int hb = lay.interaction_clock[static_cast<std::size_t>(cp.beta)];
        int ci_a = class_index(cp.alpha);
        int ci_b = class_index(cp.beta);
        if (cp.action.instance != sym.controller || ci_a < 0 || ci_b < 0 || ci_a == ci_b) {
            conj.push_back(f_or({f_clock(ha, hb, CmpOp::Ge, ka), f_clock(hb, ha, CmpOp::Ge, ka)}));
            continue;
        }
        if (ci_a > ci_b) std::swap(ha, hb);
        // In a canonical execution the lower-indexed interaction fired last
        // no earlier than k_a before the higher-indexed one; pairs where the
        // later one has not fired at all are exempt.
        conj.push_back(f_or({f_clock(ha, hb, CmpOp::Ge, ka), f_clock(hb, lay.h0, CmpOp::Gt, 0)}));
    }
    return f_and(std::move(conj));
}

std::vector<ActionRef> preceding_actions(const SystemModel& m, const ActionRef& a) {
    const Component& c = m.instances[static_cast<std::size_t>(a.instance)];
    std::set<int> prec;
    for (auto& ea : c.edges) {
        if (ea.action != a.action) continue;
        for (auto& ep : c.edges)
            if (ep.dst == ea.src && ep.action >= 0) prec.insert(ep.action);
    }
    std::vector<ActionRef> out;
    for (int p : prec) out.push_back({a.instance, p});
    return out;
}

std::vector<FormulaP> prec_refinements(const SystemModel& m, const ClockLayout& lay) {
    std::vector<FormulaP> out;
    for (auto& [a, inters] : conflicts(m)) {
        if (inters.size() < 2) continue;
        const Component& c = m.instances[static_cast<std::size_t>(a.instance)];
        // Only useful when the action is enabled at the initial location;
        // otherwise CI implies the refinement already.
        Dbm init = from_constraint(c.initial_constraint, static_cast<int>(c.clocks.size()) + 1);
        init = time_succ(c, c.initial_location, std::move(init));
        bool enabled_initially = false;
        for (auto& e : c.edges) {
            if (e.action != a.action || e.src != c.initial_location) continue;
            Dbm z = init;
            z.intersect(from_constraint(e.guard, z.dim()));
            if (!z.is_empty()) enabled_initially = true;
        }
        if (!enabled_initially) continue;
        std::vector<FormulaP> prec_fired;
        for (auto& p : preceding_actions(m, a))
            prec_fired.push_back(f_clock(hclock(lay, p), lay.h0, CmpOp::Le, 0));
        FormulaP consequent = f_or(std::move(prec_fired));  // empty -> false
        for (std::size_t i = 0; i < inters.size(); ++i)
            for (std::size_t j = i + 1; j < inters.size(); ++j) {
                FormulaP fired_i =
                    f_clock(lay.interaction_clock[static_cast<std::size_t>(inters[i])], lay.h0,
                            CmpOp::Le, 0);
                FormulaP fired_j =
                    f_clock(lay.interaction_clock[static_cast<std::size_t>(inters[j])], lay.h0,
                            CmpOp::Le, 0);
                out.push_back(f_implies(f_and({fired_i, fired_j}), consequent));
            }
    }
    return out;
}

}  // namespace tinv
