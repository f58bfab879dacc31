#include "tinv/zonegraph.hpp"

#include <array>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace tinv {

Dbm from_constraint(const Guard& g, int dim) {
    Dbm z = Dbm::universal(dim);
    for (auto& a : g) {
        int i = a.lhs + 1;  // clock 0 is the reference
        int j = a.rhs >= 0 ? a.rhs + 1 : 0;
        switch (a.op) {
            case CmpOp::Lt: z.constrain(i, j, Bound::lt(a.ct)); break;
            case CmpOp::Le: z.constrain(i, j, Bound::le(a.ct)); break;
            case CmpOp::Ge: z.constrain(j, i, Bound::le(-a.ct)); break;
            case CmpOp::Gt: z.constrain(j, i, Bound::lt(-a.ct)); break;
            case CmpOp::Eq:
                z.constrain(i, j, Bound::le(a.ct));
                z.constrain(j, i, Bound::le(-a.ct));
                break;
        }
    }
    return z;
}

FormulaP zone_to_formula(const Dbm& z, const std::vector<int>& clock_map) {
    if (z.is_empty()) return f_false();
    std::vector<FormulaP> atoms;
    auto global = [&](int i) { return clock_map[static_cast<std::size_t>(i) - 1]; };
    for (int i = 0; i < z.dim(); ++i)
        for (int j = 0; j < z.dim(); ++j) {
            if (i == j) continue;
            Bound b = z.at(i, j);
            if (b.is_infinity()) continue;
            if (i == 0) {
                if (b == Bound::le(0)) continue;  // x >= 0 implicit
                // 0 - x_j <= c, i.e. x_j >= -c
                atoms.push_back(f_clock(global(j), -1, b.is_strict() ? CmpOp::Gt : CmpOp::Ge,
                                        -b.value()));
            } else if (j == 0) {
                atoms.push_back(f_clock(global(i), -1, b.is_strict() ? CmpOp::Lt : CmpOp::Le,
                                        b.value()));
            } else {
                atoms.push_back(f_clock(global(i), global(j),
                                        b.is_strict() ? CmpOp::Lt : CmpOp::Le, b.value()));
            }
        }
    return f_and(std::move(atoms));
}

Dbm time_succ(const Component& c, int location, Dbm z) {
    z.up();
    Dbm tpc = from_constraint(c.tpc[static_cast<std::size_t>(location)], z.dim());
    z.intersect(tpc);
    return z;
}

Dbm disc_succ(const Component& c, const Edge& e, const Dbm& z) {
    Dbm out = z;
    Dbm g = from_constraint(e.guard, z.dim());
    out.intersect(g);
    if (out.is_empty()) return out;
    std::vector<int> resets;
    resets.reserve(e.resets.size());
    for (int r : e.resets) resets.push_back(r + 1);
    out.reset(resets);
    Dbm tpc = from_constraint(c.tpc[static_cast<std::size_t>(e.dst)], z.dim());
    out.intersect(tpc);
    return out;
}

Dbm succ(const Component& c, const Edge& e, int /*src_location*/, const Dbm& z,
         const std::vector<std::int64_t>& maxc, std::int64_t diffcap) {
    Dbm d = disc_succ(c, e, z);
    if (d.is_empty()) return d;
    d = time_succ(c, e.dst, std::move(d));
    d.extrapolate(maxc, diffcap);
    return d;
}

ZoneGraph reach(const Component& c, const ReachLimits& limits) {
    if (c.initial_location < 0) throw std::invalid_argument("component has no initial location");
    const int dim = static_cast<int>(c.clocks.size()) + 1;
    const std::int64_t cap = c.constant_sum();
    std::vector<std::int64_t> maxc(static_cast<std::size_t>(dim), cap);

    ZoneGraph g;
    Dbm init = from_constraint(c.initial_constraint, dim);
    init = time_succ(c, c.initial_location, std::move(init));
    init.extrapolate(maxc, cap);
    if (init.is_empty()) throw std::runtime_error("initial configuration is empty");
    g.states.push_back({c.initial_location, init});
    g.initial = 0;

    std::deque<int> work{0};
    while (!work.empty()) {
        int s = work.front();
        work.pop_front();
        for (std::size_t ei = 0; ei < c.edges.size(); ++ei) {
            const Edge& e = c.edges[ei];
            if (e.src != g.states[static_cast<std::size_t>(s)].location) continue;
            Dbm nz = succ(c, e, e.src, g.states[static_cast<std::size_t>(s)].zone, maxc, cap);
            if (nz.is_empty()) continue;
            int target = -1;
            for (std::size_t t = 0; t < g.states.size(); ++t) {
                if (g.states[t].location != e.dst) continue;
                bool hit = limits.subsumption ? g.states[t].zone.includes(nz)
                                              : g.states[t].zone == nz;
                if (hit) {
                    target = static_cast<int>(t);
                    break;
                }
            }
            if (target < 0) {
                if (g.states.size() >= limits.max_states)
                    throw std::runtime_error("zone graph state limit exceeded");
                g.states.push_back({e.dst, std::move(nz)});
                target = static_cast<int>(g.states.size()) - 1;
                work.push_back(target);
            }
            g.edges.push_back({s, static_cast<int>(ei), target});
        }
    }
    return g;
}

FormulaP component_invariant(const ZoneGraph& g, int instance, const std::vector<int>& clock_map) {
    std::vector<FormulaP> disjuncts;
    for (auto& s : g.states) {
        FormulaP zf = zone_to_formula(s.zone, clock_map);
        disjuncts.push_back(f_and({f_at(instance, s.location), zf}));
    }
    return f_or(std::move(disjuncts));
}

std::string dump_zone_graph(const ZoneGraph& g, const Component& c) {
    std::ostringstream os;
    for (std::size_t i = 0; i < g.states.size(); ++i) {
        os << "state " << i << " " << c.locations[static_cast<std::size_t>(g.states[i].location)]
           << (static_cast<int>(i) == g.initial ? " (initial)" : "") << "\n";
        os << g.states[i].zone.dump(c.clocks);
    }
    for (auto& [s, e, t] : g.edges) {
        const Edge& ed = c.edges[static_cast<std::size_t>(e)];
        os << "edge " << s << " -> " << t << " on "
           << (ed.action < 0 ? "tau" : c.actions[static_cast<std::size_t>(ed.action)]) << "\n";
    }
    return os.str();
}

}  // namespace tinv
