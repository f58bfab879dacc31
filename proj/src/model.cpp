#include "tinv/model.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace tinv {

int Component::find_location(const std::string& n) const {
    for (std::size_t i = 0; i < locations.size(); ++i)
        if (locations[i] == n) return static_cast<int>(i);
    return -1;
}

int Component::find_action(const std::string& n) const {
    for (std::size_t i = 0; i < actions.size(); ++i)
        if (actions[i] == n) return static_cast<int>(i);
    return -1;
}

int Component::find_clock(const std::string& n) const {
    for (std::size_t i = 0; i < clocks.size(); ++i)
        if (clocks[i] == n) return static_cast<int>(i);
    return -1;
}

int Component::num_ordinary_clocks() const {
    int n = 0;
    for (auto k : clock_kinds)
        if (k == ClockKind::Ordinary) ++n;
    return n;
}

std::int64_t Component::constant_sum() const {
    std::int64_t s = 0;
    auto add = [&s](const Guard& g) {
        for (auto& a : g) s += std::llabs(a.ct);
    };
    for (auto& e : edges) add(e.guard);
    for (auto& g : tpc) add(g);
    add(initial_constraint);
    return s;
}

int SystemModel::find_instance(const std::string& n) const {
    for (std::size_t i = 0; i < instance_names.size(); ++i)
        if (instance_names[i] == n) return static_cast<int>(i);
    return -1;
}

int SystemModel::find_interaction(const std::string& id) const {
    for (std::size_t i = 0; i < gamma.size(); ++i)
        if (gamma[i].id == id) return static_cast<int>(i);
    return -1;
}

const PropertyDef* SystemModel::find_property(const std::string& n) const {
    for (auto& p : properties)
        if (p.name == n) return &p;
    return nullptr;
}

std::string SystemModel::action_name(const ActionRef& a) const {
    return instance_names[static_cast<std::size_t>(a.instance)] + "." +
           instances[static_cast<std::size_t>(a.instance)].actions[static_cast<std::size_t>(a.action)];
}

ClockLayout build_layout(const SystemModel& m) {
    ClockLayout lay;
    lay.clocks.push_back({"0", ClockKind::Ordinary, -1});
    lay.ordinary.resize(m.instances.size());
    lay.action_clock.resize(m.instances.size());
    for (std::size_t i = 0; i < m.instances.size(); ++i) {
        const Component& c = m.instances[i];
        for (std::size_t x = 0; x < c.clocks.size(); ++x) {
            if (c.clock_kinds[x] != ClockKind::Ordinary) continue;
            lay.ordinary[i].push_back(lay.dim());
            lay.clocks.push_back({m.instance_names[i] + "." + c.clocks[x], ClockKind::Ordinary,
                                  static_cast<int>(i)});
        }
    }
    lay.h0 = lay.dim();
    lay.clocks.push_back({"h0", ClockKind::SharedH0, -1});
    for (std::size_t i = 0; i < m.instances.size(); ++i) {
        const Component& c = m.instances[i];
        lay.action_clock[i].resize(c.actions.size(), -1);
        for (std::size_t a = 0; a < c.actions.size(); ++a) {
            lay.action_clock[i][a] = lay.dim();
            lay.clocks.push_back({"h(" + m.instance_names[i] + "." + c.actions[a] + ")",
                                  ClockKind::ActionHistory, static_cast<int>(i)});
        }
    }
    lay.interaction_clock.resize(m.gamma.size(), -1);
    for (std::size_t k = 0; k < m.gamma.size(); ++k) {
        lay.interaction_clock[k] = lay.dim();
        lay.clocks.push_back({"h(" + m.gamma[k].id + ")", ClockKind::InteractionHistory, -1});
    }
    return lay;
}

std::vector<int> local_clock_map(const SystemModel& m, const ClockLayout& lay, int instance,
                                 const Component& comp, int bstar_instance) {
    std::vector<int> map(comp.clocks.size(), -1);
    int ord = 0;
    for (std::size_t x = 0; x < comp.clocks.size(); ++x) {
        switch (comp.clock_kinds[x]) {
            case ClockKind::Ordinary:
            case ClockKind::Observer:
                if (instance == bstar_instance) {
                    // B*'s own clocks are the interaction history clocks.
                    int k = -1;
                    for (std::size_t g = 0; g < m.gamma.size(); ++g)
                        if ("h(" + m.gamma[g].id + ")" == comp.clocks[x]) k = static_cast<int>(g);
                    if (k < 0) throw std::logic_error("unmapped B* clock " + comp.clocks[x]);
                    map[x] = lay.interaction_clock[static_cast<std::size_t>(k)];
                } else {
                    map[x] = lay.ordinary[static_cast<std::size_t>(instance)][static_cast<std::size_t>(ord)];
                }
                ++ord;
                break;
            case ClockKind::SharedH0:
                map[x] = lay.h0;
                break;
            case ClockKind::ActionHistory: {
                int a = -1;
                for (std::size_t ai = 0; ai < comp.actions.size(); ++ai)
                    if (comp.action_clock[ai] == static_cast<int>(x)) a = static_cast<int>(ai);
                if (a < 0) throw std::logic_error("unmapped history clock " + comp.clocks[x]);
                map[x] = lay.action_clock[static_cast<std::size_t>(instance)][static_cast<std::size_t>(a)];
                break;
            }
            case ClockKind::InteractionHistory: {
                int k = -1;
                for (std::size_t g = 0; g < m.gamma.size(); ++g)
                    if ("h(" + m.gamma[g].id + ")" == comp.clocks[x]) k = static_cast<int>(g);
                if (k < 0) throw std::logic_error("unmapped interaction clock " + comp.clocks[x]);
                map[x] = lay.interaction_clock[static_cast<std::size_t>(k)];
                break;
            }
        }
    }
    return map;
}

std::map<ActionRef, std::vector<int>> conflicts(const SystemModel& m) {
    std::map<ActionRef, std::vector<int>> out;
    for (std::size_t k = 0; k < m.gamma.size(); ++k)
        for (auto& p : m.gamma[k].participants) out[p].push_back(static_cast<int>(k));
    return out;
}

std::vector<int> ComposedSystem::location_of(int flat) const {
    std::vector<int> locs(strides.size());
    for (std::size_t i = 0; i < strides.size(); ++i) {
        locs[i] = flat / strides[i];
        flat %= strides[i];
    }
    return locs;
}

ComposedSystem compose_syntactically(const SystemModel& m, const ClockLayout& lay,
                                     int bstar_instance, std::size_t max_locations) {
    ComposedSystem cs;
    const std::size_t n = m.instances.size();

    std::size_t total = 1;
    for (auto& c : m.instances) {
        total *= c.locations.size();
        if (total > max_locations) throw std::runtime_error("product location limit exceeded");
    }
    // Mixed radix, instance 0 most significant.
    cs.strides.assign(n, 1);
    for (std::size_t i = n; i-- > 1;)
        cs.strides[i - 1] = cs.strides[i] * static_cast<int>(m.instances[i].locations.size());

    Component& p = cs.product;
    p.name = "product";

    // Product clocks: one slot per distinct global clock used by any instance
    // (h0 shared across extended components collapses to one slot).
    std::vector<std::vector<int>> remap(n);  // [instance][local] -> product local
    std::vector<int> global_to_product(static_cast<std::size_t>(lay.dim()), -1);
    for (std::size_t i = 0; i < n; ++i) {
        auto g = local_clock_map(m, lay, static_cast<int>(i), m.instances[i], bstar_instance);
        remap[i].resize(g.size());
        for (std::size_t x = 0; x < g.size(); ++x) {
            int gid = g[x];
            if (global_to_product[static_cast<std::size_t>(gid)] < 0) {
                global_to_product[static_cast<std::size_t>(gid)] = static_cast<int>(p.clocks.size());
                p.clocks.push_back(lay.clock_name(gid));
                p.clock_kinds.push_back(lay.clocks[static_cast<std::size_t>(gid)].kind);
                cs.clock_of_global.push_back(gid);
            }
            remap[i][x] = global_to_product[static_cast<std::size_t>(gid)];
        }
    }

    auto remap_guard = [&](const Guard& g, std::size_t inst) {
        Guard out;
        out.reserve(g.size());
        for (auto a : g) {
            a.lhs = remap[inst][static_cast<std::size_t>(a.lhs)];
            if (a.rhs >= 0) a.rhs = remap[inst][static_cast<std::size_t>(a.rhs)];
            out.push_back(a);
        }
        return out;
    };

    // Locations, tpc, initial configuration.
    p.locations.resize(total);
    p.tpc.resize(total);
    for (std::size_t flat = 0; flat < total; ++flat) {
        auto locs = cs.location_of(static_cast<int>(flat));
        std::string nm;
        Guard tpc;
        for (std::size_t i = 0; i < n; ++i) {
            if (i) nm += "|";
            nm += m.instances[i].locations[static_cast<std::size_t>(locs[i])];
            Guard g = remap_guard(m.instances[i].tpc[static_cast<std::size_t>(locs[i])], i);
            tpc.insert(tpc.end(), g.begin(), g.end());
        }
        p.locations[flat] = nm;
        p.tpc[flat] = tpc;
    }
    int init_flat = 0;
    for (std::size_t i = 0; i < n; ++i)
        init_flat += m.instances[i].initial_location * cs.strides[i];
    p.initial_location = init_flat;
    for (std::size_t i = 0; i < n; ++i) {
        Guard g = remap_guard(m.instances[i].initial_constraint, i);
        p.initial_constraint.insert(p.initial_constraint.end(), g.begin(), g.end());
    }

    // Discrete structure: tau edges (unary) plus one product edge per
    // interaction, per tuple of participating edges, per context of the
    // non-participating instances.
    std::vector<std::size_t> other;  // scratch
    auto emit_edges = [&](const std::vector<std::pair<std::size_t, const Edge*>>& tuple,
                          int interaction, const std::string& label) {
        // Instances not in the tuple keep their location: enumerate contexts.
        std::vector<bool> fixed(n, false);
        int base_src = 0, base_dst = 0;
        Guard guard;
        std::vector<int> resets;
        for (auto& [inst, e] : tuple) {
            fixed[inst] = true;
            base_src += e->src * cs.strides[inst];
            base_dst += e->dst * cs.strides[inst];
            Guard g = remap_guard(e->guard, inst);
            guard.insert(guard.end(), g.begin(), g.end());
            for (int r : e->resets) resets.push_back(remap[inst][static_cast<std::size_t>(r)]);
        }
        other.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (!fixed[i]) other.push_back(i);
        std::vector<int> ctx(other.size(), 0);
        while (true) {
            int off = 0;
            for (std::size_t k = 0; k < other.size(); ++k) off += ctx[k] * cs.strides[other[k]];
            Edge pe;
            pe.src = base_src + off;
            pe.dst = base_dst + off;
            pe.action = interaction >= 0 ? interaction : -1;
            pe.guard = guard;
            pe.resets = resets;
            p.edges.push_back(pe);
            cs.edge_interaction.push_back(interaction);
            (void)label;
            std::size_t k = 0;
            for (; k < other.size(); ++k) {
                if (++ctx[k] < static_cast<int>(m.instances[other[k]].locations.size())) break;
                ctx[k] = 0;
            }
            if (k == other.size()) break;
            if (other.empty()) break;
        }
    };

    // Interaction actions become the product's action alphabet.
    for (auto& a : m.gamma) p.actions.push_back(a.id);

    for (std::size_t i = 0; i < n; ++i)
        for (auto& e : m.instances[i].edges)
            if (e.action < 0) emit_edges({{i, &e}}, -1, "tau");

    for (std::size_t k = 0; k < m.gamma.size(); ++k) {
        const Interaction& alpha = m.gamma[k];
        // Cartesian product over each participant's edges with that action.
        std::vector<std::vector<const Edge*>> choices;
        for (auto& part : alpha.participants) {
            std::vector<const Edge*> es;
            const Component& c = m.instances[static_cast<std::size_t>(part.instance)];
            for (auto& e : c.edges)
                if (e.action == part.action) es.push_back(&e);
            choices.push_back(std::move(es));
        }
        bool any_empty = std::any_of(choices.begin(), choices.end(),
                                     [](auto& v) { return v.empty(); });
        if (any_empty) continue;
        std::vector<std::size_t> pick(choices.size(), 0);
        while (true) {
            std::vector<std::pair<std::size_t, const Edge*>> tuple;
            for (std::size_t j = 0; j < choices.size(); ++j)
                tuple.emplace_back(static_cast<std::size_t>(alpha.participants[j].instance),
                                   choices[j][pick[j]]);
            emit_edges(tuple, static_cast<int>(k), alpha.id);
            std::size_t j = 0;
            for (; j < choices.size(); ++j) {
                if (++pick[j] < choices[j].size()) break;
                pick[j] = 0;
            }
            if (j == choices.size()) break;
        }
    }

    return cs;
}

}  // namespace tinv
