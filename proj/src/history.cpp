#include "tinv/history.hpp"

#include <stdexcept>

namespace tinv {

void extend_with_action_clocks(Component& c) {
    if (c.extended) throw std::logic_error("component '" + c.name + "' is already extended");
    auto add_clock = [&](const std::string& name, ClockKind kind) {
        if (c.find_clock(name) >= 0)
            throw std::runtime_error("history clock name collision: " + name + " in " + c.name);
        c.clocks.push_back(name);
        c.clock_kinds.push_back(kind);
        return static_cast<int>(c.clocks.size()) - 1;
    };
    c.h0_clock = add_clock("h0", ClockKind::SharedH0);
    c.action_clock.assign(c.actions.size(), -1);
    for (std::size_t a = 0; a < c.actions.size(); ++a)
        c.action_clock[a] = add_clock("h_" + c.actions[a], ClockKind::ActionHistory);
    for (auto& e : c.edges)
        if (e.action >= 0) e.resets.push_back(c.action_clock[static_cast<std::size_t>(e.action)]);
    GuardAtom h0;
    h0.lhs = c.h0_clock;
    h0.op = CmpOp::Eq;
    h0.ct = 0;
    c.initial_constraint.push_back(h0);
    for (std::size_t a = 0; a < c.actions.size(); ++a) {
        GuardAtom ha;
        ha.lhs = c.action_clock[a];
        ha.op = CmpOp::Gt;
        ha.ct = 0;
        c.initial_constraint.push_back(ha);
    }
    c.extended = true;
}

ExtendedSystem extend_system(const SystemModel& m, bool with_interactions) {
    ExtendedSystem ex;
    ex.model = m;
    for (auto& inst : ex.model.instances) extend_with_action_clocks(inst);
    if (!with_interactions) return ex;

    // Auxiliary component: a single location with one self-loop per
    // interaction, each resetting that interaction's history clock. Its
    // initial constraint leaves the clocks free.
    Component bstar;
    bstar.name = "bstar";
    bstar.locations.push_back("l*");
    bstar.tpc.emplace_back();
    bstar.initial_location = 0;
    for (std::size_t k = 0; k < ex.model.gamma.size(); ++k) {
        bstar.actions.push_back(ex.model.gamma[k].id);
        bstar.clocks.push_back("h(" + ex.model.gamma[k].id + ")");
        bstar.clock_kinds.push_back(ClockKind::InteractionHistory);
        Edge e;
        e.src = 0;
        e.dst = 0;
        e.action = static_cast<int>(k);
        e.resets.push_back(static_cast<int>(k));
        bstar.edges.push_back(e);
    }
    ex.bstar_instance = static_cast<int>(ex.model.instances.size());
    for (std::size_t k = 0; k < ex.model.gamma.size(); ++k)
        ex.model.gamma[k].participants.push_back({ex.bstar_instance, static_cast<int>(k)});
    ex.model.instances.push_back(std::move(bstar));
    ex.model.instance_names.push_back("bstar");
    ex.model.instance_template.push_back(-1);
    return ex;
}

int add_observer_clock(Component& c, int action) {
    std::string name = "obs";
    while (c.find_clock(name) >= 0) name += "_";
    c.clocks.push_back(name);
    c.clock_kinds.push_back(ClockKind::Observer);
    int idx = static_cast<int>(c.clocks.size()) - 1;
    for (auto& e : c.edges)
        if (e.action == action) e.resets.push_back(idx);
    GuardAtom a;
    a.lhs = idx;
    a.op = CmpOp::Eq;
    a.ct = 0;
    c.initial_constraint.push_back(a);
    return idx;
}

}  // namespace tinv
