#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tinv/history.hpp"
#include "tinv/model.hpp"
#include "tinv/solver.hpp"
#include "tinv/zonegraph.hpp"

using namespace tinv;

namespace {
std::string models_dir = TINV_MODELS_DIR;
SystemModel load(const std::string& name) { return parse_model_file(models_dir + "/" + name); }
}  // namespace

TEST_CASE("action-clock extension of the controller") {
    SystemModel m = load("worker_controller_1.tinv");
    Component c = m.instances[0];
    extend_with_action_clocks(c);
    CHECK(c.clocks.size() == 4);  // x, h0, h_a, h_c
    CHECK(c.h0_clock == 1);
    // the a-edge resets x and h_a
    const Edge& a_edge = c.edges[1];
    REQUIRE(a_edge.resets.size() == 2);
    CHECK(a_edge.resets[0] == 0);
    CHECK(a_edge.resets[1] == c.action_clock[0]);
    // tau edge gains no history reset
    CHECK(c.edges[0].resets.size() == 1);
    // initial constraint: ... and h0 = 0 and h_a > 0 and h_c > 0
    int h0_atoms = 0, strict_atoms = 0;
    for (auto& at : c.initial_constraint) {
        if (at.lhs == c.h0_clock && at.op == CmpOp::Eq && at.ct == 0) ++h0_atoms;
        if (at.op == CmpOp::Gt && at.ct == 0) ++strict_atoms;
    }
    CHECK(h0_atoms == 1);
    CHECK(strict_atoms == 2);
    // h0 is never reset and never appears in guards or tpc
    for (auto& e : c.edges) {
        for (int r : e.resets) CHECK(r != c.h0_clock);
        for (auto& g : e.guard) {
            CHECK(g.lhs != c.h0_clock);
            CHECK(g.rhs != c.h0_clock);
        }
    }
    for (auto& g : c.tpc)
        for (auto& at : g) CHECK(at.lhs != c.h0_clock);
    // every extended edge resets exactly one more clock than before
    const Component& plain = m.instances[0];
    for (std::size_t e = 0; e < c.edges.size(); ++e) {
        std::size_t extra = c.edges[e].action >= 0 ? 1 : 0;
        CHECK(c.edges[e].resets.size() == plain.edges[e].resets.size() + extra);
    }
}

TEST_CASE("a component without actions only gains h0") {
    SystemModel m = parse_model(R"(
component A
  clock x
  location l0 initial
  location l1
  edge l0 -> l1 on tau guard x >= 1
end
system
  instance a A
end
)");
    Component c = m.instances[0];
    extend_with_action_clocks(c);
    CHECK(c.clocks.size() == 2);  // x, h0
    CHECK(c.h0_clock == 1);
}

TEST_CASE("extending twice is an error") {
    SystemModel m = load("worker_controller_1.tinv");
    Component c = m.instances[0];
    extend_with_action_clocks(c);
    CHECK_THROWS_AS(extend_with_action_clocks(c), std::logic_error);
}

TEST_CASE("interaction-clock extension adds B* and rewrites gamma") {
    SystemModel m = load("worker_controller_2.tinv");
    ExtendedSystem ex = extend_system(m, true);
    REQUIRE(ex.bstar_instance == 3);
    const Component& b = ex.model.instances[3];
    CHECK(b.locations.size() == 1);
    CHECK(b.edges.size() == 4);  // one self-loop per interaction
    for (std::size_t k = 0; k < b.edges.size(); ++k) {
        CHECK(b.edges[k].src == 0);
        CHECK(b.edges[k].dst == 0);
        REQUIRE(b.edges[k].resets.size() == 1);
        CHECK(b.edges[k].resets[0] == static_cast<int>(k));
    }
    // every interaction gained the B* action
    for (auto& alpha : ex.model.gamma)
        CHECK(alpha.participants.back().instance == ex.bstar_instance);
}

TEST_CASE("gamma = empty set gives an edge-free B*") {
    SystemModel m = parse_model(R"(
component A
  location l0 initial
end
system
  instance a A
end
)");
    ExtendedSystem ex = extend_system(m, true);
    CHECK(ex.model.instances.back().edges.empty());
}

TEST_CASE("single interaction gives one clock and one loop") {
    SystemModel m = parse_model(R"(
component A
  location l0 initial
  location l1
  edge l0 -> l1 on p
end
component B
  location k0 initial
  location k1
  edge k0 -> k1 on q
end
system
  instance a A
  instance b B
  interaction pq = a.p | b.q
end
)");
    ExtendedSystem ex = extend_system(m, true);
    const Component& bstar = ex.model.instances.back();
    CHECK(bstar.clocks.size() == 1);
    CHECK(bstar.edges.size() == 1);
}

TEST_CASE("desk-scale bisimulation: ordinary projections agree") {
    SystemModel m = load("worker_controller_1.tinv");
    ClockLayout lay = build_layout(m);
    Engine eng(m, lay);
    ExtendedSystem ex = extend_system(m, false);
    for (int inst = 0; inst < 2; ++inst) {
        const Component& plain = m.instances[static_cast<std::size_t>(inst)];
        const Component& hist = ex.model.instances[static_cast<std::size_t>(inst)];
        ZoneGraph gp = reach(plain);
        ZoneGraph gh = reach(hist);
        auto map_p = local_clock_map(m, lay, inst, plain);
        std::vector<int> keep{0};
        for (std::size_t x = 0; x < hist.clocks.size(); ++x)
            if (hist.clock_kinds[x] == ClockKind::Ordinary) keep.push_back(static_cast<int>(x) + 1);
        for (std::size_t l = 0; l < plain.locations.size(); ++l) {
            std::vector<FormulaP> a, b;
            for (auto& s : gp.states)
                if (s.location == static_cast<int>(l)) a.push_back(zone_to_formula(s.zone, map_p));
            for (auto& s : gh.states)
                if (s.location == static_cast<int>(l))
                    b.push_back(zone_to_formula(s.zone.project(keep), map_p));
            CHECK(eng.equivalent(f_or(std::move(a)), f_or(std::move(b))));
        }
    }
}

TEST_CASE("observer clocks reset on the requested action") {
    SystemModel m = load("worker_controller_1.tinv");
    Component c = m.instances[0];
    int obs = add_observer_clock(c, 0);  // action a
    for (auto& e : c.edges) {
        bool has = std::find(e.resets.begin(), e.resets.end(), obs) != e.resets.end();
        CHECK(has == (e.action == 0));
    }
}
