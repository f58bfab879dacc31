#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <fstream>
#include <sstream>

#include "tinv/model.hpp"

using namespace tinv;

namespace {
std::string models_dir = TINV_MODELS_DIR;

SystemModel load(const std::string& name) { return parse_model_file(models_dir + "/" + name); }
}  // namespace

TEST_CASE("worker_controller_1 parses to the expected structure") {
    SystemModel m = load("worker_controller_1.tinv");
    REQUIRE(m.instances.size() == 2);
    CHECK(m.gamma.size() == 2);
    CHECK(m.instance_names[0] == "ctrl");
    const Component& ctrl = m.instances[0];
    CHECK(ctrl.locations.size() == 3);
    CHECK(ctrl.actions.size() == 2);  // a, c; tau is not an action
    CHECK(ctrl.edges.size() == 3);
    CHECK(ctrl.edges[0].action == -1);
    CHECK(ctrl.tpc[1].size() == 1);  // lc1: x <= 4
    const Component& w = m.instances[1];
    CHECK(w.clocks.size() == 1);
    REQUIRE(m.properties.size() == 1);
    CHECK(m.properties[0].name == "safe");
    CHECK_FALSE(m.properties[0].uses_history);
}

TEST_CASE("empty interaction set is fine") {
    SystemModel m = parse_model(R"(
component A
  clock x
  location l0 initial
  init l0 provided x = 0
end
system
  instance a A
end
)");
    CHECK(m.gamma.empty());
    CHECK(m.instances.size() == 1);
}

TEST_CASE("unknown clock is a parse error") {
    CHECK_THROWS_WITH_AS(parse_model(R"(
component A
  clock x
  location l0 initial
  location l1
  edge l0 -> l1 on go guard z >= 1
end
system
  instance a A
end
)"),
                         doctest::Contains("unknown clock 'z'"), ParseError);
}

TEST_CASE("tpc position accepts upper bounds only") {
    CHECK_THROWS_WITH_AS(parse_model(R"(
component A
  clock x
  location l0 initial tpc x >= 1
end
system
  instance a A
end
)"),
                         doctest::Contains("upper bounds"), ParseError);
}

TEST_CASE("rationals are rejected") {
    CHECK_THROWS_AS(parse_model(R"(
component A
  clock x
  location l0 initial
  init l0 provided x = 1.5
end
system
  instance a A
end
)"),
                    ParseError);
}

TEST_CASE("duplicate names are rejected") {
    CHECK_THROWS_WITH_AS(parse_model(R"(
component A
  location l0 initial
  location l0
end
system
  instance a A
end
)"),
                         doctest::Contains("duplicate location"), ParseError);
}

TEST_CASE("an interaction may use at most one action per instance") {
    CHECK_THROWS_WITH_AS(parse_model(R"(
component A
  location l0 initial
  location l1
  edge l0 -> l1 on p
  edge l1 -> l0 on q
end
system
  instance a A
  interaction bad = a.p | a.q
end
)"),
                         doctest::Contains("two actions"), ParseError);
}

TEST_CASE("pretty-print round-trips") {
    for (const char* name : {"worker_controller_1.tinv", "worker_controller_2.tinv",
                             "fischer_2.tinv", "tgc_1.tinv", "temp_controller_2.tinv"}) {
        SystemModel m = load(name);
        SystemModel again = parse_model(pretty_print(m));
        CHECK_MESSAGE(models_equal(m, again), name);
    }
}

TEST_CASE("action namespacing keeps instance alphabets disjoint") {
    SystemModel m = load("worker_controller_2.tinv");
    for (auto& alpha : m.gamma) {
        for (std::size_t i = 0; i + 1 < alpha.participants.size(); ++i)
            CHECK(alpha.participants[i].instance != alpha.participants[i + 1].instance);
    }
    CHECK(m.action_name(m.gamma[0].participants[0]) == "ctrl.a");
}

TEST_CASE("conflicts map actions to their interactions") {
    SystemModel m = load("worker_controller_2.tinv");
    auto conf = conflicts(m);
    int conflicting = 0;
    for (auto& [a, inters] : conf)
        if (inters.size() >= 2) {
            ++conflicting;
            CHECK(a.instance == 0);  // only controller actions conflict
            CHECK(inters.size() == 2);
        }
    CHECK(conflicting == 2);  // a and c

    SystemModel m1 = load("worker_controller_1.tinv");
    for (auto& [a, inters] : conflicts(m1)) CHECK(inters.size() == 1);

    SystemModel empty = parse_model(R"(
component A
  location l0 initial
end
system
  instance a A
end
)");
    CHECK(conflicts(empty).empty());
}

TEST_CASE("formula parser handles the property grammar") {
    SystemModel m = load("worker_controller_1.tinv");
    ClockLayout lay = build_layout(m);
    bool hist = false;
    FormulaP f = parse_formula(m, lay, "(ctrl@lc1 and w1@l1) implies ctrl.x - w1.y <= 0", &hist);
    CHECK_FALSE(hist);
    CHECK(f->kind == Formula::Kind::Implies);
    FormulaP h = parse_formula(m, lay, "h(ctrl.a) - h0 <= 0 or h(ab1) > 0", &hist);
    CHECK(hist);
    std::string printed = formula_to_string(h, m, lay);
    FormulaP again = parse_formula(m, lay, printed, &hist);
    CHECK(formula_to_string(again, m, lay) == printed);
}

TEST_CASE("compose_syntactically builds the Def 2.3 product") {
    SystemModel m = load("worker_controller_1.tinv");
    ClockLayout lay = build_layout(m);
    ComposedSystem cs = compose_syntactically(m, lay);
    CHECK(cs.product.locations.size() == 6);  // 3 x 2
    int tau = 0, sync = 0;
    for (std::size_t e = 0; e < cs.product.edges.size(); ++e)
        (cs.edge_interaction[e] < 0 ? tau : sync)++;
    CHECK(tau == 2);   // controller's initial edge, one per worker location
    CHECK(sync == 2);  // (a|b1) and (c|d1), source locations pinned
    CHECK(cs.product.clocks.size() == 2);
}

TEST_CASE("identity-ish compositions") {
    SystemModel m = parse_model(R"(
component A
  clock x
  location l0 initial
  location l1
  edge l0 -> l1 on p guard x >= 1
  edge l1 -> l0 on q reset x
end
system
  instance a A
  interaction up = a.p
  interaction uq = a.q
end
)");
    ClockLayout lay = build_layout(m);
    ComposedSystem cs = compose_syntactically(m, lay);
    CHECK(cs.product.locations.size() == 2);
    CHECK(cs.product.edges.size() == 2);

    SystemModel m2 = parse_model(R"(
component A
  location l0 initial
  location l1
  edge l0 -> l1 on tau
end
component B
  location k0 initial
end
system
  instance a A
  instance b B
end
)");
    ClockLayout lay2 = build_layout(m2);
    ComposedSystem cs2 = compose_syntactically(m2, lay2);
    CHECK(cs2.product.locations.size() == 2);
    CHECK(cs2.product.edges.size() == 1);
    CHECK(cs2.edge_interaction[0] == -1);
}

TEST_CASE("product clock sets are the union of instance clocks") {
    for (const char* name : {"worker_controller_2.tinv", "fischer_2.tinv", "tgc_1.tinv"}) {
        SystemModel m = load(name);
        ClockLayout lay = build_layout(m);
        ComposedSystem cs = compose_syntactically(m, lay);
        std::size_t want = 0;
        for (auto& c : m.instances) want += c.clocks.size();
        CHECK_MESSAGE(cs.product.clocks.size() == want, name);
    }
}
