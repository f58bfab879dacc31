#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "tinv/history.hpp"
#include "tinv/model.hpp"
#include "tinv/solver.hpp"
#include "tinv/verifier.hpp"

using namespace tinv;

namespace {
std::string models_dir = TINV_MODELS_DIR;
SystemModel load(const std::string& name) { return parse_model_file(models_dir + "/" + name); }

VerificationReport run(const SystemModel& m, const ClockLayout& lay, const std::string& prop,
                       VerifierOptions opts) {
    const PropertyDef* p = m.find_property(prop);
    REQUIRE(p != nullptr);
    return check(m, lay, p->name, p->formula, p->uses_history, opts);
}
}  // namespace

TEST_CASE("running example n=1: safe is proved with E, unknown without glue") {
    SystemModel m = load("worker_controller_1.tinv");
    ClockLayout lay = build_layout(m);
    VerifierOptions with_e;
    with_e.glue = {"e"};
    auto rep = run(m, lay, "safe", with_e);
    CHECK(rep.verdict == Verdict::Proved);
    CHECK(rep.exit_code() == 0);

    VerifierOptions none;
    none.glue = {};
    auto rep2 = run(m, lay, "safe", none);
    CHECK(rep2.verdict == Verdict::Unknown);
    CHECK(rep2.exit_code() == 1);
    CHECK(rep2.witness.has_value());
}

TEST_CASE("running example n=1: deadlock freedom with E") {
    SystemModel m = load("worker_controller_1.tinv");
    ClockLayout lay = build_layout(m);
    FormulaP dlf = deadlock_freedom_property(m, lay);
    VerifierOptions with_e;
    with_e.glue = {"e"};
    auto rep = check(m, lay, "deadlock-freedom", dlf, false, with_e);
    CHECK(rep.verdict == Verdict::Proved);
}

TEST_CASE("monotone strengthening: adding glue never loses a proof") {
    SystemModel m = load("worker_controller_1.tinv");
    ClockLayout lay = build_layout(m);
    VerifierOptions e_only;
    e_only.glue = {"e"};
    VerifierOptions more;
    more.glue = {"e", "estar", "sep"};
    CHECK(run(m, lay, "safe", e_only).verdict == Verdict::Proved);
    CHECK(run(m, lay, "safe", more).verdict == Verdict::Proved);
}

TEST_CASE("history properties need the opt-in flag") {
    SystemModel m = parse_model(R"(
component A
  clock x
  location l0 initial
  location l1
  edge l0 -> l1 on p guard x >= 2
end
system
  instance a A
  interaction up = a.p
  property hp: h(a.p) - h0 <= 0 implies h(a.p) - h0 <= 0
end
)");
    ClockLayout lay = build_layout(m);
    VerifierOptions opts;
    auto rep = run(m, lay, "hp", opts);
    CHECK(rep.verdict == Verdict::Error);
    opts.allow_history_props = true;
    auto rep2 = run(m, lay, "hp", opts);
    CHECK(rep2.verdict == Verdict::Proved);
}

TEST_CASE("oracle confirms safe on every reachable state, n=1") {
    SystemModel m = load("worker_controller_1.tinv");
    ClockLayout lay = build_layout(m);
    auto v = oracle_check(m, lay, m.find_property("safe")->formula);
    CHECK(v.holds);
    // an injected bad property is refuted
    FormulaP bad = parse_formula(m, lay, "ctrl.x <= 2", nullptr);
    auto v2 = oracle_check(m, lay, bad);
    CHECK_FALSE(v2.holds);
}

TEST_CASE("oracle: E, E*, S* are inductive on the running example") {
    for (const char* name : {"worker_controller_1.tinv", "worker_controller_2.tinv"}) {
        SystemModel m = load(name);
        ClockLayout lay = build_layout(m);
        auto k = separation_constants(m);
        std::vector<std::pair<std::string, FormulaP>> glue;
        glue.emplace_back("E", build_E(m, lay, m.gamma));
        glue.emplace_back("E*", build_E_star(m, lay));
        glue.emplace_back("S*", build_S_star(m, lay, k));
        auto v = oracle_glue_inductive(m, lay, glue);
        CHECK_MESSAGE(v.holds, name, ": ", v.description);
    }
}

TEST_CASE("no false proofs at small scale: proved properties hold in the oracle") {
    SystemModel m = load("worker_controller_1.tinv");
    ClockLayout lay = build_layout(m);
    VerifierOptions opts;
    opts.glue = {"e"};
    auto rep = run(m, lay, "safe", opts);
    REQUIRE(rep.verdict == Verdict::Proved);
    CHECK(oracle_check(m, lay, m.find_property("safe")->formula).holds);
}

TEST_CASE("GI projected to ordinary clocks holds on the plain oracle") {
    SystemModel m = load("worker_controller_1.tinv");
    ClockLayout lay = build_layout(m);
    VerifierOptions opts;
    opts.glue = {"e"};
    GlobalInvariant gi = build_global_invariant(m, lay, opts);
    Engine eng(m, lay);
    std::vector<int> drop;
    for (int c = 1; c < lay.dim(); ++c)
        if (lay.clocks[static_cast<std::size_t>(c)].kind != ClockKind::Ordinary) drop.push_back(c);
    FormulaP projected = eng.project_clocks(gi.gi, drop);
    auto v = oracle_check(m, lay, projected);
    CHECK_MESSAGE(v.holds, v.description);
}

TEST_CASE("report carries sizes and timings") {
    SystemModel m = load("worker_controller_1.tinv");
    ClockLayout lay = build_layout(m);
    VerifierOptions opts;
    opts.glue = {"e"};
    auto rep = run(m, lay, "safe", opts);
    CHECK(rep.sizes.size() >= 3);
    CHECK_FALSE(rep.timings_ms.empty());
    bool found_ci = false;
    for (auto& [name, n] : rep.sizes)
        if (name.find("CI(ctrl)") != std::string::npos) {
            found_ci = true;
            CHECK(n == 5);
        }
    CHECK(found_ci);
}

TEST_CASE("symmetry requires a declaration and a symmetric property") {
    SystemModel m = load("worker_controller_2.tinv");  // no symmetry block
    ClockLayout lay = build_layout(m);
    VerifierOptions opts;
    opts.glue = {"estar", "sep"};
    opts.symmetry = true;
    auto rep = run(m, lay, "safe", opts);
    CHECK(rep.verdict == Verdict::Error);

    // asymmetric property on a symmetric system is refused
    SystemModel tc = load("temp_controller_2.tinv");
    ClockLayout tlay = build_layout(tc);
    FormulaP asym = parse_formula(tc, tlay, "rod1.x - rod2.x <= 0", nullptr);
    auto rep2 = check(tc, tlay, "asym", asym, false, opts);
    CHECK(rep2.verdict == Verdict::Error);
    CHECK(rep2.message.find("symmetric") != std::string::npos);
}
