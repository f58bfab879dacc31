#ifndef TINV_VERIFIER_HPP
#define TINV_VERIFIER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tinv/formula.hpp"
#include "tinv/glue.hpp"
#include "tinv/model.hpp"
#include "tinv/solver.hpp"
#include "tinv/zonegraph.hpp"

namespace tinv {

struct VerifierOptions {
    std::set<std::string> glue{"estar", "sep"};  // of e, estar, sep, sepc, prec, none
    bool heuristic_regex = false;
    bool heuristic_prec = false;
    bool symmetry = false;  // replace sep by the symmetry-reduced form
    bool allow_history_props = false;
    bool exact_k = false;
    std::int64_t cube_budget = 1000000;
    ReachLimits reach;
    GlueLimits glue_limits;
    std::string smt_out;   // export GI /\ not(phi) here when non-empty
    bool use_smt = false;  // discharge with an external solver
};

struct GlobalInvariant {
    FormulaP gi;
    std::vector<FormulaP> ci;            // per instance (B* excluded)
    FormulaP ii;
    std::vector<std::pair<std::string, FormulaP>> glue;  // family name -> formula
    KMap k;
    std::vector<std::string> notes;
};

enum class Verdict { Proved, Unknown, Budget, Error };

struct VerificationReport {
    std::string property;
    Verdict verdict = Verdict::Error;
    std::string message;
    std::optional<WitnessCube> witness;  // potential counter-example only
    std::vector<std::pair<std::string, double>> timings_ms;
    std::vector<std::pair<std::string, std::size_t>> sizes;
    std::int64_t cubes = 0;
    int exit_code() const;
};

GlobalInvariant build_global_invariant(const SystemModel& m, const ClockLayout& lay,
                                       const VerifierOptions& opts,
                                       const FormulaP& property_for_symmetry = nullptr);

VerificationReport check(const SystemModel& m, const ClockLayout& lay, const std::string& prop_name,
                         const FormulaP& property, bool property_uses_history,
                         const VerifierOptions& opts);

// Enabledness per the backward-closure construction, and deadlock freedom as
// the disjunction over interactions (unary internal transitions included).
FormulaP enabled_predicate(const SystemModel& m, const ClockLayout& lay, const Interaction& alpha);
FormulaP deadlock_freedom_property(const SystemModel& m, const ClockLayout& lay);

// ── Explicit-product oracle ─────────────────────────────────────────────────

struct OracleOptions {
    bool extended = false;   // action history clocks
    bool with_bstar = false; // interaction history clocks
    ReachLimits reach;
    std::size_t max_locations = 2000000;
};

struct Oracle {
    ComposedSystem cs;
    ZoneGraph graph;
};

Oracle oracle_reach(const SystemModel& m, const ClockLayout& lay, const OracleOptions& opts = {});

// Does the formula hold at every reachable symbolic state?
struct OracleVerdict {
    bool holds = true;
    int state = -1;
    std::string description;
};
OracleVerdict oracle_check(const SystemModel& m, const ClockLayout& lay, const FormulaP& f,
                           const OracleOptions& opts = {});
OracleVerdict oracle_check_on(const Oracle& o, const Engine& eng, const FormulaP& f);

// Inductiveness harness: explores the extended system (with interaction
// clocks) from initial states constrained by the glue formulas, then checks
// every reached state still satisfies each of them.
OracleVerdict oracle_glue_inductive(const SystemModel& m, const ClockLayout& lay,
                                    const std::vector<std::pair<std::string, FormulaP>>& glue,
                                    const ReachLimits& limits = {});

}  // namespace tinv

#endif
