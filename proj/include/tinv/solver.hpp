#ifndef TINV_SOLVER_HPP
#define TINV_SOLVER_HPP

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "tinv/dbm.hpp"
#include "tinv/formula.hpp"
#include "tinv/model.hpp"

namespace tinv {

enum class SatVerdict { Sat, Unsat, Budget };

struct WitnessCube {
    std::vector<int> locations;  // per instance, -1 when unconstrained
    Dbm zone;                    // over the global clock layout
};

struct SatResult {
    SatVerdict verdict = SatVerdict::Unsat;
    std::optional<WitnessCube> witness;
    std::int64_t cubes = 0;
};

struct EngineOptions {
    std::int64_t cube_budget = 1000000;
};

// DNF-over-DBM satisfiability for the formula language: NNF, location
// case-split per instance, difference atoms pushed into a DBM with
// incremental closure. Deterministic branch order.
class Engine {
public:
    Engine(const SystemModel& m, const ClockLayout& lay, EngineOptions opts = {});

    SatResult is_satisfiable(const FormulaP& f) const;
    // sat(lhs /\ not rhs); Unsat means the implication is valid.
    SatResult implication_counterexample(const FormulaP& lhs, const FormulaP& rhs) const;
    bool is_valid_implication(const FormulaP& lhs, const FormulaP& rhs) const;  // throws on budget
    bool equivalent(const FormulaP& f, const FormulaP& g) const;

    // Enumerates all satisfiable cubes; the callback returns false to stop.
    SatResult for_each_cube(const FormulaP& f,
                            const std::function<bool(const WitnessCube&)>& cb) const;

    // Exact existential projection: DNF, drop the clocks per cube, rebuild.
    FormulaP project_clocks(const FormulaP& f, const std::vector<int>& drop) const;

    FormulaP nnf(const FormulaP& f, bool positive) const;

    const SystemModel& model() const { return *m_; }
    const ClockLayout& layout() const { return *lay_; }

private:
    const SystemModel* m_;
    const ClockLayout* lay_;
    EngineOptions opts_;
};

std::string witness_to_string(const WitnessCube& w, const SystemModel& m, const ClockLayout& lay);

// ── SMT-LIB2 backend ────────────────────────────────────────────────────────

// QF_LRA encoding: one Bool per (instance, location) with exactly-one side
// conditions, clocks as nonnegative Reals, `(check-sat)` at the end.
std::string export_smtlib(const FormulaP& f, const SystemModel& m, const ClockLayout& lay);

// Runs an external SMT solver on a file; empty result when no solver is
// available. Looks at TINV_SMT_SOLVER, then for z3/cvc5/mathsat on PATH.
std::optional<std::string> find_smt_solver();
std::optional<bool> run_smt_file(const std::string& solver, const std::string& path);

}  // namespace tinv

#endif
