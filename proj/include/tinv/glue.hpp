#ifndef TINV_GLUE_HPP
#define TINV_GLUE_HPP

#include <cstdint>
#include <map>
#include <vector>

#include "tinv/formula.hpp"
#include "tinv/model.hpp"
#include "tinv/zonegraph.hpp"

namespace tinv {

// gamma (-) alpha: removes alpha's actions from every interaction, dropping
// interactions swallowed whole. Participant sets only; ids are synthesized.
std::vector<Interaction> gamma_minus(const std::vector<Interaction>& gamma,
                                     const Interaction& alpha);

struct GlueLimits {
    std::size_t max_atoms = 200000;
};

// Interaction inequalities E(gamma) over action history clocks. With
// simplify set, action-disjoint groups are split and fully disjoint
// interactions collapse to plain equalities.
FormulaP build_E(const SystemModel& m, const ClockLayout& lay,
                 const std::vector<Interaction>& gamma, bool simplify = true,
                 const GlueLimits& limits = {});

// E*(gamma): h_a = min over interactions containing a of h_alpha, with min
// expanded into <= conjuncts plus an = disjunction.
FormulaP build_E_star(const SystemModel& m, const ClockLayout& lay);

// Separation constants k_a (minimum time between consecutive occurrences of
// an action). 0 means unknown; such actions contribute no constraints.
std::int64_t separation_constant(const Component& c, int action);
// Observer-clock zone graph variant; falls back to 0 when the action cannot
// repeat.
std::int64_t separation_constant_exact(const Component& c, int action,
                                       const ReachLimits& limits = {});

using KMap = std::map<ActionRef, std::int64_t>;
KMap separation_constants(const SystemModel& m, bool exact = false);

// S(gamma): |h_alpha - h_beta| >= k_a for interactions conflicting on a.
FormulaP build_S(const SystemModel& m, const ClockLayout& lay, const KMap& k);
// S*(gamma): the inductive strengthening carrying h_a <= h_alpha facts.
FormulaP build_S_star(const SystemModel& m, const ClockLayout& lay, const KMap& k);
// Symmetry-reduced separation: conflicting pairs on controller actions are
// ordered by class index instead of using absolute values. Pairs where the
// later interaction has not fired yet are exempted (h > h0 disjunct).
FormulaP build_S_canonical(const SystemModel& m, const ClockLayout& lay, const KMap& k);

// Prec(a): actions that can immediately precede a in the owning component.
std::vector<ActionRef> preceding_actions(const SystemModel& m, const ActionRef& a);

// h0-based refinements for conflicting actions enabled at the initial
// location: (h_a1 <= h0 and h_a2 <= h0) implies some predecessor fired.
std::vector<FormulaP> prec_refinements(const SystemModel& m, const ClockLayout& lay);

}  // namespace tinv

#endif
