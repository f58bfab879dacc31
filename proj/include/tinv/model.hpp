#ifndef TINV_MODEL_HPP
#define TINV_MODEL_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "tinv/formula.hpp"

namespace tinv {

enum class ClockKind { Ordinary, ActionHistory, InteractionHistory, SharedH0, Observer };

// One conjunct of a clock constraint over component-local clock indices.
// rhs = -1 means the constant 0 (plain bound on lhs).
struct GuardAtom {
    int lhs = -1;
    int rhs = -1;
    CmpOp op = CmpOp::Le;
    std::int64_t ct = 0;
};
using Guard = std::vector<GuardAtom>;  // conjunction; empty list is `true`

struct Edge {
    int src = -1;
    int action = -1;  // -1 = tau (internal)
    Guard guard;
    std::vector<int> resets;
    int dst = -1;
};

// A timed automaton. Templates and instantiated copies share this type;
// instances carry their instance name in `name`.
struct Component {
    std::string name;
    std::vector<std::string> locations;
    std::vector<std::string> actions;
    std::vector<std::string> clocks;
    std::vector<ClockKind> clock_kinds;
    std::vector<Edge> edges;
    std::vector<Guard> tpc;  // indexed by location; empty = true
    int initial_location = -1;
    Guard initial_constraint;  // over local clocks
    // Regex-heuristic alphabet projections: (location, sorted action ids).
    std::vector<std::pair<int, std::vector<int>>> projections;

    // History extension bookkeeping.
    bool extended = false;
    int h0_clock = -1;
    std::vector<int> action_clock;  // action -> history clock index, -1 before extension

    int find_location(const std::string& n) const;
    int find_action(const std::string& n) const;
    int find_clock(const std::string& n) const;
    int num_ordinary_clocks() const;

    // Sum of the absolute constants in guards, tpcs and the initial
    // constraint; the extrapolation ceiling for this component's zone graph.
    std::int64_t constant_sum() const;
};

struct ActionRef {
    int instance = -1;
    int action = -1;
    bool operator==(const ActionRef& o) const { return instance == o.instance && action == o.action; }
    bool operator<(const ActionRef& o) const {
        return instance != o.instance ? instance < o.instance : action < o.action;
    }
};

struct Interaction {
    std::string id;
    std::vector<ActionRef> participants;  // sorted, distinct instances
};

struct PropertyDef {
    std::string name;
    FormulaP formula;
    bool uses_history = false;
};

struct SymmetryDecl {
    int controller = -1;
    std::vector<int> cls;  // instance indices, declared order
    std::optional<ActionRef> serialize;
};

struct SystemModel {
    std::vector<Component> templates;
    std::vector<std::string> template_names;

    std::vector<Component> instances;
    std::vector<std::string> instance_names;
    std::vector<int> instance_template;

    std::vector<Interaction> gamma;
    std::vector<PropertyDef> properties;
    std::optional<SymmetryDecl> symmetry;

    int find_instance(const std::string& n) const;
    int find_interaction(const std::string& id) const;
    const PropertyDef* find_property(const std::string& n) const;
    std::string action_name(const ActionRef& a) const;
};

// ── Global clock layout ─────────────────────────────────────────────────────
// Fixes the global DBM dimension used by formulas, the solver and the oracle:
// index 0 reference, then per-instance ordinary clocks, the shared h0, one
// action-history clock per instance action, one history clock per interaction.

struct ClockLayout {
    struct Info {
        std::string name;
        ClockKind kind = ClockKind::Ordinary;
        int instance = -1;
    };
    std::vector<Info> clocks;  // clocks[0] is the reference, name "0"
    int h0 = -1;
    std::vector<std::vector<int>> ordinary;       // [instance][local ordinary index]
    std::vector<std::vector<int>> action_clock;   // [instance][action]
    std::vector<int> interaction_clock;           // [interaction]

    int dim() const { return static_cast<int>(clocks.size()); }
    const std::string& clock_name(int i) const { return clocks[static_cast<std::size_t>(i)].name; }
};

ClockLayout build_layout(const SystemModel& m);

// Per-instance map from component-local clock index to global index.
// bstar_instance: pass the instance index holding B* (or -1) so its local
// clocks resolve to the interaction-history slots.
std::vector<int> local_clock_map(const SystemModel& m, const ClockLayout& lay, int instance,
                                 const Component& comp, int bstar_instance = -1);

// ── Parsing and printing ────────────────────────────────────────────────────

struct ParseError : std::runtime_error {
    int line;
    int column;
    ParseError(const std::string& msg, int l, int c);
};

SystemModel parse_model(const std::string& text);
SystemModel parse_model_file(const std::string& path);

// Parses a property formula against a model (same grammar as `property`
// lines). Used by the CLI and heavily by tests.
FormulaP parse_formula(const SystemModel& m, const ClockLayout& lay, const std::string& text,
                       bool* uses_history = nullptr);

std::string pretty_print(const SystemModel& m);
std::string formula_to_string(const FormulaP& f, const SystemModel& m, const ClockLayout& lay);

bool models_equal(const SystemModel& a, const SystemModel& b);

// ── Simple structural operations ────────────────────────────────────────────

// Maps each action to the interactions containing it; actions mapped to two
// or more interactions are the conflicting ones.
std::map<ActionRef, std::vector<int>> conflicts(const SystemModel& m);

// Def. 2.3 product automaton over the full location cross-product. Local
// clock order follows local_clock_map for each instance (h0 unified).
// Used by the oracle, never by the compositional pipeline.
struct ComposedSystem {
    Component product;              // locations are flattened tuples
    std::vector<int> strides;       // mixed-radix decode helpers
    std::vector<int> clock_of_global;  // product-local clock -> global layout id
    std::vector<int> edge_interaction;  // product edge -> interaction index or -1 for tau
    std::vector<int> location_of(int flat) const;
};
ComposedSystem compose_syntactically(const SystemModel& m, const ClockLayout& lay,
                                     int bstar_instance = -1, std::size_t max_locations = 2000000);

}  // namespace tinv

#endif
