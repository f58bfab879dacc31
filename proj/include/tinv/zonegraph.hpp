#ifndef TINV_ZONEGRAPH_HPP
#define TINV_ZONEGRAPH_HPP

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "tinv/dbm.hpp"
#include "tinv/formula.hpp"
#include "tinv/model.hpp"

namespace tinv {

struct SymbolicState {
    int location;
    Dbm zone;  // canonical, non-empty, time-closed
};

struct ZoneGraph {
    std::vector<SymbolicState> states;
    // (source state, component edge index, target state)
    std::vector<std::array<int, 3>> edges;
    int initial = 0;
};

struct ReachLimits {
    std::size_t max_states = 100000;
    bool subsumption = true;  // inclusion subsumption; equality dedup when off
};

// Builds the zone from a conjunction of local-clock atoms.
Dbm from_constraint(const Guard& g, int dim);
// Emits one formula atom per non-redundant finite bound of a canonical zone,
// clocks renamed through clock_map (local -> global id).
FormulaP zone_to_formula(const Dbm& z, const std::vector<int>& clock_map);

Dbm time_succ(const Component& c, int location, Dbm z);
// Returns the empty zone when the edge cannot fire.
Dbm disc_succ(const Component& c, const Edge& e, const Dbm& z);
Dbm succ(const Component& c, const Edge& e, int src_location, const Dbm& z,
         const std::vector<std::int64_t>& maxc, std::int64_t diffcap);

// Symbolic reachability with inclusion subsumption, FIFO worklist, edges in
// declaration order. Deterministic.
ZoneGraph reach(const Component& c, const ReachLimits& limits = {});

// CI(B): disjunction over reachable symbolic states of at(l) /\ zone.
FormulaP component_invariant(const ZoneGraph& g, int instance, const std::vector<int>& clock_map);

std::string dump_zone_graph(const ZoneGraph& g, const Component& c);

}  // namespace tinv

#endif
