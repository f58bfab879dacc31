#ifndef TINV_TRAPS_HPP
#define TINV_TRAPS_HPP

#include <bitset>
#include <vector>

#include "tinv/formula.hpp"
#include "tinv/model.hpp"

namespace tinv {

// 1-safe Petri net induced by a system: one place per instance location, one
// transition per interaction and combination of participating edges (tau
// edges become unary transitions).
struct PetriNet {
    static constexpr std::size_t kMaxPlaces = 192;
    using PlaceSet = std::bitset<kMaxPlaces>;

    struct Transition {
        PlaceSet pre;
        PlaceSet post;
    };

    std::size_t num_places = 0;
    std::vector<std::pair<int, int>> place_info;  // (instance, location)
    std::vector<Transition> transitions;
    PlaceSet initially_marked;

    int place(int instance, int location) const;
};

PetriNet induce_net(const SystemModel& m);

struct TrapLimits {
    std::size_t max_traps = 10000;
};

// All subset-minimal traps intersecting the initial marking,
// deterministically ordered.
std::vector<PetriNet::PlaceSet> minimal_marked_traps(const PetriNet& net,
                                                     const TrapLimits& limits = {});

// II(gamma): conjunction over traps of the disjunction of their location
// predicates.
FormulaP interaction_invariant(const PetriNet& net, const std::vector<PetriNet::PlaceSet>& traps);

std::string dump_traps(const SystemModel& m, const PetriNet& net,
                       const std::vector<PetriNet::PlaceSet>& traps);

}  // namespace tinv

#endif
