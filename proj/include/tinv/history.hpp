#ifndef TINV_HISTORY_HPP
#define TINV_HISTORY_HPP

#include "tinv/model.hpp"

namespace tinv {

// Extends a component with action history clocks: adds h0 and one h_a per
// action, makes every a-edge additionally reset h_a, and strengthens the
// initial constraint with h0 = 0 and h_a > 0 for every action. Guards and
// time progress conditions are untouched. Throws if already extended.
void extend_with_action_clocks(Component& c);

// Result of extending a whole system: every instance gains action history
// clocks; when with_interactions is set an auxiliary component holding one
// self-loop per interaction (resetting that interaction's history clock) is
// appended and every interaction gains its action.
struct ExtendedSystem {
    SystemModel model;
    int bstar_instance = -1;  // index into model.instances, or -1
};

ExtendedSystem extend_system(const SystemModel& m, bool with_interactions);

// Adds a fresh observer clock reset on every edge labelled `action`; used by
// the exact separation-constant mode. Returns the local clock index.
int add_observer_clock(Component& c, int action);

}  // namespace tinv

#endif
