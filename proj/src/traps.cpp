#include "tinv/traps.hpp"

#include <algorithm>
#include <set>
#include <sstream>
#include <stdexcept>

namespace tinv {

int PetriNet::place(int instance, int location) const {
    for (std::size_t p = 0; p < place_info.size(); ++p)
        if (place_info[p].first == instance && place_info[p].second == location)
            return static_cast<int>(p);
    return -1;
}

PetriNet induce_net(const SystemModel& m) {
    PetriNet net;
    for (std::size_t i = 0; i < m.instances.size(); ++i)
        for (std::size_t l = 0; l < m.instances[i].locations.size(); ++l) {
            net.place_info.emplace_back(static_cast<int>(i), static_cast<int>(l));
            ++net.num_places;
        }
    if (net.num_places > PetriNet::kMaxPlaces)
        throw std::runtime_error("too many places for trap computation");
    for (std::size_t i = 0; i < m.instances.size(); ++i)
        net.initially_marked.set(
            static_cast<std::size_t>(net.place(static_cast<int>(i), m.instances[i].initial_location)));

    // Unary transitions from internal edges.
    for (std::size_t i = 0; i < m.instances.size(); ++i)
        for (auto& e : m.instances[i].edges)
            if (e.action < 0) {
                PetriNet::Transition t;
                t.pre.set(static_cast<std::size_t>(net.place(static_cast<int>(i), e.src)));
                t.post.set(static_cast<std::size_t>(net.place(static_cast<int>(i), e.dst)));
                net.transitions.push_back(t);
            }

    // One transition per interaction and tuple of participating edges.
    for (auto& alpha : m.gamma) {
        std::vector<std::vector<const Edge*>> choices;
        for (auto& part : alpha.participants) {
            std::vector<const Edge*> es;
            for (auto& e : m.instances[static_cast<std::size_t>(part.instance)].edges)
                if (e.action == part.action) es.push_back(&e);
            choices.push_back(std::move(es));
        }
        if (std::any_of(choices.begin(), choices.end(), [](auto& v) { return v.empty(); }))
            continue;
        std::vector<std::size_t> pick(choices.size(), 0);
        while (true) {
            PetriNet::Transition t;
            for (std::size_t j = 0; j < choices.size(); ++j) {
                int inst = alpha.participants[j].instance;
                const Edge* e = choices[j][pick[j]];
                t.pre.set(static_cast<std::size_t>(net.place(inst, e->src)));
                t.post.set(static_cast<std::size_t>(net.place(inst, e->dst)));
            }
            net.transitions.push_back(t);
            std::size_t j = 0;
            for (; j < choices.size(); ++j) {
                if (++pick[j] < choices[j].size()) break;
                pick[j] = 0;
            }
            if (j == choices.size()) break;
        }
    }
    return net;
}

namespace {

using PlaceSet = PetriNet::PlaceSet;

struct SetLess {
    bool operator()(const PlaceSet& a, const PlaceSet& b) const {
        for (std::size_t i = PetriNet::kMaxPlaces; i-- > 0;) {
            if (a[i] != b[i]) return b[i];
        }
        return false;
    }
};

bool subset(const PlaceSet& a, const PlaceSet& b) { return (a & ~b).none(); }

// Finds the first transition consuming from P without producing into it;
// returns -1 if P is a trap.
int violating_transition(const PetriNet& net, const PlaceSet& p) {
    for (std::size_t t = 0; t < net.transitions.size(); ++t) {
        const auto& tr = net.transitions[t];
        if ((tr.pre & p).any() && (tr.post & p).none()) return static_cast<int>(t);
    }
    return -1;
}

struct Enumerator {
    const PetriNet& net;
    const TrapLimits& limits;
    std::set<PlaceSet, SetLess> visited;
    std::vector<PlaceSet> traps;

    void grow(PlaceSet p) {
        if (visited.count(p)) return;
        if (visited.size() > 8 * limits.max_traps)
            throw std::runtime_error("trap enumeration limit exceeded");
        visited.insert(p);
        // Prune: any trap extending a superset of a found trap is non-minimal.
        for (auto& t : traps)
            if (subset(t, p) && t != p) return;
        int v = violating_transition(net, p);
        if (v < 0) {
            if (traps.size() >= limits.max_traps)
                throw std::runtime_error("trap count limit exceeded");
            traps.push_back(p);
            return;
        }
        const auto& tr = net.transitions[static_cast<std::size_t>(v)];
        for (std::size_t q = 0; q < net.num_places; ++q)
            if (tr.post[q]) {
                PlaceSet np = p;
                np.set(q);
                grow(np);
            }
    }
};

}  // namespace

std::vector<PlaceSet> minimal_marked_traps(const PetriNet& net, const TrapLimits& limits) {
    Enumerator en{net, limits};
    for (std::size_t p = 0; p < net.num_places; ++p)
        if (net.initially_marked[p]) {
            PlaceSet seed;
            seed.set(p);
            en.grow(seed);
        }
    // Subset-minimality filter plus dedup.
    std::vector<PlaceSet> out;
    for (auto& t : en.traps) {
        bool minimal = true;
        for (auto& o : en.traps)
            if (o != t && subset(o, t)) {
                minimal = false;
                break;
            }
        if (minimal && std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    }
    std::sort(out.begin(), out.end(), SetLess{});
    return out;
}

FormulaP interaction_invariant(const PetriNet& net, const std::vector<PlaceSet>& traps) {
    std::vector<FormulaP> clauses;
    for (auto& t : traps) {
        std::vector<FormulaP> lits;
        for (std::size_t p = 0; p < net.num_places; ++p)
            if (t[p]) lits.push_back(f_at(net.place_info[p].first, net.place_info[p].second));
        clauses.push_back(f_or(std::move(lits)));
    }
    return f_and(std::move(clauses));
}

std::string dump_traps(const SystemModel& m, const PetriNet& net,
                       const std::vector<PlaceSet>& traps) {
    std::ostringstream os;
    for (auto& t : traps) {
        std::vector<std::string> names;
        for (std::size_t p = 0; p < net.num_places; ++p)
            if (t[p])
                names.push_back(
                    m.instance_names[static_cast<std::size_t>(net.place_info[p].first)] + "@" +
                    m.instances[static_cast<std::size_t>(net.place_info[p].first)]
                        .locations[static_cast<std::size_t>(net.place_info[p].second)]);
        std::sort(names.begin(), names.end());
        os << "{";
        for (std::size_t i = 0; i < names.size(); ++i) os << (i ? ", " : "") << names[i];
        os << "}\n";
    }
    return os.str();
}

}  // namespace tinv
