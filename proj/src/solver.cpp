#include "tinv/solver.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

#include "tinv/zonegraph.hpp"

namespace tinv {

Engine::Engine(const SystemModel& m, const ClockLayout& lay, EngineOptions opts)
    : m_(&m), lay_(&lay), opts_(opts) {}

FormulaP Engine::nnf(const FormulaP& f, bool positive) const {
    switch (f->kind) {
        case Formula::Kind::True: return positive ? f_true() : f_false();
        case Formula::Kind::False: return positive ? f_false() : f_true();
        case Formula::Kind::At: {
            if (positive) return f;
            // not at(l): the instance is at one of its other locations.
            std::vector<FormulaP> alts;
            const Component& c = m_->instances[static_cast<std::size_t>(f->instance)];
            for (std::size_t l = 0; l < c.locations.size(); ++l)
                if (static_cast<int>(l) != f->location)
                    alts.push_back(f_at(f->instance, static_cast<int>(l)));
            return f_or(std::move(alts));
        }
        case Formula::Kind::Clock: {
            if (positive) return f;
            switch (f->op) {
                case CmpOp::Lt: return f_clock(f->lhs, f->rhs, CmpOp::Ge, f->ct);
                case CmpOp::Le: return f_clock(f->lhs, f->rhs, CmpOp::Gt, f->ct);
                case CmpOp::Ge: return f_clock(f->lhs, f->rhs, CmpOp::Lt, f->ct);
                case CmpOp::Gt: return f_clock(f->lhs, f->rhs, CmpOp::Le, f->ct);
                case CmpOp::Eq:
                    return f_or({f_clock(f->lhs, f->rhs, CmpOp::Lt, f->ct),
                                 f_clock(f->lhs, f->rhs, CmpOp::Gt, f->ct)});
            }
            return f;
        }
        case Formula::Kind::Not: return nnf(f->kids[0], !positive);
        case Formula::Kind::Implies: {
            FormulaP a = f->kids[0], b = f->kids[1];
            if (positive) return f_or({nnf(a, false), nnf(b, true)});
            return f_and({nnf(a, true), nnf(b, false)});
        }
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            bool conj = (f->kind == Formula::Kind::And) == positive;
            std::vector<FormulaP> kids;
            for (auto& k : f->kids) kids.push_back(nnf(k, positive));
            return conj ? f_and(std::move(kids)) : f_or(std::move(kids));
        }
    }
    return f;
}

namespace {

// DPLL-flavoured cube enumeration. Unit items (atoms, conjunctions) are
// consumed eagerly; disjunctions are deferred and, when branching becomes
// unavoidable, the one with the fewest locally-consistent kids is split
// first. Kids that are pure atom conjunctions are pre-tested against the
// current cube so dead branches never recurse.
struct Search {
    const SystemModel& m;
    std::int64_t budget;
    std::int64_t cubes = 0;
    bool exhausted = false;  // budget ran out
    bool stop = false;       // callback asked to stop
    const std::function<bool(const WitnessCube&)>& cb;

    static bool apply_atom(Dbm& zone, const Formula& f) {
        int i = f.lhs;
        int j = f.rhs >= 0 ? f.rhs : 0;
        switch (f.op) {
            case CmpOp::Lt: zone.constrain(i, j, Bound::lt(f.ct)); break;
            case CmpOp::Le: zone.constrain(i, j, Bound::le(f.ct)); break;
            case CmpOp::Ge: zone.constrain(j, i, Bound::le(-f.ct)); break;
            case CmpOp::Gt: zone.constrain(j, i, Bound::lt(-f.ct)); break;
            case CmpOp::Eq:
                zone.constrain(i, j, Bound::le(f.ct));
                zone.constrain(j, i, Bound::le(-f.ct));
                break;
        }
        return !zone.is_empty();
    }

    // Applies a disjunction-free subtree; false on conflict.
    static bool apply_flat(const Formula* f, std::vector<int>& locs, Dbm& zone) {
        switch (f->kind) {
            case Formula::Kind::True: return true;
            case Formula::Kind::False: return false;
            case Formula::Kind::At: {
                int& cur = locs[static_cast<std::size_t>(f->instance)];
                if (cur >= 0 && cur != f->location) return false;
                cur = f->location;
                return true;
            }
            case Formula::Kind::Clock: return apply_atom(zone, *f);
            case Formula::Kind::And:
                for (auto& k : f->kids)
                    if (!apply_flat(k.get(), locs, zone)) return false;
                return true;
            default: return true;  // unreachable for flat subtrees
        }
    }

    static bool is_flat(const Formula* f) {
        switch (f->kind) {
            case Formula::Kind::Or:
            case Formula::Kind::Not:
            case Formula::Kind::Implies: return false;
            case Formula::Kind::And:
                for (auto& k : f->kids)
                    if (!is_flat(k.get())) return false;
                return true;
            default: return true;
        }
    }

    void run(std::vector<const Formula*> agenda, std::vector<int> locs, Dbm zone) {
        if (stop || exhausted) return;
        std::vector<const Formula*> ors;
        // Phase 1: consume everything that does not branch.
        while (!agenda.empty()) {
            const Formula* f = agenda.back();
            agenda.pop_back();
            switch (f->kind) {
                case Formula::Kind::True: continue;
                case Formula::Kind::False: return;
                case Formula::Kind::At:
                case Formula::Kind::Clock:
                    if (!apply_flat(f, locs, zone)) return;
                    continue;
                case Formula::Kind::And:
                    for (std::size_t i = f->kids.size(); i-- > 0;)
                        agenda.push_back(f->kids[i].get());
                    continue;
                case Formula::Kind::Or: ors.push_back(f); continue;
                case Formula::Kind::Not:
                case Formula::Kind::Implies:
                    throw std::logic_error("search expects NNF input");
            }
        }
        if (ors.empty()) {
            if (++cubes > budget) {
                exhausted = true;
                return;
            }
            WitnessCube w;
            w.locations = std::move(locs);
            w.zone = std::move(zone);
            if (!cb(w)) stop = true;
            return;
        }
        // Phase 2: look ahead on every deferred disjunction; branch on the
        // one with the fewest live kids. Stable choice keeps this
        // deterministic.
        std::size_t best = 0;
        std::size_t best_live = SIZE_MAX;
        std::vector<char> live_mask;
        for (std::size_t oi = 0; oi < ors.size(); ++oi) {
            std::size_t live = 0;
            std::vector<char> mask(ors[oi]->kids.size(), 1);
            for (std::size_t ki = 0; ki < ors[oi]->kids.size(); ++ki) {
                const Formula* kid = ors[oi]->kids[ki].get();
                if (!is_flat(kid)) {
                    ++live;
                    continue;
                }
                auto l2 = locs;
                Dbm z2 = zone;
                if (apply_flat(kid, l2, z2))
                    ++live;
                else
                    mask[ki] = 0;
            }
            if (live == 0) return;  // this disjunction is unsatisfiable here
            if (live < best_live) {
                best_live = live;
                best = oi;
                live_mask = std::move(mask);
                if (live == 1) break;
            }
        }
        const Formula* chosen = ors[best];
        std::vector<const Formula*> rest;
        for (std::size_t oi = 0; oi < ors.size(); ++oi)
            if (oi != best) rest.push_back(ors[oi]);
        for (std::size_t ki = 0; ki < chosen->kids.size(); ++ki) {
            if (!live_mask[ki]) continue;
            if (stop || exhausted) return;
            if (++cubes > budget) {
                exhausted = true;
                return;
            }
            auto branch = rest;
            branch.push_back(chosen->kids[ki].get());
            run(std::move(branch), locs, zone);
        }
    }
};

}  // namespace

SatResult Engine::for_each_cube(const FormulaP& f,
                                const std::function<bool(const WitnessCube&)>& cb) const {
    FormulaP n = nnf(f, true);
    Search s{*m_, opts_.cube_budget, 0, false, false, cb};
    std::vector<int> locs(m_->instances.size(), -1);
    s.run({n.get()}, std::move(locs), Dbm::universal(lay_->dim()));
    SatResult r;
    r.cubes = s.cubes;
    r.verdict = s.exhausted ? SatVerdict::Budget : SatVerdict::Unsat;
    return r;
}

SatResult Engine::is_satisfiable(const FormulaP& f) const {
    std::optional<WitnessCube> witness;
    SatResult r = for_each_cube(f, [&](const WitnessCube& w) {
        witness = w;
        return false;  // first satisfiable cube wins
    });
    if (witness) {
        r.verdict = SatVerdict::Sat;
        r.witness = std::move(witness);
    }
    return r;
}

SatResult Engine::implication_counterexample(const FormulaP& lhs, const FormulaP& rhs) const {
    return is_satisfiable(f_and({f_not(rhs), lhs}));
}

bool Engine::is_valid_implication(const FormulaP& lhs, const FormulaP& rhs) const {
    SatResult r = implication_counterexample(lhs, rhs);
    if (r.verdict == SatVerdict::Budget)
        throw std::runtime_error("cube budget exceeded while checking an implication");
    return r.verdict == SatVerdict::Unsat;
}

bool Engine::equivalent(const FormulaP& f, const FormulaP& g) const {
    return is_valid_implication(f, g) && is_valid_implication(g, f);
}

FormulaP Engine::project_clocks(const FormulaP& f, const std::vector<int>& drop) const {
    std::vector<int> keep{0};
    for (int i = 1; i < lay_->dim(); ++i)
        if (std::find(drop.begin(), drop.end(), i) == drop.end()) keep.push_back(i);
    std::vector<int> clock_map(keep.begin() + 1, keep.end());

    std::vector<FormulaP> disjuncts;
    SatResult r = for_each_cube(f, [&](const WitnessCube& w) {
        std::vector<FormulaP> conj;
        for (std::size_t i = 0; i < w.locations.size(); ++i)
            if (w.locations[i] >= 0) conj.push_back(f_at(static_cast<int>(i), w.locations[i]));
        Dbm z = w.zone.project(keep);
        conj.push_back(zone_to_formula(z, clock_map));
        disjuncts.push_back(f_and(std::move(conj)));
        return true;
    });
    if (r.verdict == SatVerdict::Budget)
        throw std::runtime_error("cube budget exceeded while projecting clocks");
    return f_or(std::move(disjuncts));
}

std::string witness_to_string(const WitnessCube& w, const SystemModel& m, const ClockLayout& lay) {
    std::ostringstream os;
    for (std::size_t i = 0; i < w.locations.size(); ++i) {
        if (w.locations[i] < 0) continue;
        os << m.instance_names[i] << "@"
           << m.instances[i].locations[static_cast<std::size_t>(w.locations[i])] << " ";
    }
    os << "with\n";
    std::vector<std::string> names;
    for (int i = 1; i < lay.dim(); ++i) names.push_back(lay.clock_name(i));
    os << w.zone.dump(names);
    return os.str();
}

// ── SMT-LIB2 export ─────────────────────────────────────────────────────────

namespace {

std::string sanitize(const std::string& s) {
    std::string out;
    for (char c : s)
        out += (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ? c : '_';
    return out;
}

std::string loc_var(const SystemModel& m, int inst, int loc) {
    return "at_" + sanitize(m.instance_names[static_cast<std::size_t>(inst)]) + "_" +
           sanitize(m.instances[static_cast<std::size_t>(inst)]
                        .locations[static_cast<std::size_t>(loc)]);
}

std::string clock_var(const ClockLayout& lay, int id) {
    return "c_" + sanitize(lay.clock_name(id));
}

std::string smt_num(std::int64_t v) {
    if (v < 0) return "(- " + std::to_string(-v) + ")";
    return std::to_string(v);
}

void emit_formula(std::ostringstream& os, const FormulaP& f, const SystemModel& m,
                  const ClockLayout& lay) {
    switch (f->kind) {
        case Formula::Kind::True: os << "true"; break;
        case Formula::Kind::False: os << "false"; break;
        case Formula::Kind::At: os << loc_var(m, f->instance, f->location); break;
        case Formula::Kind::Clock: {
            std::string lhs = clock_var(lay, f->lhs);
            std::string expr = f->rhs >= 0 ? "(- " + lhs + " " + clock_var(lay, f->rhs) + ")" : lhs;
            const char* op = nullptr;
            switch (f->op) {
                case CmpOp::Lt: op = "<"; break;
                case CmpOp::Le: op = "<="; break;
                case CmpOp::Eq: op = "="; break;
                case CmpOp::Ge: op = ">="; break;
                case CmpOp::Gt: op = ">"; break;
            }
            os << "(" << op << " " << expr << " " << smt_num(f->ct) << ")";
            break;
        }
        case Formula::Kind::Not:
            os << "(not ";
            emit_formula(os, f->kids[0], m, lay);
            os << ")";
            break;
        case Formula::Kind::Implies:
            os << "(=> ";
            emit_formula(os, f->kids[0], m, lay);
            os << " ";
            emit_formula(os, f->kids[1], m, lay);
            os << ")";
            break;
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            os << (f->kind == Formula::Kind::And ? "(and" : "(or");
            for (auto& k : f->kids) {
                os << " ";
                emit_formula(os, k, m, lay);
            }
            os << ")";
            break;
        }
    }
}

}  // namespace

std::string export_smtlib(const FormulaP& f, const SystemModel& m, const ClockLayout& lay) {
    std::ostringstream os;
    os << "(set-logic QF_LRA)\n";
    for (std::size_t i = 0; i < m.instances.size(); ++i)
        for (std::size_t l = 0; l < m.instances[i].locations.size(); ++l)
            os << "(declare-const " << loc_var(m, static_cast<int>(i), static_cast<int>(l))
               << " Bool)\n";
    for (int c = 1; c < lay.dim(); ++c) {
        os << "(declare-const " << clock_var(lay, c) << " Real)\n";
        os << "(assert (>= " << clock_var(lay, c) << " 0))\n";
    }
    // Exactly one location per instance.
    for (std::size_t i = 0; i < m.instances.size(); ++i) {
        const auto& locs = m.instances[i].locations;
        os << "(assert (or";
        for (std::size_t l = 0; l < locs.size(); ++l)
            os << " " << loc_var(m, static_cast<int>(i), static_cast<int>(l));
        os << "))\n";
        for (std::size_t l = 0; l < locs.size(); ++l)
            for (std::size_t l2 = l + 1; l2 < locs.size(); ++l2)
                os << "(assert (not (and " << loc_var(m, static_cast<int>(i), static_cast<int>(l))
                   << " " << loc_var(m, static_cast<int>(i), static_cast<int>(l2)) << ")))\n";
    }
    os << "(assert ";
    emit_formula(os, f, m, lay);
    os << ")\n(check-sat)\n";
    return os.str();
}

std::optional<std::string> find_smt_solver() {
    if (const char* env = std::getenv("TINV_SMT_SOLVER")) return std::string(env);
    for (const char* cand : {"z3", "cvc5", "cvc4", "mathsat", "yices-smt2"}) {
        std::string cmd = std::string("command -v ") + cand + " >/dev/null 2>&1";
        if (std::system(cmd.c_str()) == 0) return std::string(cand);
    }
    return std::nullopt;
}

std::optional<bool> run_smt_file(const std::string& solver, const std::string& path) {
    std::string cmd;
    if (solver.find("z3") != std::string::npos)
        cmd = solver + " -smt2 " + path + " 2>&1";
    else if (solver.find("cvc") != std::string::npos)
        cmd = solver + " --lang smt2 " + path + " 2>&1";
    else
        cmd = solver + " " + path + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) return std::nullopt;
    std::string out;
    char buf[256];
    while (fgets(buf, sizeof buf, pipe)) out += buf;
    pclose(pipe);
    if (out.find("unsat") != std::string::npos) return false;
    if (out.find("sat") != std::string::npos) return true;
    return std::nullopt;
}

}  // namespace tinv
