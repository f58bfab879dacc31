#include "tinv/formula.hpp"

#include <algorithm>

namespace tinv {

const char* cmp_op_text(CmpOp op) {
    switch (op) {
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Eq: return "=";
        case CmpOp::Ge: return ">=";
        case CmpOp::Gt: return ">";
    }
    return "?";
}

static FormulaP make(Formula f) { return std::make_shared<Formula>(std::move(f)); }

FormulaP f_true() {
    static FormulaP t = make(Formula{});
    return t;
}

FormulaP f_false() {
    static FormulaP f = [] {
        Formula x;
        x.kind = Formula::Kind::False;
        return make(std::move(x));
    }();
    return f;
}

bool is_true(const FormulaP& f) { return f->kind == Formula::Kind::True; }
bool is_false(const FormulaP& f) { return f->kind == Formula::Kind::False; }

FormulaP f_at(int instance, int location) {
    Formula x;
    x.kind = Formula::Kind::At;
    x.instance = instance;
    x.location = location;
    return make(std::move(x));
}

FormulaP f_clock(int lhs, int rhs, CmpOp op, std::int64_t ct) {
    Formula x;
    x.kind = Formula::Kind::Clock;
    x.lhs = lhs;
    x.rhs = rhs;
    x.op = op;
    x.ct = ct;
    return make(std::move(x));
}

FormulaP f_and(std::vector<FormulaP> kids) {
    std::vector<FormulaP> flat;
    for (auto& k : kids) {
        if (is_true(k)) continue;
        if (is_false(k)) return f_false();
        if (k->kind == Formula::Kind::And)
            flat.insert(flat.end(), k->kids.begin(), k->kids.end());
        else
            flat.push_back(k);
    }
    if (flat.empty()) return f_true();
    if (flat.size() == 1) return flat[0];
    Formula x;
    x.kind = Formula::Kind::And;
    x.kids = std::move(flat);
    return make(std::move(x));
}

FormulaP f_or(std::vector<FormulaP> kids) {
    std::vector<FormulaP> flat;
    for (auto& k : kids) {
        if (is_false(k)) continue;
        if (is_true(k)) return f_true();
        if (k->kind == Formula::Kind::Or)
            flat.insert(flat.end(), k->kids.begin(), k->kids.end());
        else
            flat.push_back(k);
    }
    if (flat.empty()) return f_false();
    if (flat.size() == 1) return flat[0];
    Formula x;
    x.kind = Formula::Kind::Or;
    x.kids = std::move(flat);
    return make(std::move(x));
}

FormulaP f_not(FormulaP kid) {
    if (is_true(kid)) return f_false();
    if (is_false(kid)) return f_true();
    if (kid->kind == Formula::Kind::Not) return kid->kids[0];
    Formula x;
    x.kind = Formula::Kind::Not;
    x.kids = {std::move(kid)};
    return make(std::move(x));
}

FormulaP f_implies(FormulaP a, FormulaP b) {
    if (is_true(a)) return b;
    if (is_false(a)) return f_true();
    if (is_true(b)) return f_true();
    Formula x;
    x.kind = Formula::Kind::Implies;
    x.kids = {std::move(a), std::move(b)};
    return make(std::move(x));
}

std::size_t formula_atoms(const FormulaP& f) {
    switch (f->kind) {
        case Formula::Kind::True:
        case Formula::Kind::False:
            return 0;
        case Formula::Kind::At:
        case Formula::Kind::Clock:
            return 1;
        default: {
            std::size_t n = 0;
            for (auto& k : f->kids) n += formula_atoms(k);
            return n;
        }
    }
}

std::size_t top_disjuncts(const FormulaP& f) {
    return f->kind == Formula::Kind::Or ? f->kids.size() : 1;
}

void collect_clocks(const FormulaP& f, std::vector<int>& out) {
    if (f->kind == Formula::Kind::Clock) {
        out.push_back(f->lhs);
        if (f->rhs >= 0) out.push_back(f->rhs);
    }
    for (auto& k : f->kids) collect_clocks(k, out);
}

}  // namespace tinv
