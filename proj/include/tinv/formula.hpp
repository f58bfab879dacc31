#ifndef TINV_FORMULA_HPP
#define TINV_FORMULA_HPP

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace tinv {

enum class CmpOp { Lt, Le, Eq, Ge, Gt };

const char* cmp_op_text(CmpOp op);

// Quantifier-free state formulas: boolean combinations of location atoms
// at(instance, location) and difference atoms over global clock ids
// (rhs = -1 means the constant 0, i.e. a plain bound on lhs).
struct Formula;
using FormulaP = std::shared_ptr<const Formula>;

struct Formula {
    enum class Kind { True, False, At, Clock, And, Or, Not, Implies };
    Kind kind = Kind::True;
    int instance = -1;
    int location = -1;
    int lhs = -1;
    int rhs = -1;
    CmpOp op = CmpOp::Le;
    std::int64_t ct = 0;
    std::vector<FormulaP> kids;
};

FormulaP f_true();
FormulaP f_false();
FormulaP f_at(int instance, int location);
FormulaP f_clock(int lhs, int rhs, CmpOp op, std::int64_t ct);
FormulaP f_and(std::vector<FormulaP> kids);   // flattens, absorbs units
FormulaP f_or(std::vector<FormulaP> kids);    // flattens, absorbs units
FormulaP f_not(FormulaP kid);
FormulaP f_implies(FormulaP a, FormulaP b);

bool is_true(const FormulaP& f);
bool is_false(const FormulaP& f);

// Structural size (atom count), used for glue size limits and reports.
std::size_t formula_atoms(const FormulaP& f);
// Number of disjuncts at the top level (1 if not a disjunction).
std::size_t top_disjuncts(const FormulaP& f);

// Collects every global clock id mentioned by the formula.
void collect_clocks(const FormulaP& f, std::vector<int>& out);

}  // namespace tinv

#endif
