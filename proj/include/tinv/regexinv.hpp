#ifndef TINV_REGEXINV_HPP
#define TINV_REGEXINV_HPP

#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "tinv/formula.hpp"
#include "tinv/model.hpp"

namespace tinv {

// Regular expressions over component-local action ids. The empty language is
// never a node: it is handled as "no expression" during state elimination.
struct Regex;
using RegexP = std::shared_ptr<const Regex>;

struct Regex {
    enum class Kind { Eps, Sym, Cat, Alt, Star };
    Kind kind = Kind::Eps;
    int sym = -1;
    std::vector<RegexP> kids;
};

RegexP r_eps();
RegexP r_sym(int s);
RegexP r_cat(std::vector<RegexP> kids);
RegexP r_alt(std::vector<RegexP> kids);
RegexP r_star(RegexP kid);
bool regex_equal(const RegexP& a, const RegexP& b);
std::string regex_to_string(const RegexP& e, const Component& c);

// Language accepted at the given location, over the given alphabet (other
// actions and tau edges are silent). nullopt when the location is not
// reachable. State elimination order: increasing in-degree * out-degree.
std::optional<RegexP> regex_at(const Component& c, int location, const std::vector<int>& alphabet);

// The syntactic elimination operator \ from the last-occurrence rule.
RegexP eliminate(const RegexP& e, int sym);

// Restricted form: union of branches, each a sequence of symbols and
// star-of-symbol-set items, every symbol at most once per branch.
struct RestrictedItem {
    bool star = false;
    std::vector<int> syms;  // singleton when star == false
};
using RestrictedBranch = std::vector<RestrictedItem>;

std::vector<RestrictedBranch> to_restricted(const RegexP& e, std::size_t max_steps = 200000);
bool branch_is_restricted(const std::vector<RegexP>& items);
std::string branch_to_string(const RestrictedBranch& b, const Component& c);

// Distinct-symbol words generated by a restricted branch / form.
std::vector<std::vector<int>> branch_words(const RestrictedBranch& b);
std::set<std::vector<int>> restricted_words(const std::vector<RestrictedBranch>& bs);

// Last-occurrence abstractions of all words of L(e) up to the given length;
// the oracle side of the loc-language preservation property.
std::set<std::vector<int>> loc_language(const RegexP& e, const std::vector<int>& alphabet,
                                        std::size_t max_len);

// History-clock encoding of one branch over the projected alphabet.
// action_clock maps local action id to a global clock id.
FormulaP phi_branch(const RestrictedBranch& b, const std::vector<int>& alphabet,
                    const std::vector<int>& action_clock, int h0, bool optimized);
FormulaP phi(const std::vector<RestrictedBranch>& bs, const std::vector<int>& alphabet,
             const std::vector<int>& action_clock, int h0, bool optimized = true);

// The per-component invariant: disjunction over reachable locations of the
// location predicate conjoined with the phi of each declared projection
// (full alphabet when none is declared).
FormulaP regex_invariant(const SystemModel& m, const ClockLayout& lay, int instance);

std::string dump_regex_invariant(const SystemModel& m, int instance);

}  // namespace tinv

#endif
