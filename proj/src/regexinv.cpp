#include "tinv/regexinv.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace tinv {

namespace {
RegexP make(Regex r) { return std::make_shared<Regex>(std::move(r)); }
}  // namespace

RegexP r_eps() {
    static RegexP e = make(Regex{});
    return e;
}

RegexP r_sym(int s) {
    Regex r;
    r.kind = Regex::Kind::Sym;
    r.sym = s;
    return make(std::move(r));
}

bool regex_equal(const RegexP& a, const RegexP& b) {
    if (a->kind != b->kind || a->sym != b->sym || a->kids.size() != b->kids.size()) return false;
    for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (!regex_equal(a->kids[i], b->kids[i])) return false;
    return true;
}

RegexP r_cat(std::vector<RegexP> kids) {
    std::vector<RegexP> flat;
    for (auto& k : kids) {
        if (k->kind == Regex::Kind::Eps) continue;
        if (k->kind == Regex::Kind::Cat)
            flat.insert(flat.end(), k->kids.begin(), k->kids.end());
        else
            flat.push_back(k);
    }
    if (flat.empty()) return r_eps();
    if (flat.size() == 1) return flat[0];
    Regex r;
    r.kind = Regex::Kind::Cat;
    r.kids = std::move(flat);
    return make(std::move(r));
}

RegexP r_alt(std::vector<RegexP> kids) {
    std::vector<RegexP> flat;
    bool eps = false;
    for (auto& k : kids) {
        if (k->kind == Regex::Kind::Alt) {
            for (auto& kk : k->kids)
                if (kk->kind == Regex::Kind::Eps)
                    eps = true;
                else
                    flat.push_back(kk);
        } else if (k->kind == Regex::Kind::Eps) {
            eps = true;
        } else {
            flat.push_back(k);
        }
    }
    // E + E = E
    std::vector<RegexP> uniq;
    for (auto& k : flat) {
        bool dup = false;
        for (auto& u : uniq)
            if (regex_equal(u, k)) dup = true;
        if (!dup) uniq.push_back(k);
    }
    // eps + E* = E*
    if (eps) {
        bool absorbed = std::any_of(uniq.begin(), uniq.end(),
                                    [](const RegexP& k) { return k->kind == Regex::Kind::Star; });
        if (!absorbed) uniq.insert(uniq.begin(), r_eps());
    }
    if (uniq.empty()) return r_eps();
    if (uniq.size() == 1) return uniq[0];
    Regex r;
    r.kind = Regex::Kind::Alt;
    r.kids = std::move(uniq);
    return make(std::move(r));
}

RegexP r_star(RegexP kid) {
    if (kid->kind == Regex::Kind::Eps) return r_eps();      // (eps)* = eps
    if (kid->kind == Regex::Kind::Star) return kid;         // (E*)* = E*
    if (kid->kind == Regex::Kind::Alt || kid->kind == Regex::Kind::Sym) {
        // Inside a star, unwrap starred members and drop eps: (a+c*)* = (a+c)*.
        std::vector<RegexP> members =
            kid->kind == Regex::Kind::Alt ? kid->kids : std::vector<RegexP>{kid};
        std::vector<RegexP> cleaned;
        bool changed = false;
        for (auto& mem : members) {
            if (mem->kind == Regex::Kind::Eps) {
                changed = true;
                continue;
            }
            if (mem->kind == Regex::Kind::Star) {
                cleaned.push_back(mem->kids[0]);
                changed = true;
            } else {
                cleaned.push_back(mem);
            }
        }
        if (changed) return r_star(r_alt(std::move(cleaned)));
    }
    Regex r;
    r.kind = Regex::Kind::Star;
    r.kids = {std::move(kid)};
    return make(std::move(r));
}

std::string regex_to_string(const RegexP& e, const Component& c) {
    switch (e->kind) {
        case Regex::Kind::Eps: return "eps";
        case Regex::Kind::Sym: return c.actions[static_cast<std::size_t>(e->sym)];
        case Regex::Kind::Star: {
            std::string k = regex_to_string(e->kids[0], c);
            if (e->kids[0]->kind == Regex::Kind::Sym) return k + "*";
            return "(" + k + ")*";
        }
        case Regex::Kind::Cat: {
            std::string out;
            for (auto& k : e->kids) {
                std::string s = regex_to_string(k, c);
                if (k->kind == Regex::Kind::Alt) s = "(" + s + ")";
                if (!out.empty()) out += ".";
                out += s;
            }
            return out;
        }
        case Regex::Kind::Alt: {
            std::string out;
            for (auto& k : e->kids) {
                if (!out.empty()) out += " + ";
                out += regex_to_string(k, c);
            }
            return out;
        }
    }
    return "?";
}

// ── State elimination ───────────────────────────────────────────────────────

std::optional<RegexP> regex_at(const Component& c, int location, const std::vector<int>& alphabet) {
    const int n = static_cast<int>(c.locations.size());
    const int init = n, fin = n + 1, total = n + 2;
    std::vector<std::vector<std::optional<RegexP>>> r(
        static_cast<std::size_t>(total), std::vector<std::optional<RegexP>>(static_cast<std::size_t>(total)));

    auto add = [&](int i, int j, RegexP e) {
        auto& cell = r[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        cell = cell ? r_alt({*cell, e}) : e;
    };
    for (auto& e : c.edges) {
        bool visible = e.action >= 0 && std::find(alphabet.begin(), alphabet.end(), e.action) !=
                                            alphabet.end();
        add(e.src, e.dst, visible ? r_sym(e.action) : r_eps());
    }
    add(init, c.initial_location, r_eps());
    add(location, fin, r_eps());

    std::vector<bool> gone(static_cast<std::size_t>(total), false);
    for (int round = 0; round < n; ++round) {
        // The target location goes first: its loops then wind up as the
        // leading (...)* of the expression, the shape the simplification
        // rules expect. The rest go by least in-degree * out-degree, ties by
        // declaration order.
        int best = -1;
        long best_score = 0;
        if (round == 0) {
            best = location;
        } else {
            for (int s = 0; s < n; ++s) {
                if (gone[static_cast<std::size_t>(s)]) continue;
                long in = 0, out = 0;
                for (int i = 0; i < total; ++i) {
                    if (i != s && !gone[static_cast<std::size_t>(i)] &&
                        r[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)])
                        ++in;
                    if (i != s && !gone[static_cast<std::size_t>(i)] &&
                        r[static_cast<std::size_t>(s)][static_cast<std::size_t>(i)])
                        ++out;
                }
                long score = in * out;
                if (best < 0 || score < best_score) {
                    best = s;
                    best_score = score;
                }
            }
        }
        int s = best;
        gone[static_cast<std::size_t>(s)] = true;
        RegexP loop = r_eps();
        if (r[static_cast<std::size_t>(s)][static_cast<std::size_t>(s)])
            loop = r_star(*r[static_cast<std::size_t>(s)][static_cast<std::size_t>(s)]);
        for (int i = 0; i < total; ++i) {
            if (i == s || gone[static_cast<std::size_t>(i)] ||
                !r[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)])
                continue;
            for (int j = 0; j < total; ++j) {
                if (j == s || gone[static_cast<std::size_t>(j)] ||
                    !r[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)])
                    continue;
                add(i, j,
                    r_cat({*r[static_cast<std::size_t>(i)][static_cast<std::size_t>(s)], loop,
                           *r[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)]}));
            }
        }
    }
    return r[static_cast<std::size_t>(init)][static_cast<std::size_t>(fin)];
}

RegexP eliminate(const RegexP& e, int sym) {
    switch (e->kind) {
        case Regex::Kind::Eps: return r_eps();
        case Regex::Kind::Sym: return e->sym == sym ? r_eps() : e;
        case Regex::Kind::Alt: {
            std::vector<RegexP> kids;
            for (auto& k : e->kids) kids.push_back(eliminate(k, sym));
            return r_alt(std::move(kids));
        }
        case Regex::Kind::Cat: {
            std::vector<RegexP> kids;
            for (auto& k : e->kids) kids.push_back(eliminate(k, sym));
            return r_cat(std::move(kids));
        }
        case Regex::Kind::Star: return r_star(eliminate(e->kids[0], sym));
    }
    return e;
}

// ── Restricted form ─────────────────────────────────────────────────────────

namespace {

void symbols_of(const RegexP& e, std::vector<int>& out) {
    if (e->kind == Regex::Kind::Sym) out.push_back(e->sym);
    for (auto& k : e->kids) symbols_of(k, out);
}

bool contains_symbol(const RegexP& e, int s) {
    if (e->kind == Regex::Kind::Sym) return e->sym == s;
    for (auto& k : e->kids)
        if (contains_symbol(k, s)) return true;
    return false;
}

bool item_is_star_of_symbols(const RegexP& e) {
    if (e->kind != Regex::Kind::Star) return false;
    const RegexP& body = e->kids[0];
    if (body->kind == Regex::Kind::Sym) return true;
    if (body->kind != Regex::Kind::Alt) return false;
    return std::all_of(body->kids.begin(), body->kids.end(),
                       [](const RegexP& k) { return k->kind == Regex::Kind::Sym; });
}

std::vector<RegexP> flatten_cat(const RegexP& e) {
    if (e->kind == Regex::Kind::Cat) return e->kids;
    if (e->kind == Regex::Kind::Eps) return {};
    return {e};
}

}  // namespace

bool branch_is_restricted(const std::vector<RegexP>& items) {
    std::vector<int> seen;
    for (auto& it : items) {
        if (it->kind == Regex::Kind::Sym) {
            if (std::find(seen.begin(), seen.end(), it->sym) != seen.end()) return false;
            seen.push_back(it->sym);
        } else if (item_is_star_of_symbols(it)) {
            std::vector<int> syms;
            symbols_of(it, syms);
            for (int s : syms) {
                if (std::find(seen.begin(), seen.end(), s) != seen.end()) return false;
                seen.push_back(s);
            }
        } else {
            return false;
        }
    }
    return true;
}

namespace {

void branch_key(const RegexP& e, std::string& out) {
    switch (e->kind) {
        case Regex::Kind::Eps: out += "e"; return;
        case Regex::Kind::Sym:
            out += "s" + std::to_string(e->sym);
            return;
        case Regex::Kind::Cat: out += "(."; break;
        case Regex::Kind::Alt: out += "(+"; break;
        case Regex::Kind::Star: out += "(*"; break;
    }
    for (auto& k : e->kids) branch_key(k, out);
    out += ")";
}

}  // namespace

std::vector<RestrictedBranch> to_restricted(const RegexP& e, std::size_t max_steps) {
    std::deque<std::vector<RegexP>> work;
    std::vector<RestrictedBranch> out;
    std::set<std::string> seen;
    std::size_t steps = 0;

    auto push_branch = [&](std::vector<RegexP> items) {
        if (++steps > max_steps)
            throw std::runtime_error("restricted-form rewriting exceeded the step limit");
        std::string key;
        for (auto& it : items) branch_key(it, key);
        if (!seen.insert(std::move(key)).second) return;
        work.push_back(std::move(items));
    };

    if (e->kind == Regex::Kind::Alt)
        for (auto& k : e->kids) push_branch(flatten_cat(k));
    else
        push_branch(flatten_cat(e));

    while (!work.empty()) {
        std::vector<RegexP> items = std::move(work.front());
        work.pop_front();

        // Rule 1 (last occurrence retention), rightmost symbol first.
        bool applied = true;
        while (applied) {
            applied = false;
            for (std::size_t j = items.size(); j-- > 0;) {
                if (items[j]->kind != Regex::Kind::Sym) continue;
                int s = items[j]->sym;
                bool earlier = false;
                for (std::size_t i = 0; i < j; ++i)
                    if (contains_symbol(items[i], s)) earlier = true;
                if (!earlier) continue;
                std::vector<RegexP> next;
                for (std::size_t i = 0; i < items.size(); ++i) {
                    RegexP it = i < j ? eliminate(items[i], s) : items[i];
                    if (it->kind == Regex::Kind::Eps) continue;
                    auto flat = flatten_cat(it);
                    next.insert(next.end(), flat.begin(), flat.end());
                }
                items = std::move(next);
                applied = true;
                break;
            }
        }

        {
            std::string key;
            for (auto& it : items) branch_key(it, key);
            key += "#r1";
            if (!seen.insert(std::move(key)).second) continue;
        }

        if (branch_is_restricted(items)) {
            RestrictedBranch rb;
            for (auto& it : items) {
                RestrictedItem ri;
                if (it->kind == Regex::Kind::Sym) {
                    ri.star = false;
                    ri.syms = {it->sym};
                } else {
                    ri.star = true;
                    symbols_of(it, ri.syms);
                    std::sort(ri.syms.begin(), ri.syms.end());
                }
                rb.push_back(std::move(ri));
            }
            out.push_back(std::move(rb));
            continue;
        }

        // Split a (rightmost) union item into one branch per member.
        bool split = false;
        for (std::size_t j = items.size(); j-- > 0;) {
            if (items[j]->kind != Regex::Kind::Alt) continue;
            for (auto& mem : items[j]->kids) {
                std::vector<RegexP> next(items.begin(), items.begin() + static_cast<long>(j));
                auto flat = flatten_cat(mem);
                next.insert(next.end(), flat.begin(), flat.end());
                next.insert(next.end(), items.begin() + static_cast<long>(j) + 1, items.end());
                push_branch(std::move(next));
            }
            split = true;
            break;
        }
        if (split) continue;

        // Rule 2 (back-unfolding) on the rightmost star: E* -> E*.E + eps,
        // splitting the resulting union.
        bool unfolded = false;
        for (std::size_t j = items.size(); j-- > 0;) {
            if (items[j]->kind != Regex::Kind::Star) continue;
            const RegexP body = items[j]->kids[0];
            std::vector<RegexP> members =
                body->kind == Regex::Kind::Alt ? body->kids : std::vector<RegexP>{body};
            for (auto& mem : members) {
                std::vector<RegexP> next(items.begin(), items.begin() + static_cast<long>(j) + 1);
                auto flat = flatten_cat(mem);
                next.insert(next.end(), flat.begin(), flat.end());
                next.insert(next.end(), items.begin() + static_cast<long>(j) + 1, items.end());
                push_branch(std::move(next));
            }
            std::vector<RegexP> without(items.begin(), items.begin() + static_cast<long>(j));
            without.insert(without.end(), items.begin() + static_cast<long>(j) + 1, items.end());
            push_branch(std::move(without));
            unfolded = true;
            break;
        }
        if (!unfolded)
            throw std::runtime_error("cannot bring regular expression to restricted form");
    }

    // E + E = E at the branch level.
    std::vector<RestrictedBranch> uniq;
    for (auto& b : out) {
        bool dup = false;
        for (auto& u : uniq)
            if (u.size() == b.size() && std::equal(u.begin(), u.end(), b.begin(),
                                                   [](const RestrictedItem& x, const RestrictedItem& y) {
                                                       return x.star == y.star && x.syms == y.syms;
                                                   }))
                dup = true;
        if (!dup) uniq.push_back(b);
    }
    return uniq;
}

std::string branch_to_string(const RestrictedBranch& b, const Component& c) {
    if (b.empty()) return "eps";
    std::string out;
    for (auto& it : b) {
        if (!out.empty()) out += ".";
        if (!it.star) {
            out += c.actions[static_cast<std::size_t>(it.syms[0])];
        } else {
            out += "(";
            for (std::size_t i = 0; i < it.syms.size(); ++i) {
                if (i) out += "+";
                out += c.actions[static_cast<std::size_t>(it.syms[i])];
            }
            out += ")*";
        }
    }
    return out;
}

// ── Words and encodings ─────────────────────────────────────────────────────

namespace {

void ordered_subsets(const std::vector<int>& syms, std::vector<int>& cur,
                     std::vector<bool>& used, const std::function<void()>& emit) {
    emit();
    for (std::size_t i = 0; i < syms.size(); ++i) {
        if (used[i]) continue;
        used[i] = true;
        cur.push_back(syms[i]);
        ordered_subsets(syms, cur, used, emit);
        cur.pop_back();
        used[i] = false;
    }
}

}  // namespace

std::vector<std::vector<int>> branch_words(const RestrictedBranch& b) {
    std::vector<std::vector<int>> words{{}};
    for (auto& it : b) {
        std::vector<std::vector<int>> next;
        if (!it.star) {
            for (auto& w : words) {
                auto nw = w;
                nw.push_back(it.syms[0]);
                next.push_back(std::move(nw));
            }
        } else {
            std::vector<std::vector<int>> chunks;
            std::vector<int> cur;
            std::vector<bool> used(it.syms.size(), false);
            ordered_subsets(it.syms, cur, used, [&] { chunks.push_back(cur); });
            for (auto& w : words)
                for (auto& ch : chunks) {
                    auto nw = w;
                    nw.insert(nw.end(), ch.begin(), ch.end());
                    next.push_back(std::move(nw));
                }
        }
        words = std::move(next);
    }
    return words;
}

std::set<std::vector<int>> restricted_words(const std::vector<RestrictedBranch>& bs) {
    std::set<std::vector<int>> out;
    for (auto& b : bs)
        for (auto& w : branch_words(b)) out.insert(w);
    return out;
}

std::set<std::vector<int>> loc_language(const RegexP& e, const std::vector<int>& alphabet,
                                        std::size_t max_len) {
    // Enumerate words of L(e) up to max_len by brute force over the alphabet,
    // keeping last-occurrence abstractions. Membership by regex derivatives
    // would be overkill at this size: we just walk the structure.
    std::function<std::set<std::vector<int>>(const RegexP&, std::size_t)> lang =
        [&](const RegexP& r, std::size_t cap) -> std::set<std::vector<int>> {
        std::set<std::vector<int>> ws;
        switch (r->kind) {
            case Regex::Kind::Eps: ws.insert(std::vector<int>{}); break;
            case Regex::Kind::Sym:
                if (cap >= 1) ws.insert({r->sym});
                break;
            case Regex::Kind::Alt:
                for (auto& k : r->kids)
                    for (auto& w : lang(k, cap)) ws.insert(w);
                break;
            case Regex::Kind::Cat: {
                ws.insert(std::vector<int>{});
                for (auto& k : r->kids) {
                    std::set<std::vector<int>> next;
                    for (auto& pre : ws)
                        for (auto& suf : lang(k, cap - pre.size())) {
                            auto w = pre;
                            w.insert(w.end(), suf.begin(), suf.end());
                            if (w.size() <= cap) next.insert(std::move(w));
                        }
                    ws = std::move(next);
                }
                break;
            }
            case Regex::Kind::Star: {
                ws.insert(std::vector<int>{});
                bool grew = true;
                while (grew) {
                    grew = false;
                    std::set<std::vector<int>> next = ws;
                    for (auto& pre : ws)
                        for (auto& suf : lang(r->kids[0], cap - pre.size())) {
                            auto w = pre;
                            w.insert(w.end(), suf.begin(), suf.end());
                            if (w.size() <= cap && !next.count(w)) {
                                next.insert(std::move(w));
                                grew = true;
                            }
                        }
                    ws = std::move(next);
                }
                break;
            }
        }
        return ws;
    };
    (void)alphabet;
    std::set<std::vector<int>> out;
    for (auto& w : lang(e, max_len)) {
        std::vector<int> loc;
        for (std::size_t i = 0; i < w.size(); ++i) {
            bool last = true;
            for (std::size_t j = i + 1; j < w.size(); ++j)
                if (w[j] == w[i]) last = false;
            if (last) loc.push_back(w[i]);
        }
        out.insert(loc);
    }
    return out;
}

namespace {

FormulaP word_encoding(const std::vector<int>& word, const std::vector<int>& alphabet,
                       const std::vector<int>& action_clock, int h0) {
    std::vector<FormulaP> conj;
    // h0 >= h_a1 >= ... >= h_an
    int prev = h0;
    for (int a : word) {
        int ha = action_clock[static_cast<std::size_t>(a)];
        conj.push_back(f_clock(ha, prev, CmpOp::Le, 0));
        prev = ha;
    }
    for (int c : alphabet)
        if (std::find(word.begin(), word.end(), c) == word.end())
            conj.push_back(f_clock(action_clock[static_cast<std::size_t>(c)], h0, CmpOp::Gt, 0));
    return f_and(std::move(conj));
}

}  // namespace

FormulaP phi_branch(const RestrictedBranch& b, const std::vector<int>& alphabet,
                    const std::vector<int>& action_clock, int h0, bool optimized) {
    bool pattern = true;  // (b1+...+bm)* a1...an with the star optional, in front
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i].star && i != 0) pattern = false;
    if (optimized && pattern) {
        std::vector<int> mandatory;
        std::vector<int> optional_syms;
        for (auto& it : b) {
            if (it.star)
                optional_syms = it.syms;
            else
                mandatory.push_back(it.syms[0]);
        }
        std::vector<FormulaP> conj;
        int prev = h0;
        for (int a : mandatory) {
            conj.push_back(f_clock(action_clock[static_cast<std::size_t>(a)], prev, CmpOp::Le, 0));
            prev = action_clock[static_cast<std::size_t>(a)];
        }
        if (!mandatory.empty())
            for (int bs : optional_syms)
                conj.push_back(f_clock(action_clock[static_cast<std::size_t>(mandatory[0])],
                                       action_clock[static_cast<std::size_t>(bs)], CmpOp::Le, 0));
        for (int c : alphabet) {
            bool in_branch =
                std::find(mandatory.begin(), mandatory.end(), c) != mandatory.end() ||
                std::find(optional_syms.begin(), optional_syms.end(), c) != optional_syms.end();
            if (!in_branch)
                conj.push_back(f_clock(action_clock[static_cast<std::size_t>(c)], h0, CmpOp::Gt, 0));
        }
        return f_and(std::move(conj));
    }
    std::vector<FormulaP> disj;
    for (auto& w : branch_words(b)) disj.push_back(word_encoding(w, alphabet, action_clock, h0));
    return f_or(std::move(disj));
}

FormulaP phi(const std::vector<RestrictedBranch>& bs, const std::vector<int>& alphabet,
             const std::vector<int>& action_clock, int h0, bool optimized) {
    std::vector<FormulaP> disj;
    for (auto& b : bs) disj.push_back(phi_branch(b, alphabet, action_clock, h0, optimized));
    return f_or(std::move(disj));
}

// ── Component invariant via regular expressions ─────────────────────────────

namespace {

std::vector<bool> reachable_locations(const Component& c) {
    std::vector<bool> seen(c.locations.size(), false);
    std::deque<int> work{c.initial_location};
    seen[static_cast<std::size_t>(c.initial_location)] = true;
    while (!work.empty()) {
        int l = work.front();
        work.pop_front();
        for (auto& e : c.edges)
            if (e.src == l && !seen[static_cast<std::size_t>(e.dst)]) {
                seen[static_cast<std::size_t>(e.dst)] = true;
                work.push_back(e.dst);
            }
    }
    return seen;
}

}  // namespace

FormulaP regex_invariant(const SystemModel& m, const ClockLayout& lay, int instance) {
    const Component& c = m.instances[static_cast<std::size_t>(instance)];
    if (c.num_ordinary_clocks() > 0)
        throw std::runtime_error("regex invariants apply to untimed components only: " + c.name);
    std::vector<int> full;
    for (std::size_t a = 0; a < c.actions.size(); ++a) full.push_back(static_cast<int>(a));
    auto reach = reachable_locations(c);

    std::vector<FormulaP> disj;
    for (std::size_t l = 0; l < c.locations.size(); ++l) {
        if (!reach[l]) continue;
        std::vector<std::vector<int>> projs;
        for (auto& [loc, acts] : c.projections)
            if (loc == static_cast<int>(l)) projs.push_back(acts);
        if (projs.empty()) projs.push_back(full);

        std::vector<FormulaP> conj{f_at(instance, static_cast<int>(l))};
        for (auto& alphabet : projs) {
            auto re = regex_at(c, static_cast<int>(l), alphabet);
            if (!re) continue;
            auto branches = to_restricted(*re);
            conj.push_back(phi(branches, alphabet,
                               lay.action_clock[static_cast<std::size_t>(instance)], lay.h0));
        }
        disj.push_back(f_and(std::move(conj)));
    }
    return f_or(std::move(disj));
}

std::string dump_regex_invariant(const SystemModel& m, int instance) {
    const Component& c = m.instances[static_cast<std::size_t>(instance)];
    std::ostringstream os;
    std::vector<int> full;
    for (std::size_t a = 0; a < c.actions.size(); ++a) full.push_back(static_cast<int>(a));
    auto reach = reachable_locations(c);
    for (std::size_t l = 0; l < c.locations.size(); ++l) {
        if (!reach[l]) continue;
        std::vector<std::vector<int>> projs;
        for (auto& [loc, acts] : c.projections)
            if (loc == static_cast<int>(l)) projs.push_back(acts);
        if (projs.empty()) projs.push_back(full);
        for (auto& alphabet : projs) {
            os << c.name << "@" << c.locations[l] << " over {";
            for (std::size_t i = 0; i < alphabet.size(); ++i)
                os << (i ? "," : "") << c.actions[static_cast<std::size_t>(alphabet[i])];
            os << "}: ";
            auto re = regex_at(c, static_cast<int>(l), alphabet);
            if (!re) {
                os << "<unreachable>\n";
                continue;
            }
            os << regex_to_string(*re, c) << "\n  restricted: ";
            auto branches = to_restricted(*re);
            for (std::size_t i = 0; i < branches.size(); ++i)
                os << (i ? " + " : "") << branch_to_string(branches[i], c);
            os << "\n";
        }
    }
    return os.str();
}

}  // namespace tinv
