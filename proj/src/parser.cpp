#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "tinv/model.hpp"

namespace tinv {

ParseError::ParseError(const std::string& msg, int l, int c)
    : std::runtime_error("line " + std::to_string(l) + ":" + std::to_string(c) + ": " + msg),
      line(l),
      column(c) {}

namespace {

struct Token {
    std::string text;
    int col;
    bool is_number = false;
};

std::vector<Token> tokenize(const std::string& line, int lineno) {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        char c = line[i];
        if (c == '#') break;
        if (std::isspace(static_cast<unsigned char>(c))) {
            ++i;
            continue;
        }
        int col = static_cast<int>(i) + 1;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t j = i;
            while (j < line.size() &&
                   (std::isalnum(static_cast<unsigned char>(line[j])) || line[j] == '_'))
                ++j;
            out.push_back({line.substr(i, j - i), col, false});
            i = j;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            std::size_t j = i;
            while (j < line.size() && std::isdigit(static_cast<unsigned char>(line[j]))) ++j;
            if (j < line.size() && line[j] == '.')
                throw ParseError("rational constants are not supported", lineno, col);
            out.push_back({line.substr(i, j - i), col, true});
            i = j;
        } else {
            static const char* two[] = {"->", "<=", ">="};
            bool matched = false;
            for (auto* t : two)
                if (line.compare(i, 2, t) == 0) {
                    out.push_back({t, col, false});
                    i += 2;
                    matched = true;
                    break;
                }
            if (matched) continue;
            if (std::string("=|,:()@.-<>").find(c) == std::string::npos)
                throw ParseError(std::string("unexpected character '") + c + "'", lineno, col);
            out.push_back({std::string(1, c), col, false});
            ++i;
        }
    }
    return out;
}

// Cursor over one line of tokens.
struct Cur {
    const std::vector<Token>* toks;
    std::size_t pos = 0;
    int lineno;

    bool done() const { return pos >= toks->size(); }
    const Token& peek() const {
        static Token eol{"<end of line>", 0, false};
        return done() ? eol : (*toks)[pos];
    }
    Token take() {
        if (done()) throw ParseError("unexpected end of line", lineno, 0);
        return (*toks)[pos++];
    }
    bool accept(const std::string& t) {
        if (!done() && (*toks)[pos].text == t) {
            ++pos;
            return true;
        }
        return false;
    }
    void expect(const std::string& t) {
        if (!accept(t))
            throw ParseError("expected '" + t + "', found '" + peek().text + "'", lineno,
                             peek().col);
    }
    std::string ident(const char* what) {
        const Token& t = peek();
        if (done() || t.is_number ||
            !(std::isalpha(static_cast<unsigned char>(t.text[0])) || t.text[0] == '_'))
            throw ParseError(std::string("expected ") + what + ", found '" + t.text + "'", lineno,
                             t.col);
        return take().text;
    }
    std::int64_t integer() {
        bool neg = accept("-");
        const Token& t = peek();
        if (!t.is_number)
            throw ParseError("expected integer constant, found '" + t.text + "'", lineno, t.col);
        std::int64_t v = std::stoll(take().text);
        return neg ? -v : v;
    }
    std::optional<CmpOp> cmp_op() {
        if (accept("<=")) return CmpOp::Le;
        if (accept(">=")) return CmpOp::Ge;
        if (accept("<")) return CmpOp::Lt;
        if (accept(">")) return CmpOp::Gt;
        if (accept("=")) return CmpOp::Eq;
        return std::nullopt;
    }
};

Guard parse_conj(Cur& c, const Component& comp, bool tpc_position) {
    Guard g;
    if (c.peek().text == "true") {
        c.take();
        return g;
    }
    while (true) {
        GuardAtom a;
        std::string x = c.ident("clock name");
        a.lhs = comp.find_clock(x);
        if (a.lhs < 0) throw ParseError("unknown clock '" + x + "'", c.lineno, c.peek().col);
        if (c.accept("-")) {
            if (c.peek().is_number)
                throw ParseError("expected clock name after '-'", c.lineno, c.peek().col);
            std::string y = c.ident("clock name");
            a.rhs = comp.find_clock(y);
            if (a.rhs < 0) throw ParseError("unknown clock '" + y + "'", c.lineno, c.peek().col);
        }
        auto op = c.cmp_op();
        if (!op) throw ParseError("expected comparison operator", c.lineno, c.peek().col);
        a.op = *op;
        a.ct = c.integer();
        if (tpc_position && (a.op != CmpOp::Le || a.rhs >= 0))
            throw ParseError("time progress conditions admit only upper bounds x <= ct", c.lineno,
                             c.peek().col);
        g.push_back(a);
        if (!c.accept("and")) break;
    }
    return g;
}

struct PendingProjection {
    std::string location;
    std::vector<std::string> actions;
    int lineno;
};

struct PendingProperty {
    std::string name;
    std::vector<Token> toks;
    int lineno;
};

// Formula parser (property grammar). Needs the fully-resolved model and the
// clock layout so history clock references can be bound.
struct FormulaParser {
    const SystemModel& m;
    const ClockLayout& lay;
    Cur& c;
    bool uses_history = false;

    FormulaP parse() {
        FormulaP f = implies();
        if (!c.done())
            throw ParseError("unexpected token '" + c.peek().text + "' in formula", c.lineno,
                             c.peek().col);
        return f;
    }

    FormulaP implies() {
        FormulaP a = disj();
        if (c.accept("implies")) return f_implies(a, implies());
        return a;
    }
    FormulaP disj() {
        FormulaP a = conj();
        while (c.accept("or")) a = f_or({a, conj()});
        return a;
    }
    FormulaP conj() {
        FormulaP a = unary();
        while (c.accept("and")) a = f_and({a, unary()});
        return a;
    }
    FormulaP unary() {
        if (c.accept("not")) return f_not(unary());
        if (c.accept("(")) {
            FormulaP f = implies();
            c.expect(")");
            return f;
        }
        return atom();
    }

    int clockref() {
        std::string t = c.ident("clock reference");
        if (t == "h0") {
            uses_history = true;
            return lay.h0;
        }
        if (t == "h" && c.accept("(")) {
            uses_history = true;
            std::string a = c.ident("action or interaction name");
            if (c.accept(".")) {
                std::string act = c.ident("action name");
                int inst = m.find_instance(a);
                if (inst < 0)
                    throw ParseError("unknown instance '" + a + "'", c.lineno, c.peek().col);
                int ai = m.instances[static_cast<std::size_t>(inst)].find_action(act);
                if (ai < 0)
                    throw ParseError("unknown action '" + a + "." + act + "'", c.lineno,
                                     c.peek().col);
                c.expect(")");
                return lay.action_clock[static_cast<std::size_t>(inst)][static_cast<std::size_t>(ai)];
            }
            int k = m.find_interaction(a);
            if (k < 0) throw ParseError("unknown interaction '" + a + "'", c.lineno, c.peek().col);
            c.expect(")");
            return lay.interaction_clock[static_cast<std::size_t>(k)];
        }
        // inst.clock
        int inst = m.find_instance(t);
        if (inst < 0) throw ParseError("unknown instance '" + t + "'", c.lineno, c.peek().col);
        c.expect(".");
        std::string x = c.ident("clock name");
        const Component& comp = m.instances[static_cast<std::size_t>(inst)];
        int lc = comp.find_clock(x);
        if (lc < 0)
            throw ParseError("unknown clock '" + t + "." + x + "'", c.lineno, c.peek().col);
        // Count ordinary clocks before lc.
        int ord = 0;
        for (int i = 0; i < lc; ++i)
            if (comp.clock_kinds[static_cast<std::size_t>(i)] == ClockKind::Ordinary) ++ord;
        return lay.ordinary[static_cast<std::size_t>(inst)][static_cast<std::size_t>(ord)];
    }

    FormulaP atom() {
        if (c.peek().text == "true") {
            c.take();
            return f_true();
        }
        if (c.peek().text == "false") {
            c.take();
            return f_false();
        }
        // inst@loc?
        std::size_t save = c.pos;
        std::string t = c.ident("atom");
        if (c.accept("@")) {
            int inst = m.find_instance(t);
            if (inst < 0) throw ParseError("unknown instance '" + t + "'", c.lineno, c.peek().col);
            std::string l = c.ident("location name");
            int li = m.instances[static_cast<std::size_t>(inst)].find_location(l);
            if (li < 0)
                throw ParseError("unknown location '" + t + "@" + l + "'", c.lineno, c.peek().col);
            return f_at(inst, li);
        }
        c.pos = save;
        int lhs = clockref();
        int rhs = -1;
        if (c.accept("-")) rhs = clockref();
        auto op = c.cmp_op();
        if (!op) throw ParseError("expected comparison operator", c.lineno, c.peek().col);
        std::int64_t ct = c.integer();
        return f_clock(lhs, rhs, *op, ct);
    }
};

void check_unique(const std::vector<std::string>& names, const std::string& what, int lineno) {
    for (std::size_t i = 0; i < names.size(); ++i)
        for (std::size_t j = i + 1; j < names.size(); ++j)
            if (names[i] == names[j])
                throw ParseError("duplicate " + what + " '" + names[i] + "'", lineno, 0);
}

}  // namespace

FormulaP parse_formula(const SystemModel& m, const ClockLayout& lay, const std::string& text,
                       bool* uses_history) {
    auto toks = tokenize(text, 0);
    Cur c{&toks, 0, 0};
    FormulaParser fp{m, lay, c};
    FormulaP f = fp.parse();
    if (uses_history) *uses_history = fp.uses_history;
    return f;
}

SystemModel parse_model(const std::string& text) {
    SystemModel m;
    std::istringstream in(text);
    std::string line;
    int lineno = 0;

    enum class Sect { Top, Component, System } sect = Sect::Top;
    Component comp;
    std::vector<PendingProjection> pending_proj;
    std::vector<PendingProperty> pending_props;
    std::optional<std::pair<std::string, std::vector<std::string>>> pending_sym;
    std::optional<std::string> pending_serialize;
    bool saw_system = false;

    auto finish_component = [&]() {
        if (comp.initial_location < 0)
            throw ParseError("component '" + comp.name + "' has no initial location", lineno, 0);
        if (comp.initial_constraint.empty()) {
            for (std::size_t x = 0; x < comp.clocks.size(); ++x) {
                GuardAtom a;
                a.lhs = static_cast<int>(x);
                a.op = CmpOp::Eq;
                a.ct = 0;
                comp.initial_constraint.push_back(a);
            }
        }
        for (auto& pp : pending_proj) {
            int l = comp.find_location(pp.location);
            if (l < 0)
                throw ParseError("unknown location '" + pp.location + "' in project", pp.lineno, 0);
            std::vector<int> acts;
            for (auto& an : pp.actions) {
                int a = comp.find_action(an);
                if (a < 0)
                    throw ParseError("unknown action '" + an + "' in project", pp.lineno, 0);
                acts.push_back(a);
            }
            std::sort(acts.begin(), acts.end());
            acts.erase(std::unique(acts.begin(), acts.end()), acts.end());
            comp.projections.emplace_back(l, acts);
        }
        pending_proj.clear();
        check_unique(comp.locations, "location", lineno);
        check_unique(comp.clocks, "clock", lineno);
        m.templates.push_back(comp);
        m.template_names.push_back(comp.name);
    };

    while (std::getline(in, line)) {
        ++lineno;
        auto toks = tokenize(line, lineno);
        if (toks.empty()) continue;
        Cur c{&toks, 0, lineno};
        std::string kw = c.ident("keyword");

        if (sect == Sect::Top) {
            if (kw == "component") {
                comp = Component{};
                comp.name = c.ident("component name");
                if (std::find(m.template_names.begin(), m.template_names.end(), comp.name) !=
                    m.template_names.end())
                    throw ParseError("duplicate component '" + comp.name + "'", lineno, 0);
                sect = Sect::Component;
            } else if (kw == "system") {
                if (saw_system) throw ParseError("duplicate system block", lineno, 0);
                saw_system = true;
                sect = Sect::System;
            } else {
                throw ParseError("expected 'component' or 'system', found '" + kw + "'", lineno, 0);
            }
            continue;
        }

        if (sect == Sect::Component) {
            if (kw == "clock") {
                comp.clocks.push_back(c.ident("clock name"));
                comp.clock_kinds.push_back(ClockKind::Ordinary);
            } else if (kw == "location") {
                std::string lname = c.ident("location name");
                comp.locations.push_back(lname);
                comp.tpc.emplace_back();
                if (c.accept("initial")) {
                    if (comp.initial_location >= 0)
                        throw ParseError("multiple initial locations", lineno, 0);
                    comp.initial_location = static_cast<int>(comp.locations.size()) - 1;
                }
                if (c.accept("tpc")) comp.tpc.back() = parse_conj(c, comp, true);
            } else if (kw == "edge") {
                Edge e;
                std::string src = c.ident("location name");
                e.src = comp.find_location(src);
                if (e.src < 0) throw ParseError("unknown location '" + src + "'", lineno, 0);
                c.expect("->");
                std::string dst = c.ident("location name");
                e.dst = comp.find_location(dst);
                if (e.dst < 0) throw ParseError("unknown location '" + dst + "'", lineno, 0);
                c.expect("on");
                std::string act = c.ident("action name");
                if (act == "tau") {
                    e.action = -1;
                } else {
                    e.action = comp.find_action(act);
                    if (e.action < 0) {
                        comp.actions.push_back(act);
                        e.action = static_cast<int>(comp.actions.size()) - 1;
                    }
                }
                if (c.accept("guard")) e.guard = parse_conj(c, comp, false);
                if (c.accept("reset")) {
                    while (true) {
                        std::string x = c.ident("clock name");
                        int xi = comp.find_clock(x);
                        if (xi < 0) throw ParseError("unknown clock '" + x + "'", lineno, 0);
                        e.resets.push_back(xi);
                        if (!c.accept(",")) break;
                    }
                }
                comp.edges.push_back(e);
            } else if (kw == "init") {
                std::string l = c.ident("location name");
                int li = comp.find_location(l);
                if (li < 0) throw ParseError("unknown location '" + l + "'", lineno, 0);
                if (comp.initial_location >= 0 && comp.initial_location != li)
                    throw ParseError("init location conflicts with 'initial' marker", lineno, 0);
                comp.initial_location = li;
                c.expect("provided");
                comp.initial_constraint = parse_conj(c, comp, false);
            } else if (kw == "project") {
                PendingProjection pp;
                pp.lineno = lineno;
                pp.location = c.ident("location name");
                c.expect("onto");
                while (true) {
                    pp.actions.push_back(c.ident("action name"));
                    if (!c.accept(",")) break;
                }
                pending_proj.push_back(pp);
            } else if (kw == "end") {
                finish_component();
                sect = Sect::Top;
            } else {
                throw ParseError("unexpected '" + kw + "' in component block", lineno, 0);
            }
            if (!c.done() && kw != "end")
                throw ParseError("trailing tokens: '" + c.peek().text + "'", lineno, c.peek().col);
            continue;
        }

        // System section.
        if (kw == "instance") {
            std::string iname = c.ident("instance name");
            if (m.find_instance(iname) >= 0)
                throw ParseError("duplicate instance '" + iname + "'", lineno, 0);
            std::string tname = c.ident("component name");
            auto it = std::find(m.template_names.begin(), m.template_names.end(), tname);
            if (it == m.template_names.end())
                throw ParseError("unknown component '" + tname + "'", lineno, 0);
            int ti = static_cast<int>(it - m.template_names.begin());
            Component inst = m.templates[static_cast<std::size_t>(ti)];
            inst.name = iname;
            m.instances.push_back(std::move(inst));
            m.instance_names.push_back(iname);
            m.instance_template.push_back(ti);
        } else if (kw == "interaction") {
            Interaction a;
            a.id = c.ident("interaction id");
            if (m.find_interaction(a.id) >= 0)
                throw ParseError("duplicate interaction '" + a.id + "'", lineno, 0);
            c.expect("=");
            while (true) {
                std::string iname = c.ident("instance name");
                int inst = m.find_instance(iname);
                if (inst < 0) throw ParseError("unknown instance '" + iname + "'", lineno, 0);
                c.expect(".");
                std::string act = c.ident("action name");
                int ai = m.instances[static_cast<std::size_t>(inst)].find_action(act);
                if (ai < 0)
                    throw ParseError("unknown action '" + iname + "." + act + "'", lineno, 0);
                for (auto& p : a.participants)
                    if (p.instance == inst)
                        throw ParseError("interaction '" + a.id +
                                             "' uses two actions of instance '" + iname + "'",
                                         lineno, 0);
                a.participants.push_back({inst, ai});
                if (!c.accept("|")) break;
            }
            std::sort(a.participants.begin(), a.participants.end());
            m.gamma.push_back(std::move(a));
        } else if (kw == "symmetry") {
            c.expect("controller");
            std::string ctrl = c.ident("instance name");
            std::vector<std::string> cls;
            c.expect("class");
            while (true) {
                cls.push_back(c.ident("instance name"));
                if (!c.accept(",")) break;
            }
            pending_sym = {ctrl, cls};
            if (c.accept("serialize")) {
                std::string inst = c.ident("instance name");
                c.expect(".");
                std::string act = c.ident("action name");
                pending_serialize = inst + "." + act;
            }
        } else if (kw == "property") {
            PendingProperty pp;
            pp.lineno = lineno;
            pp.name = c.ident("property name");
            c.expect(":");
            pp.toks.assign(toks.begin() + static_cast<long>(c.pos), toks.end());
            c.pos = toks.size();
            pending_props.push_back(std::move(pp));
        } else if (kw == "end") {
            sect = Sect::Top;
        } else {
            throw ParseError("unexpected '" + kw + "' in system block", lineno, 0);
        }
    }
    if (sect != Sect::Top) throw ParseError("unterminated block", lineno, 0);
    if (!saw_system) throw ParseError("missing system block", lineno, 0);

    // Resolve symmetry and properties once the interaction set is known.
    if (pending_sym) {
        SymmetryDecl sd;
        sd.controller = m.find_instance(pending_sym->first);
        if (sd.controller < 0)
            throw ParseError("unknown instance '" + pending_sym->first + "' in symmetry", lineno, 0);
        int cls_template = -1;
        for (auto& n : pending_sym->second) {
            int i = m.find_instance(n);
            if (i < 0) throw ParseError("unknown instance '" + n + "' in symmetry", lineno, 0);
            if (i == sd.controller)
                throw ParseError("controller cannot be in its own symmetry class", lineno, 0);
            if (cls_template < 0)
                cls_template = m.instance_template[static_cast<std::size_t>(i)];
            else if (cls_template != m.instance_template[static_cast<std::size_t>(i)])
                throw ParseError("symmetry class must instantiate one component", lineno, 0);
            sd.cls.push_back(i);
        }
        if (pending_serialize) {
            auto dot = pending_serialize->find('.');
            int inst = m.find_instance(pending_serialize->substr(0, dot));
            if (inst < 0) throw ParseError("unknown instance in serialize", lineno, 0);
            int act = m.instances[static_cast<std::size_t>(inst)].find_action(
                pending_serialize->substr(dot + 1));
            if (act < 0) throw ParseError("unknown action in serialize", lineno, 0);
            sd.serialize = ActionRef{inst, act};
        }
        m.symmetry = sd;
    }

    ClockLayout lay = build_layout(m);
    for (auto& pp : pending_props) {
        if (m.find_property(pp.name))
            throw ParseError("duplicate property '" + pp.name + "'", pp.lineno, 0);
        Cur c{&pp.toks, 0, pp.lineno};
        FormulaParser fp{m, lay, c};
        PropertyDef pd;
        pd.name = pp.name;
        pd.formula = fp.parse();
        pd.uses_history = fp.uses_history;
        m.properties.push_back(std::move(pd));
    }
    return m;
}

SystemModel parse_model_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open model file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_model(ss.str());
}

// ── Printing ────────────────────────────────────────────────────────────────

namespace {

std::string guard_to_string(const Guard& g, const Component& comp) {
    if (g.empty()) return "true";
    std::string out;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (i) out += " and ";
        out += comp.clocks[static_cast<std::size_t>(g[i].lhs)];
        if (g[i].rhs >= 0) out += " - " + comp.clocks[static_cast<std::size_t>(g[i].rhs)];
        out += std::string(" ") + cmp_op_text(g[i].op) + " " + std::to_string(g[i].ct);
    }
    return out;
}

}  // namespace

std::string formula_to_string(const FormulaP& f, const SystemModel& m, const ClockLayout& lay) {
    auto clock_ref = [&](int id) -> std::string {
        const auto& info = lay.clocks[static_cast<std::size_t>(id)];
        if (info.kind == ClockKind::Ordinary) return info.name;  // already inst.x
        return info.name;  // h0 / h(...)
    };
    switch (f->kind) {
        case Formula::Kind::True: return "true";
        case Formula::Kind::False: return "false";
        case Formula::Kind::At:
            return m.instance_names[static_cast<std::size_t>(f->instance)] + "@" +
                   m.instances[static_cast<std::size_t>(f->instance)]
                       .locations[static_cast<std::size_t>(f->location)];
        case Formula::Kind::Clock: {
            std::string s = clock_ref(f->lhs);
            if (f->rhs >= 0) s += " - " + clock_ref(f->rhs);
            return s + " " + cmp_op_text(f->op) + " " + std::to_string(f->ct);
        }
        case Formula::Kind::Not:
            return "not (" + formula_to_string(f->kids[0], m, lay) + ")";
        case Formula::Kind::Implies:
            return "(" + formula_to_string(f->kids[0], m, lay) + " implies " +
                   formula_to_string(f->kids[1], m, lay) + ")";
        case Formula::Kind::And:
        case Formula::Kind::Or: {
            std::string sep = f->kind == Formula::Kind::And ? " and " : " or ";
            std::string out = "(";
            for (std::size_t i = 0; i < f->kids.size(); ++i) {
                if (i) out += sep;
                out += formula_to_string(f->kids[i], m, lay);
            }
            return out + ")";
        }
    }
    return "?";
}

std::string pretty_print(const SystemModel& m) {
    std::ostringstream os;
    for (auto& t : m.templates) {
        os << "component " << t.name << "\n";
        for (std::size_t x = 0; x < t.clocks.size(); ++x)
            if (t.clock_kinds[x] == ClockKind::Ordinary || t.clock_kinds[x] == ClockKind::Observer)
                os << "  clock " << t.clocks[x] << "\n";
        for (std::size_t l = 0; l < t.locations.size(); ++l) {
            os << "  location " << t.locations[l];
            if (static_cast<int>(l) == t.initial_location) os << " initial";
            if (!t.tpc[l].empty()) os << " tpc " << guard_to_string(t.tpc[l], t);
            os << "\n";
        }
        os << "  init " << t.locations[static_cast<std::size_t>(t.initial_location)] << " provided "
           << guard_to_string(t.initial_constraint, t) << "\n";
        for (auto& e : t.edges) {
            os << "  edge " << t.locations[static_cast<std::size_t>(e.src)] << " -> "
               << t.locations[static_cast<std::size_t>(e.dst)] << " on "
               << (e.action < 0 ? "tau" : t.actions[static_cast<std::size_t>(e.action)]);
            if (!e.guard.empty()) os << " guard " << guard_to_string(e.guard, t);
            if (!e.resets.empty()) {
                os << " reset ";
                for (std::size_t i = 0; i < e.resets.size(); ++i) {
                    if (i) os << ",";
                    os << t.clocks[static_cast<std::size_t>(e.resets[i])];
                }
            }
            os << "\n";
        }
        for (auto& [loc, acts] : t.projections) {
            os << "  project " << t.locations[static_cast<std::size_t>(loc)] << " onto ";
            for (std::size_t i = 0; i < acts.size(); ++i) {
                if (i) os << ",";
                os << t.actions[static_cast<std::size_t>(acts[i])];
            }
            os << "\n";
        }
        os << "end\n\n";
    }
    os << "system\n";
    for (std::size_t i = 0; i < m.instances.size(); ++i)
        os << "  instance " << m.instance_names[i] << " "
           << m.template_names[static_cast<std::size_t>(m.instance_template[i])] << "\n";
    for (auto& a : m.gamma) {
        os << "  interaction " << a.id << " = ";
        for (std::size_t i = 0; i < a.participants.size(); ++i) {
            if (i) os << " | ";
            os << m.action_name(a.participants[i]);
        }
        os << "\n";
    }
    if (m.symmetry) {
        os << "  symmetry controller " << m.instance_names[static_cast<std::size_t>(m.symmetry->controller)]
           << " class ";
        for (std::size_t i = 0; i < m.symmetry->cls.size(); ++i) {
            if (i) os << ",";
            os << m.instance_names[static_cast<std::size_t>(m.symmetry->cls[i])];
        }
        if (m.symmetry->serialize) os << " serialize " << m.action_name(*m.symmetry->serialize);
        os << "\n";
    }
    ClockLayout lay = build_layout(m);
    for (auto& p : m.properties)
        os << "  property " << p.name << ": " << formula_to_string(p.formula, m, lay) << "\n";
    os << "end\n";
    return os.str();
}

// ── Structural equality (round-trip tests) ──────────────────────────────────

namespace {

bool guards_equal(const Guard& a, const Guard& b) {
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i].lhs != b[i].lhs || a[i].rhs != b[i].rhs || a[i].op != b[i].op ||
            a[i].ct != b[i].ct)
            return false;
    return true;
}

bool components_equal(const Component& a, const Component& b) {
    if (a.name != b.name || a.locations != b.locations || a.actions != b.actions ||
        a.clocks != b.clocks || a.initial_location != b.initial_location)
        return false;
    if (!guards_equal(a.initial_constraint, b.initial_constraint)) return false;
    if (a.tpc.size() != b.tpc.size() || a.edges.size() != b.edges.size()) return false;
    for (std::size_t i = 0; i < a.tpc.size(); ++i)
        if (!guards_equal(a.tpc[i], b.tpc[i])) return false;
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
        const Edge &x = a.edges[i], &y = b.edges[i];
        if (x.src != y.src || x.dst != y.dst || x.action != y.action || x.resets != y.resets ||
            !guards_equal(x.guard, y.guard))
            return false;
    }
    return a.projections == b.projections;
}

bool formulas_struct_equal(const FormulaP& a, const FormulaP& b) {
    if (a->kind != b->kind || a->instance != b->instance || a->location != b->location ||
        a->lhs != b->lhs || a->rhs != b->rhs || a->op != b->op || a->ct != b->ct ||
        a->kids.size() != b->kids.size())
        return false;
    for (std::size_t i = 0; i < a->kids.size(); ++i)
        if (!formulas_struct_equal(a->kids[i], b->kids[i])) return false;
    return true;
}

}  // namespace

bool models_equal(const SystemModel& a, const SystemModel& b) {
    if (a.instances.size() != b.instances.size() || a.gamma.size() != b.gamma.size() ||
        a.properties.size() != b.properties.size() || a.instance_names != b.instance_names)
        return false;
    for (std::size_t i = 0; i < a.instances.size(); ++i)
        if (!components_equal(a.instances[i], b.instances[i])) return false;
    for (std::size_t i = 0; i < a.gamma.size(); ++i) {
        if (a.gamma[i].id != b.gamma[i].id) return false;
        if (!(a.gamma[i].participants == b.gamma[i].participants)) return false;
    }
    for (std::size_t i = 0; i < a.properties.size(); ++i) {
        if (a.properties[i].name != b.properties[i].name) return false;
        if (!formulas_struct_equal(a.properties[i].formula, b.properties[i].formula)) return false;
    }
    if (a.symmetry.has_value() != b.symmetry.has_value()) return false;
    if (a.symmetry &&
        (a.symmetry->controller != b.symmetry->controller || a.symmetry->cls != b.symmetry->cls))
        return false;
    return true;
}

}  // namespace tinv
