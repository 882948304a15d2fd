#include "tamitl/semantics.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace tamitl {

bool eval_literal(const clock_literal& l, const rational& v, sat_mode mode) {
    const rational d(l.atom.bound);
    if (mode == sat_mode::strong) {
        bool r = compare(l.atom.op, v, d);
        return l.negated ? !r : r;
    }
    if (l.atom.op == cmp::eq) return l.negated;
    if (l.negated) return !compare(l.atom.op, v, d);
    return compare(l.atom.op, v, d) || v == d;
}

static const rational& value_of(const clock_valuation& v, const std::string& x) {
    auto it = v.find(x);
    if (it == v.end()) throw declaration_error("unknown clock '" + x + "'");
    return it->second;
}

bool eval_clock_constraint(const convex_guard& g, const clock_valuation& v, sat_mode mode) {
    for (const auto& l : g)
        if (!eval_literal(l, value_of(v, l.atom.clock), mode)) return false;
    return true;
}

bool eval_clock_constraint(const clock_constraint& g, const clock_valuation& v) {
    using K = clock_constraint::kind;
    switch (g.k) {
        case K::truth: return true;
        case K::atom: return compare(g.a.op, value_of(v, g.a.clock), rational(g.a.bound));
        case K::negation: return !eval_clock_constraint(g.kids[0], v);
        case K::conjunction:
            return std::all_of(g.kids.begin(), g.kids.end(),
                               [&](const auto& c) { return eval_clock_constraint(c, v); });
        case K::disjunction:
            return std::any_of(g.kids.begin(), g.kids.end(),
                               [&](const auto& c) { return eval_clock_constraint(c, v); });
    }
    return false;
}

std::int64_t eval_int_expr(const int_expr& e, const var_valuation& v) {
    using K = int_expr::kind;
    switch (e.k) {
        case K::constant: return e.value;
        case K::variable: {
            auto it = v.find(e.var);
            if (it == v.end()) throw declaration_error("unknown variable '" + e.var + "'");
            return it->second;
        }
        case K::add: return eval_int_expr(e.kids[0], v) + eval_int_expr(e.kids[1], v);
        case K::sub: return eval_int_expr(e.kids[0], v) - eval_int_expr(e.kids[1], v);
        case K::mul: return eval_int_expr(e.kids[0], v) * eval_int_expr(e.kids[1], v);
        case K::neg: return -eval_int_expr(e.kids[0], v);
    }
    return 0;
}

bool eval_var_constraint(const var_constraint& c, const var_valuation& v) {
    using K = var_constraint::kind;
    switch (c.k) {
        case K::truth: return true;
        case K::atom: return compare(c.op, eval_int_expr(c.lhs, v), eval_int_expr(c.rhs, v));
        case K::negation: return !eval_var_constraint(c.kids[0], v);
        case K::conjunction:
            return std::all_of(c.kids.begin(), c.kids.end(),
                               [&](const auto& k) { return eval_var_constraint(k, v); });
        case K::disjunction:
            return std::any_of(c.kids.begin(), c.kids.end(),
                               [&](const auto& k) { return eval_var_constraint(k, v); });
    }
    return false;
}

assignment_result apply_assignments(const std::vector<assignment>& mu, const var_valuation& v,
                                    const network* net) {
    var_valuation out = v;
    std::map<std::string, std::int64_t> written;
    for (const auto& a : mu) {
        if (!v.count(a.target)) throw declaration_error("unknown variable '" + a.target + "'");
        std::int64_t val = eval_int_expr(a.value, v);
        auto [it, fresh] = written.emplace(a.target, val);
        if (!fresh && it->second != val) return inconsistent_assignment{a.target};
        out[a.target] = val;
    }
    if (net) {
        for (const auto& [name, val] : written) {
            int i = net->var_index(name);
            if (i < 0) throw declaration_error("unknown variable '" + name + "'");
            const auto& d = net->vars[static_cast<std::size_t>(i)];
            if (val < d.lo || val > d.hi) return domain_exit{name, val};
        }
    }
    return out;
}

bool literal_at(const clock_literal& l, std::int64_t c) {
    bool r = compare(l.atom.op, c, l.atom.bound);
    return l.negated ? !r : r;
}

namespace {

using cell = convex_guard;
using cells = std::vector<cell>;

// feasibility of a conjunction of literals over non-negative reals
bool feasible(const cell& c) {
    struct bounds {
        rational lo = 0;
        bool lo_strict = false;
        bool has_hi = false;
        rational hi;
        bool hi_strict = false;
        std::set<std::int64_t> holes;
    };
    std::map<std::string, bounds> b;
    auto raise = [](bounds& x, const rational& v, bool strict) {
        if (v > x.lo || (v == x.lo && strict)) {
            x.lo = v;
            x.lo_strict = strict;
        }
    };
    auto lower = [](bounds& x, const rational& v, bool strict) {
        if (!x.has_hi || v < x.hi || (v == x.hi && strict)) {
            x.has_hi = true;
            x.hi = v;
            x.hi_strict = strict;
        }
    };
    for (const auto& l : c) {
        auto& x = b[l.atom.clock];
        rational d(l.atom.bound);
        switch (l.atom.op) {
            case cmp::lt:
                if (l.negated) raise(x, d, false);
                else lower(x, d, true);
                break;
            case cmp::gt:
                if (l.negated) lower(x, d, false);
                else raise(x, d, true);
                break;
            case cmp::eq:
                if (l.negated) x.holes.insert(l.atom.bound);
                else {
                    raise(x, d, false);
                    lower(x, d, false);
                }
                break;
        }
    }
    for (const auto& [name, x] : b) {
        if (!x.has_hi) continue;
        if (x.hi < x.lo) return false;
        if (x.hi == x.lo) {
            if (x.lo_strict || x.hi_strict) return false;
            if (x.lo.get_den() == 1 && x.holes.count(x.lo.get_num().get_si())) return false;
        }
    }
    return true;
}

cell canonical(cell c) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
    return c;
}

cells product(const cells& a, const cells& b) {
    cells r;
    for (const auto& x : a)
        for (const auto& y : b) {
            cell z = x;
            z.insert(z.end(), y.begin(), y.end());
            z = canonical(std::move(z));
            if (feasible(z)) r.push_back(std::move(z));
        }
    return r;
}

cells decompose(const clock_constraint& g, bool positive);

// A or B as A, (not A and B): disjoint by construction
cells disjoint_or(const std::vector<clock_constraint>& kids, bool kids_positive) {
    cells out;
    cells prefix_negation{cell{}};
    for (const auto& k : kids) {
        auto here = product(prefix_negation, decompose(k, kids_positive));
        out.insert(out.end(), here.begin(), here.end());
        prefix_negation = product(prefix_negation, decompose(k, !kids_positive));
        if (prefix_negation.empty()) break;
    }
    return out;
}

cells decompose(const clock_constraint& g, bool positive) {
    using K = clock_constraint::kind;
    switch (g.k) {
        case K::truth: return positive ? cells{cell{}} : cells{};
        case K::atom: {
            if (positive || g.a.op != cmp::eq) return {cell{clock_literal{g.a, !positive}}};
            clock_atom below{g.a.clock, cmp::lt, g.a.bound};
            return {cell{clock_literal{below, false}},
                    canonical(cell{clock_literal{below, true}, clock_literal{g.a, true}})};
        }
        case K::negation: return decompose(g.kids[0], !positive);
        case K::conjunction:
        case K::disjunction: {
            bool is_and = (g.k == K::conjunction) == positive;
            if (!is_and) return disjoint_or(g.kids, positive);
            cells acc{cell{}};
            for (const auto& k : g.kids) acc = product(acc, decompose(k, positive));
            return acc;
        }
    }
    return {};
}

}  // namespace

std::vector<convex_guard> normalize_guard(const clock_constraint& g) {
    auto out = decompose(g, true);
    std::erase_if(out, [](const cell& c) { return !feasible(c); });
    return out;
}

namespace {

void check_guard(const network& n, const convex_guard& g, const std::string& where,
                 std::vector<diagnostic>& out) {
    for (const auto& l : g) {
        if (n.clock_index(l.atom.clock) < 0)
            out.push_back({where, "unknown clock '" + l.atom.clock + "'"});
        if (l.atom.bound < 0) out.push_back({where, "negative clock constant"});
    }
}

void check_expr(const network& n, const int_expr& e, const std::string& where,
                std::vector<diagnostic>& out) {
    if (e.k == int_expr::kind::variable && n.var_index(e.var) < 0)
        out.push_back({where, "unknown variable '" + e.var + "'"});
    for (const auto& k : e.kids) check_expr(n, k, where, out);
}

void check_vguard(const network& n, const var_constraint& c, const std::string& where,
                  std::vector<diagnostic>& out) {
    if (c.k == var_constraint::kind::atom) {
        check_expr(n, c.lhs, where, out);
        check_expr(n, c.rhs, where, out);
    }
    for (const auto& k : c.kids) check_vguard(n, k, where, out);
}

}  // namespace

std::vector<diagnostic> validate_network(const network& n) {
    std::vector<diagnostic> out;
    std::set<std::string> names;
    for (const auto& c : n.clocks)
        if (!names.insert(c).second) out.push_back({c, "duplicate declaration '" + c + "'"});
    for (const auto& v : n.vars) {
        if (!names.insert(v.name).second)
            out.push_back({v.name, "duplicate declaration '" + v.name + "'"});
        if (v.lo > v.hi) out.push_back({v.name, "empty domain"});
        else if (v.init < v.lo || v.init > v.hi)
            out.push_back({v.name, "initial value outside domain"});
    }
    if (n.automata.empty()) out.push_back({"network", "no automata"});
    std::set<std::string> anames;
    for (const auto& a : n.automata) {
        if (!anames.insert(a.name).second)
            out.push_back({a.name, "duplicate automaton '" + a.name + "'"});
        if (a.locations.empty()) out.push_back({a.name, "automaton without locations"});
        std::set<std::string> lnames;
        for (const auto& l : a.locations) {
            std::string where = a.name + "." + l.name;
            if (!lnames.insert(l.name).second) out.push_back({where, "duplicate location"});
            check_guard(n, l.invariant, where, out);
        }
        for (std::size_t i = 0; i < a.transitions.size(); ++i) {
            const auto& t = a.transitions[i];
            std::string where = a.name + ".t" + std::to_string(i);
            int nl = static_cast<int>(a.locations.size());
            if (t.source < 0 || t.source >= nl || t.target < 0 || t.target >= nl)
                out.push_back({where, "transition endpoint outside automaton"});
            check_guard(n, t.guard, where, out);
            check_vguard(n, t.var_guard, where, out);
            for (const auto& r : t.resets)
                if (n.clock_index(r) < 0) out.push_back({where, "unknown clock '" + r + "'"});
            for (const auto& u : t.updates) {
                if (n.var_index(u.target) < 0)
                    out.push_back({where, "unknown variable '" + u.target + "'"});
                check_expr(n, u.value, where, out);
            }
            if (!t.act.is_tau() && t.act.event.empty())
                out.push_back({where, "synchronization without event name"});
        }
    }
    return out;
}

std::vector<diagnostic> validate_config(const semantics_config& c) {
    std::vector<diagnostic> out;
    if (c.variant == encoding_variant::lorc && c.edges != edge_restriction::closed_open)
        out.push_back({"config", "lorc encoding requires closed-open edges"});
    return out;
}

network with_some_clock(const network& n) {
    if (!n.clocks.empty()) return n;
    network r = n;
    std::string name = "_idle";
    while (r.clock_index(name) >= 0 || r.var_index(name) >= 0) name += "_";
    r.clocks.push_back(name);
    return r;
}

network with_non_zeno_guard(const network& n) {
    network r = n;
    std::string z = "_nz";
    while (r.clock_index(z) >= 0 || r.var_index(z) >= 0) z += "_";
    r.clocks.push_back(z);
    automaton a;
    a.name = "_nonzeno";
    while (r.automaton_index(a.name) >= 0) a.name += "_";
    location l;
    l.name = "tick";
    l.invariant = {clock_literal{{z, cmp::gt, 1}, true}};
    a.locations.push_back(l);
    transition t;
    t.guard = {clock_literal{{z, cmp::eq, 1}, false}};
    t.resets = {z};
    a.transitions.push_back(t);
    r.automata.push_back(std::move(a));
    return r;
}

}  // namespace tamitl
