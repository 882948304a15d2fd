#include "tamitl/model.hpp"

#include <algorithm>

namespace tamitl {

bool compare(cmp op, const mpq_class& a, const mpq_class& b) {
    switch (op) {
        case cmp::lt: return a < b;
        case cmp::eq: return a == b;
        case cmp::gt: return a > b;
    }
    return false;
}

bool compare(cmp op, std::int64_t a, std::int64_t b) {
    switch (op) {
        case cmp::lt: return a < b;
        case cmp::eq: return a == b;
        case cmp::gt: return a > b;
    }
    return false;
}

const char* cmp_text(cmp op) {
    switch (op) {
        case cmp::lt: return "<";
        case cmp::eq: return "=";
        case cmp::gt: return ">";
    }
    return "?";
}

clock_constraint clock_constraint::make_atom(clock_atom at) {
    clock_constraint c;
    c.k = kind::atom;
    c.a = std::move(at);
    return c;
}

clock_constraint clock_constraint::make_not(clock_constraint c) {
    clock_constraint r;
    r.k = kind::negation;
    r.kids.push_back(std::move(c));
    return r;
}

clock_constraint clock_constraint::make_and(std::vector<clock_constraint> cs) {
    if (cs.empty()) return top();
    if (cs.size() == 1) return std::move(cs.front());
    clock_constraint r;
    r.k = kind::conjunction;
    r.kids = std::move(cs);
    return r;
}

clock_constraint clock_constraint::make_or(std::vector<clock_constraint> cs) {
    if (cs.size() == 1) return std::move(cs.front());
    clock_constraint r;
    r.k = kind::disjunction;
    r.kids = std::move(cs);
    return r;
}

clock_constraint clock_constraint::from_convex(const convex_guard& g) {
    std::vector<clock_constraint> cs;
    for (const auto& l : g) {
        auto a = make_atom(l.atom);
        cs.push_back(l.negated ? make_not(std::move(a)) : std::move(a));
    }
    return make_and(std::move(cs));
}

int_expr int_expr::constant(std::int64_t v) {
    int_expr e;
    e.value = v;
    return e;
}

int_expr int_expr::variable(std::string n) {
    int_expr e;
    e.k = kind::variable;
    e.var = std::move(n);
    return e;
}

int_expr int_expr::binary(kind k, int_expr a, int_expr b) {
    int_expr e;
    e.k = k;
    e.kids.push_back(std::move(a));
    e.kids.push_back(std::move(b));
    return e;
}

int_expr int_expr::negate(int_expr a) {
    int_expr e;
    e.k = kind::neg;
    e.kids.push_back(std::move(a));
    return e;
}

var_constraint var_constraint::make_atom(int_expr l, cmp o, int_expr r) {
    var_constraint c;
    c.k = kind::atom;
    c.op = o;
    c.lhs = std::move(l);
    c.rhs = std::move(r);
    return c;
}

var_constraint var_constraint::make_not(var_constraint c) {
    var_constraint r;
    r.k = kind::negation;
    r.kids.push_back(std::move(c));
    return r;
}

var_constraint var_constraint::make_and(std::vector<var_constraint> cs) {
    std::erase_if(cs, [](const var_constraint& c) { return c.is_true(); });
    if (cs.empty()) return top();
    if (cs.size() == 1) return std::move(cs.front());
    var_constraint r;
    r.k = kind::conjunction;
    r.kids = std::move(cs);
    return r;
}

var_constraint var_constraint::make_or(std::vector<var_constraint> cs) {
    if (cs.size() == 1) return std::move(cs.front());
    var_constraint r;
    r.k = kind::disjunction;
    r.kids = std::move(cs);
    return r;
}

char sync_symbol(sync_kind s) {
    switch (s) {
        case sync_kind::send: return '!';
        case sync_kind::recv: return '?';
        case sync_kind::bsend: return '#';
        case sync_kind::brecv: return '@';
        case sync_kind::osend: return '&';
        case sync_kind::orecv: return '*';
        default: return ' ';
    }
}

bool is_sender(sync_kind s) {
    return s == sync_kind::send || s == sync_kind::bsend || s == sync_kind::osend;
}

std::set<std::string> transition::updated_vars() const {
    std::set<std::string> r;
    for (const auto& a : updates) r.insert(a.target);
    return r;
}

int automaton::location_index(const std::string& n) const {
    for (std::size_t i = 0; i < locations.size(); ++i)
        if (locations[i].name == n) return static_cast<int>(i);
    return -1;
}

int network::clock_index(const std::string& n) const {
    auto it = std::find(clocks.begin(), clocks.end(), n);
    return it == clocks.end() ? -1 : static_cast<int>(it - clocks.begin());
}

int network::var_index(const std::string& n) const {
    for (std::size_t i = 0; i < vars.size(); ++i)
        if (vars[i].name == n) return static_cast<int>(i);
    return -1;
}

int network::automaton_index(const std::string& n) const {
    for (std::size_t i = 0; i < automata.size(); ++i)
        if (automata[i].name == n) return static_cast<int>(i);
    return -1;
}

std::set<std::string> network::propositions() const {
    std::set<std::string> r;
    for (const auto& a : automata)
        for (const auto& l : a.locations) r.insert(l.labels.begin(), l.labels.end());
    return r;
}

std::set<std::string> network::events() const {
    std::set<std::string> r;
    for (const auto& a : automata)
        for (const auto& t : a.transitions)
            if (!t.act.is_tau()) r.insert(t.act.event);
    return r;
}

std::int64_t network::max_constant(const std::string& clock) const {
    std::int64_t m = 0;
    auto scan = [&](const convex_guard& g) {
        for (const auto& l : g)
            if (l.atom.clock == clock) m = std::max(m, l.atom.bound);
    };
    for (const auto& a : automata) {
        for (const auto& l : a.locations) scan(l.invariant);
        for (const auto& t : a.transitions) scan(t.guard);
    }
    return m;
}

std::string to_string(liveness l) {
    switch (l) {
        case liveness::strong_transition: return "strong-transition";
        case liveness::weak_transition: return "weak-transition";
        case liveness::strong_guard: return "strong-guard";
        case liveness::weak_guard: return "weak-guard";
    }
    return "?";
}

std::string to_string(edge_restriction e) {
    switch (e) {
        case edge_restriction::closed_open: return "closed-open";
        case edge_restriction::open_closed: return "open-closed";
        case edge_restriction::unrestricted: return "unrestricted";
    }
    return "?";
}

std::string to_string(encoding_variant v) {
    return v == encoding_variant::general ? "general" : "lorc";
}

std::optional<liveness> parse_liveness(const std::string& s) {
    for (auto l : {liveness::strong_transition, liveness::weak_transition, liveness::strong_guard,
                   liveness::weak_guard})
        if (to_string(l) == s) return l;
    return std::nullopt;
}

std::optional<edge_restriction> parse_edges(const std::string& s) {
    for (auto e : {edge_restriction::closed_open, edge_restriction::open_closed,
                   edge_restriction::unrestricted})
        if (to_string(e) == s) return e;
    return std::nullopt;
}

std::optional<encoding_variant> parse_variant(const std::string& s) {
    if (s == "general") return encoding_variant::general;
    if (s == "lorc" || s == "lorc-optimized") return encoding_variant::lorc;
    return std::nullopt;
}

}  // namespace tamitl
