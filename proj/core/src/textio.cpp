#include "tamitl/textio.hpp"

#include "tamitl/semantics.hpp"

#include <cctype>
#include <fstream>
#include <iostream>
#include <sstream>

namespace tamitl {

std::string to_string(const source_span& s) {
    return s.file + ":" + std::to_string(s.line) + ":" + std::to_string(s.column);
}

static std::string join_messages(const std::vector<located_message>& msgs) {
    std::string out;
    for (const auto& m : msgs) {
        if (!out.empty()) out += "\n";
        out += to_string(m.span) + ": " + m.message;
    }
    return out;
}

parse_error::parse_error(std::vector<located_message> msgs)
    : std::runtime_error(join_messages(msgs)), msgs_(std::move(msgs)) {}

namespace {

enum class tk { ident, number, punct, end };

struct token {
    tk kind = tk::end;
    std::string text;
    source_span span;
};

std::vector<token> lex(const std::string& src, const std::string& file) {
    static const char* const two[] = {"->", ":=", "==", "!=", "<=", ">=", "&&", "||"};
    std::vector<token> out;
    int line = 1, col = 1;
    std::size_t i = 0;
    auto advance = [&](std::size_t n) {
        for (std::size_t j = 0; j < n; ++j, ++i) {
            if (src[i] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
    };
    while (i < src.size()) {
        char c = src[i];
        if (std::isspace(static_cast<unsigned char>(c))) {
            advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '/') {
            while (i < src.size() && src[i] != '\n') advance(1);
            continue;
        }
        if (c == '/' && i + 1 < src.size() && src[i + 1] == '*') {
            advance(2);
            while (i + 1 < src.size() && !(src[i] == '*' && src[i + 1] == '/')) advance(1);
            advance(std::min<std::size_t>(2, src.size() - i));
            continue;
        }
        token t;
        t.span = {file, line, col, col};
        std::size_t start = i;
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (i < src.size() &&
                   (std::isalnum(static_cast<unsigned char>(src[i])) || src[i] == '_' || src[i] == '.'))
                advance(1);
            t.kind = tk::ident;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            while (i < src.size() && std::isdigit(static_cast<unsigned char>(src[i]))) advance(1);
            t.kind = tk::number;
        } else {
            t.kind = tk::punct;
            std::size_t n = 1;
            for (const char* p : two)
                if (src.compare(i, 2, p) == 0) n = 2;
            advance(n);
        }
        t.text = src.substr(start, i - start);
        t.span.end_column = col;
        out.push_back(std::move(t));
    }
    token e;
    e.span = {file, line, col, col};
    out.push_back(e);
    return out;
}

class cursor {
public:
    explicit cursor(std::vector<token> toks) : toks_(std::move(toks)) {}

    const token& peek(std::size_t ahead = 0) const {
        return toks_[std::min(pos_ + ahead, toks_.size() - 1)];
    }
    token next() {
        token t = peek();
        if (pos_ < toks_.size() - 1) ++pos_;
        return t;
    }
    bool is(const std::string& s, std::size_t ahead = 0) const {
        const auto& t = peek(ahead);
        return t.kind != tk::end && t.text == s;
    }
    bool accept(const std::string& s) {
        if (!is(s)) return false;
        next();
        return true;
    }
    [[noreturn]] void fail(const std::string& msg) const { fail_at(peek(), msg); }
    [[noreturn]] static void fail_at(const token& t, const std::string& msg) {
        throw parse_error({{t.span, msg}});
    }
    token expect(const std::string& s) {
        if (!is(s)) fail("expected '" + s + "' but found " + describe(peek()));
        return next();
    }
    token expect_ident() {
        if (peek().kind != tk::ident) fail("expected identifier but found " + describe(peek()));
        return next();
    }
    std::int64_t expect_int() {
        bool negative = accept("-");
        if (peek().kind != tk::number) fail("expected number but found " + describe(peek()));
        std::int64_t v = std::stoll(next().text);
        return negative ? -v : v;
    }
    static std::string describe(const token& t) {
        return t.kind == tk::end ? "end of input" : "'" + t.text + "'";
    }
    bool at_end() const { return peek().kind == tk::end; }

private:
    std::vector<token> toks_;
    std::size_t pos_ = 0;
};

// guard language: boolean combinations of comparisons between integer expressions

struct cond {
    enum class kind { truth, cmp_atom, negation, conj, disj };
    kind k = kind::truth;
    int_expr lhs, rhs;
    std::string rel;
    token where;
    std::vector<cond> kids;
};

int_expr parse_sum(cursor& c);

int_expr parse_primary(cursor& c) {
    if (c.accept("(")) {
        auto e = parse_sum(c);
        c.expect(")");
        return e;
    }
    if (c.accept("-")) return int_expr::negate(parse_primary(c));
    if (c.peek().kind == tk::number) return int_expr::constant(std::stoll(c.next().text));
    return int_expr::variable(c.expect_ident().text);
}

int_expr parse_product(cursor& c) {
    auto e = parse_primary(c);
    while (c.is("*")) {
        c.next();
        e = int_expr::binary(int_expr::kind::mul, std::move(e), parse_primary(c));
    }
    return e;
}

int_expr parse_sum(cursor& c) {
    auto e = parse_product(c);
    while (c.is("+") || c.is("-")) {
        bool plus = c.next().text == "+";
        e = int_expr::binary(plus ? int_expr::kind::add : int_expr::kind::sub, std::move(e),
                             parse_product(c));
    }
    return e;
}

bool is_relation(const std::string& s) {
    return s == "<" || s == "<=" || s == "==" || s == "=" || s == "!=" || s == ">=" || s == ">";
}

cond parse_or(cursor& c);

cond parse_unary(cursor& c) {
    if (c.accept("!")) {
        cond n;
        n.k = cond::kind::negation;
        n.kids.push_back(parse_unary(c));
        return n;
    }
    if (c.is("true")) {
        c.next();
        return cond{};
    }
    if (c.is("false")) {
        c.next();
        cond n;
        n.k = cond::kind::negation;
        n.kids.push_back(cond{});
        return n;
    }
    if (c.is("(")) {
        // parenthesized condition or parenthesized arithmetic on the left of a comparison
        cursor probe = c;
        try {
            probe.next();
            auto inner = parse_or(probe);
            if (probe.accept(")") && !is_relation(probe.peek().text)) {
                c = probe;
                return inner;
            }
        } catch (const parse_error&) {
        }
    }
    cond a;
    a.k = cond::kind::cmp_atom;
    a.where = c.peek();
    a.lhs = parse_sum(c);
    if (!is_relation(c.peek().text)) c.fail("expected comparison operator but found " +
                                            cursor::describe(c.peek()));
    a.rel = c.next().text;
    a.rhs = parse_sum(c);
    return a;
}

cond parse_and(cursor& c) {
    auto first = parse_unary(c);
    if (!c.is("&&")) return first;
    cond n;
    n.k = cond::kind::conj;
    n.kids.push_back(std::move(first));
    while (c.accept("&&")) n.kids.push_back(parse_unary(c));
    return n;
}

cond parse_or(cursor& c) {
    auto first = parse_and(c);
    if (!c.is("||")) return first;
    cond n;
    n.k = cond::kind::disj;
    n.kids.push_back(std::move(first));
    while (c.accept("||")) n.kids.push_back(parse_and(c));
    return n;
}

struct classifier {
    const std::set<std::string>& clocks;

    void vars_of(const int_expr& e, std::set<std::string>& out) const {
        if (e.k == int_expr::kind::variable) out.insert(e.var);
        for (const auto& k : e.kids) vars_of(k, out);
    }

    bool mentions_clock(const cond& c) const {
        if (c.k == cond::kind::cmp_atom) {
            std::set<std::string> names;
            vars_of(c.lhs, names);
            vars_of(c.rhs, names);
            for (const auto& n : names)
                if (clocks.count(n)) return true;
            return false;
        }
        for (const auto& k : c.kids)
            if (mentions_clock(k)) return true;
        return false;
    }

    bool mentions_var(const cond& c) const {
        if (c.k == cond::kind::cmp_atom) {
            std::set<std::string> names;
            vars_of(c.lhs, names);
            vars_of(c.rhs, names);
            for (const auto& n : names)
                if (!clocks.count(n)) return true;
            return false;
        }
        for (const auto& k : c.kids)
            if (mentions_var(k)) return true;
        return false;
    }

    clock_constraint to_clock(const cond& c) const {
        using CC = clock_constraint;
        switch (c.k) {
            case cond::kind::truth: return CC::top();
            case cond::kind::negation: return CC::make_not(to_clock(c.kids[0]));
            case cond::kind::conj:
            case cond::kind::disj: {
                std::vector<CC> ks;
                for (const auto& k : c.kids) ks.push_back(to_clock(k));
                return c.k == cond::kind::conj ? CC::make_and(std::move(ks)) : CC::make_or(std::move(ks));
            }
            case cond::kind::cmp_atom: break;
        }
        const int_expr* clk = &c.lhs;
        const int_expr* cst = &c.rhs;
        std::string rel = c.rel;
        if (c.lhs.k == int_expr::kind::constant) {
            std::swap(clk, cst);
            if (rel == "<") rel = ">";
            else if (rel == ">") rel = "<";
            else if (rel == "<=") rel = ">=";
            else if (rel == ">=") rel = "<=";
        }
        if (clk->k != int_expr::kind::variable || cst->k != int_expr::kind::constant)
            cursor::fail_at(c.where, "clock constraints must compare one clock with a constant");
        if (cst->value < 0) cursor::fail_at(c.where, "clock constant must be non-negative");
        auto atom = [&](cmp o) { return CC::make_atom({clk->var, o, cst->value}); };
        if (rel == "<") return atom(cmp::lt);
        if (rel == ">") return atom(cmp::gt);
        if (rel == "==" || rel == "=") return atom(cmp::eq);
        if (rel == "<=") return CC::make_not(atom(cmp::gt));
        if (rel == ">=") return CC::make_not(atom(cmp::lt));
        return CC::make_not(atom(cmp::eq));
    }

    var_constraint to_var(const cond& c) const {
        using VC = var_constraint;
        switch (c.k) {
            case cond::kind::truth: return VC::top();
            case cond::kind::negation: return VC::make_not(to_var(c.kids[0]));
            case cond::kind::conj:
            case cond::kind::disj: {
                std::vector<VC> ks;
                for (const auto& k : c.kids) ks.push_back(to_var(k));
                return c.k == cond::kind::conj ? VC::make_and(std::move(ks)) : VC::make_or(std::move(ks));
            }
            case cond::kind::cmp_atom: break;
        }
        const auto& rel = c.rel;
        if (rel == "<") return VC::make_atom(c.lhs, cmp::lt, c.rhs);
        if (rel == ">") return VC::make_atom(c.lhs, cmp::gt, c.rhs);
        if (rel == "==" || rel == "=") return VC::make_atom(c.lhs, cmp::eq, c.rhs);
        if (rel == "<=") return VC::make_not(VC::make_atom(c.lhs, cmp::gt, c.rhs));
        if (rel == ">=") return VC::make_not(VC::make_atom(c.lhs, cmp::lt, c.rhs));
        return VC::make_not(VC::make_atom(c.lhs, cmp::eq, c.rhs));
    }

    // split a guard into its clock part and its variable part
    std::pair<clock_constraint, var_constraint> split(const cond& c) const {
        std::vector<cond> parts;
        if (c.k == cond::kind::conj) parts = c.kids;
        else parts.push_back(c);
        std::vector<clock_constraint> cs;
        std::vector<var_constraint> vs;
        for (const auto& p : parts) {
            bool hc = mentions_clock(p), hv = mentions_var(p);
            if (hc && hv) {
                const token* t = &p.where;
                const cond* q = &p;
                while (q->k != cond::kind::cmp_atom && !q->kids.empty()) q = &q->kids[0];
                t = &q->where;
                cursor::fail_at(*t, "a guard conjunct may not mix clocks and variables");
            }
            if (hc) cs.push_back(to_clock(p));
            else vs.push_back(to_var(p));
        }
        return {clock_constraint::make_and(std::move(cs)), var_constraint::make_and(std::move(vs))};
    }
};

struct raw_transition {
    token from_tok, to_tok;
    std::string from, to;
    std::optional<cond> guard;
    action act;
    std::vector<std::string> resets;
    std::vector<assignment> updates;
};

struct raw_location {
    token tok;
    std::string name;
    std::optional<cond> inv;
    std::vector<std::string> labels;
};

struct raw_automaton {
    token tok;
    std::string name;
    std::vector<raw_location> locs;
    std::vector<raw_transition> trans;
};

sync_kind qualifier(const std::string& s) {
    if (s == "!") return sync_kind::send;
    if (s == "?") return sync_kind::recv;
    if (s == "#") return sync_kind::bsend;
    if (s == "@") return sync_kind::brecv;
    if (s == "&") return sync_kind::osend;
    if (s == "*") return sync_kind::orecv;
    return sync_kind::none;
}

raw_location parse_location(cursor& c) {
    raw_location l;
    l.tok = c.expect_ident();
    l.name = l.tok.text;
    if (c.accept(";")) return l;
    c.expect("{");
    while (!c.accept("}")) {
        auto key = c.expect_ident();
        c.expect(":");
        if (key.text == "inv") {
            if (l.inv) cursor::fail_at(key, "duplicate invariant");
            l.inv = parse_or(c);
        } else if (key.text == "label") {
            do {
                l.labels.push_back(c.expect_ident().text);
            } while (c.accept(","));
        } else {
            cursor::fail_at(key, "unknown location item '" + key.text + "'");
        }
        c.expect(";");
    }
    return l;
}

raw_transition parse_transition(cursor& c) {
    raw_transition t;
    t.from_tok = c.expect_ident();
    t.from = t.from_tok.text;
    c.expect("->");
    t.to_tok = c.expect_ident();
    t.to = t.to_tok.text;
    if (c.accept(";")) return t;
    c.expect("{");
    bool have_sync = false;
    while (!c.accept("}")) {
        auto key = c.expect_ident();
        c.expect(":");
        if (key.text == "guard") {
            if (t.guard) cursor::fail_at(key, "duplicate guard");
            t.guard = parse_or(c);
        } else if (key.text == "sync") {
            if (have_sync) cursor::fail_at(key, "duplicate sync");
            have_sync = true;
            t.act.event = c.expect_ident().text;
            auto q = c.next();
            t.act.sync = qualifier(q.text);
            if (t.act.sync == sync_kind::none)
                cursor::fail_at(q, "expected one of ! ? # @ & * after event name");
        } else if (key.text == "do") {
            do {
                assignment a;
                a.target = c.expect_ident().text;
                if (!c.accept(":=")) c.expect("=");
                a.value = parse_sum(c);
                t.updates.push_back(std::move(a));
            } while (c.accept(","));
        } else if (key.text == "reset") {
            do {
                t.resets.push_back(c.expect_ident().text);
            } while (c.accept(","));
        } else {
            cursor::fail_at(key, "unknown transition item '" + key.text + "'");
        }
        c.expect(";");
    }
    return t;
}

}  // namespace

network parse_network(const std::string& text, const std::string& file) {
    cursor c(lex(text, file));
    network n;
    std::vector<raw_automaton> raws;
    std::map<std::string, token> decl_at;
    while (!c.at_end()) {
        auto kw = c.expect_ident();
        if (kw.text == "clock") {
            do {
                auto id = c.expect_ident();
                decl_at[id.text] = id;
                n.clocks.push_back(id.text);
            } while (c.accept(","));
            c.expect(";");
        } else if (kw.text == "int") {
            var_decl v;
            auto id = c.expect_ident();
            decl_at[id.text] = id;
            v.name = id.text;
            c.expect("in");
            c.expect("[");
            v.lo = c.expect_int();
            c.expect(",");
            v.hi = c.expect_int();
            c.expect("]");
            v.init = (v.lo <= 0 && 0 <= v.hi) ? 0 : v.lo;
            if (c.accept("=")) v.init = c.expect_int();
            c.expect(";");
            n.vars.push_back(v);
        } else if (kw.text == "automaton") {
            raw_automaton a;
            a.tok = c.expect_ident();
            a.name = a.tok.text;
            c.expect("{");
            while (!c.accept("}")) {
                auto item = c.expect_ident();
                if (item.text == "loc") a.locs.push_back(parse_location(c));
                else if (item.text == "trans") a.trans.push_back(parse_transition(c));
                else cursor::fail_at(item, "expected 'loc' or 'trans'");
            }
            raws.push_back(std::move(a));
        } else {
            cursor::fail_at(kw, "expected 'clock', 'int' or 'automaton'");
        }
    }

    std::set<std::string> clockset(n.clocks.begin(), n.clocks.end());
    classifier cl{clockset};
    std::vector<located_message> errs;
    for (auto& ra : raws) {
        automaton a;
        a.name = ra.name;
        if (ra.locs.empty()) errs.push_back({ra.tok.span, "automaton '" + ra.name + "' has no locations"});
        for (auto& rl : ra.locs) {
            location l;
            l.name = rl.name;
            l.labels = rl.labels;
            if (rl.inv) {
                auto [cc, vc] = cl.split(*rl.inv);
                if (!vc.is_true()) errs.push_back({rl.tok.span, "invariants may only constrain clocks"});
                auto cells = normalize_guard(cc);
                if (cells.size() != 1)
                    errs.push_back({rl.tok.span, "invariant of '" + rl.name + "' is not convex"});
                else l.invariant = cells.front();
            }
            a.locations.push_back(std::move(l));
        }
        for (auto& rt : ra.trans) {
            int s = a.location_index(rt.from), d = a.location_index(rt.to);
            if (s < 0) errs.push_back({rt.from_tok.span, "unknown location '" + rt.from + "'"});
            if (d < 0) errs.push_back({rt.to_tok.span, "unknown location '" + rt.to + "'"});
            if (s < 0 || d < 0) continue;
            clock_constraint cc;
            var_constraint vc;
            if (rt.guard) std::tie(cc, vc) = cl.split(*rt.guard);
            for (auto& cell : normalize_guard(cc)) {
                transition t;
                t.source = s;
                t.target = d;
                t.guard = cell;
                t.var_guard = vc;
                t.act = rt.act;
                t.resets = rt.resets;
                t.updates = rt.updates;
                a.transitions.push_back(std::move(t));
            }
        }
        n.automata.push_back(std::move(a));
    }
    for (const auto& d : validate_network(n)) {
        source_span sp{file, 1, 1, 1};
        auto it = decl_at.find(d.where);
        if (it != decl_at.end()) sp = it->second.span;
        for (const auto& ra : raws)
            if (ra.name == d.where || d.where.rfind(ra.name + ".", 0) == 0) sp = ra.tok.span;
        errs.push_back({sp, d.message});
    }
    if (!errs.empty()) throw parse_error(std::move(errs));
    return n;
}

// MITL

namespace {

using namespace tamitl::mitl;

bool interval_ahead(const cursor& c) {
    if (!c.is("[") && !c.is("(")) return false;
    return c.peek(1).kind == tk::number && c.is(",", 2);
}

interval parse_interval(cursor& c) {
    interval iv;
    auto open_tok = c.next();
    iv.lo_open = open_tok.text == "(";
    iv.lo = c.expect_int();
    c.expect(",");
    if (c.is("inf")) {
        c.next();
        c.expect(")");
        iv.hi.reset();
        iv.hi_open = true;
    } else {
        iv.hi = c.expect_int();
        auto close = c.next();
        if (close.text == ")") iv.hi_open = true;
        else if (close.text == "]") iv.hi_open = false;
        else cursor::fail_at(close, "expected ']' or ')'");
    }
    if (iv.lo < 0) cursor::fail_at(open_tok, "negative interval bound");
    if (iv.hi) {
        bool empty = *iv.hi < iv.lo || (*iv.hi == iv.lo && (iv.lo_open || iv.hi_open));
        if (empty) cursor::fail_at(open_tok, "empty interval " + to_string(iv));
    }
    return iv;
}

interval optional_interval(cursor& c) {
    return interval_ahead(c) ? parse_interval(c) : interval::unbounded();
}

formula parse_implication(cursor& c);

formula parse_unary_f(cursor& c) {
    if (c.accept("!")) return neg(parse_unary_f(c));
    if (c.is("F") || c.is("G")) {
        bool ev = c.next().text == "F";
        auto iv = optional_interval(c);
        auto sub = parse_unary_f(c);
        return ev ? eventually(sub, iv) : always(sub, iv);
    }
    if (c.accept("(")) {
        auto f = parse_implication(c);
        c.expect(")");
        return f;
    }
    if (c.accept("true")) return top();
    if (c.accept("false")) return bottom();
    auto id = c.expect_ident();
    if (id.text == "U" || id.text == "R") cursor::fail_at(id, "missing left operand of " + id.text);
    const auto& r = c.peek().text;
    if (c.peek().kind == tk::punct && is_relation(r)) {
        std::string rel = c.next().text;
        std::int64_t v = c.expect_int();
        if (rel == "<") return arith(id.text, cmp::lt, v);
        if (rel == ">") return arith(id.text, cmp::gt, v);
        if (rel == "==" || rel == "=") return arith(id.text, cmp::eq, v);
        if (rel == "<=") return neg(arith(id.text, cmp::gt, v));
        if (rel == ">=") return neg(arith(id.text, cmp::lt, v));
        return neg(arith(id.text, cmp::eq, v));
    }
    return prop(id.text);
}

formula parse_until(cursor& c) {
    auto lhs = parse_unary_f(c);
    if (c.is("U") || c.is("R")) {
        bool u = c.next().text == "U";
        auto iv = optional_interval(c);
        auto rhs = parse_until(c);
        return u ? until(lhs, rhs, iv) : release(lhs, rhs, iv);
    }
    return lhs;
}

formula parse_conj(cursor& c) {
    auto f = parse_until(c);
    while (c.accept("&&") || c.accept("&")) f = conj(f, parse_until(c));
    return f;
}

formula parse_disj(cursor& c) {
    auto f = parse_conj(c);
    while (c.accept("||") || c.accept("|")) f = disj(f, parse_conj(c));
    return f;
}

formula parse_implication(cursor& c) {
    auto f = parse_disj(c);
    if (c.accept("->")) return implies(f, parse_implication(c));
    return f;
}

}  // namespace

mitl::formula parse_mitl(const std::string& text, const std::string& file) {
    cursor c(lex(text, file));
    auto f = parse_implication(c);
    if (!c.at_end()) c.fail("unexpected " + cursor::describe(c.peek()));
    return f;
}

// printing

std::string print_expr(const int_expr& e) {
    using K = int_expr::kind;
    switch (e.k) {
        case K::constant: return std::to_string(e.value);
        case K::variable: return e.var;
        case K::neg: return "-(" + print_expr(e.kids[0]) + ")";
        case K::add: return "(" + print_expr(e.kids[0]) + " + " + print_expr(e.kids[1]) + ")";
        case K::sub: return "(" + print_expr(e.kids[0]) + " - " + print_expr(e.kids[1]) + ")";
        case K::mul: return "(" + print_expr(e.kids[0]) + " * " + print_expr(e.kids[1]) + ")";
    }
    return "?";
}

static std::string rel_text(cmp op, bool negated) {
    switch (op) {
        case cmp::lt: return negated ? ">=" : "<";
        case cmp::gt: return negated ? "<=" : ">";
        case cmp::eq: return negated ? "!=" : "==";
    }
    return "?";
}

std::string print_guard(const convex_guard& g) {
    if (g.empty()) return "true";
    std::string s;
    for (const auto& l : g) {
        if (!s.empty()) s += " && ";
        s += l.atom.clock + " " + rel_text(l.atom.op, l.negated) + " " + std::to_string(l.atom.bound);
    }
    return s;
}

std::string print_var_constraint(const var_constraint& c) {
    using K = var_constraint::kind;
    switch (c.k) {
        case K::truth: return "true";
        case K::atom: return print_expr(c.lhs) + " " + rel_text(c.op, false) + " " + print_expr(c.rhs);
        case K::negation: return "!(" + print_var_constraint(c.kids[0]) + ")";
        case K::conjunction:
        case K::disjunction: {
            std::string s;
            for (const auto& k : c.kids) {
                if (!s.empty()) s += c.k == K::conjunction ? " && " : " || ";
                s += "(" + print_var_constraint(k) + ")";
            }
            return s;
        }
    }
    return "?";
}

std::string print_network(const network& n) {
    std::ostringstream o;
    if (!n.clocks.empty()) {
        o << "clock ";
        for (std::size_t i = 0; i < n.clocks.size(); ++i) o << (i ? ", " : "") << n.clocks[i];
        o << ";\n";
    }
    for (const auto& v : n.vars)
        o << "int " << v.name << " in [" << v.lo << "," << v.hi << "] = " << v.init << ";\n";
    for (const auto& a : n.automata) {
        o << "\nautomaton " << a.name << " {\n";
        for (const auto& l : a.locations) {
            o << "  loc " << l.name;
            if (l.invariant.empty() && l.labels.empty()) {
                o << ";\n";
                continue;
            }
            o << " {";
            if (!l.invariant.empty()) o << " inv: " << print_guard(l.invariant) << ";";
            if (!l.labels.empty()) {
                o << " label: ";
                for (std::size_t i = 0; i < l.labels.size(); ++i) o << (i ? ", " : "") << l.labels[i];
                o << ";";
            }
            o << " }\n";
        }
        for (const auto& t : a.transitions) {
            o << "  trans " << a.locations[t.source].name << " -> " << a.locations[t.target].name;
            std::string body;
            std::string g = print_guard(t.guard);
            std::string vg = print_var_constraint(t.var_guard);
            if (!t.guard.empty() || !t.var_guard.is_true()) {
                body += " guard: ";
                if (!t.guard.empty()) body += g;
                if (!t.guard.empty() && !t.var_guard.is_true()) body += " && ";
                if (!t.var_guard.is_true()) body += "(" + vg + ")";
                body += ";";
            }
            if (!t.act.is_tau()) body += std::string(" sync: ") + t.act.event + sync_symbol(t.act.sync) + ";";
            if (!t.updates.empty()) {
                body += " do: ";
                for (std::size_t i = 0; i < t.updates.size(); ++i)
                    body += (i ? ", " : "") + t.updates[i].target + " := " + print_expr(t.updates[i].value);
                body += ";";
            }
            if (!t.resets.empty()) {
                body += " reset: ";
                for (std::size_t i = 0; i < t.resets.size(); ++i) body += (i ? ", " : "") + t.resets[i];
                body += ";";
            }
            if (body.empty()) o << ";\n";
            else o << " {" << body << " }\n";
        }
        o << "}\n";
    }
    return o.str();
}

std::string read_file(const std::string& path) {
    std::ostringstream ss;
    if (path == "-") {
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open '" + path + "'");
    ss << in.rdbuf();
    return ss.str();
}

network materialize_location_props(const network& n, const std::set<mitl::atom>& atoms) {
    network r = n;
    for (const auto& a : atoms) {
        if (a.arithmetic) continue;
        auto dot = a.name.rfind('.');
        if (dot == std::string::npos) continue;
        int ai = r.automaton_index(a.name.substr(0, dot));
        if (ai < 0) continue;
        auto& aut = r.automata[static_cast<std::size_t>(ai)];
        int li = aut.location_index(a.name.substr(dot + 1));
        if (li < 0) continue;
        auto& labels = aut.locations[static_cast<std::size_t>(li)].labels;
        if (std::find(labels.begin(), labels.end(), a.name) == labels.end()) labels.push_back(a.name);
    }
    return r;
}

}  // namespace tamitl
