#include "tamitl/mitl.hpp"

#include <algorithm>

namespace tamitl::mitl {

std::string to_string(const interval& i) {
    std::string s = i.lo_open ? "(" : "[";
    s += std::to_string(i.lo) + ",";
    if (i.hi) s += std::to_string(*i.hi) + (i.hi_open ? ")" : "]");
    else s += "inf)";
    return s;
}

std::string to_string(const atom& a) {
    if (!a.arithmetic) return a.name;
    std::string r = a.rel == cmp::eq ? "==" : cmp_text(a.rel);
    return a.name + " " + r + " " + std::to_string(a.value);
}

namespace {

formula make(op k, formula l = nullptr, formula r = nullptr, interval i = {}) {
    auto n = std::make_shared<node>();
    n->kind = k;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    n->iv = i;
    return n;
}

}  // namespace

formula top() { return make(op::truth); }
formula bottom() { return make(op::falsity); }

formula prop(std::string p) {
    auto n = std::make_shared<node>();
    n->kind = op::prop;
    n->at.name = std::move(p);
    return n;
}

formula arith(std::string var, cmp rel, std::int64_t value) {
    auto n = std::make_shared<node>();
    n->kind = op::arith;
    n->at = atom{std::move(var), true, rel, value};
    return n;
}

formula make_atom(const atom& a) {
    return a.arithmetic ? arith(a.name, a.rel, a.value) : prop(a.name);
}

formula neg(formula f) { return make(op::negation, std::move(f)); }
formula conj(formula a, formula b) { return make(op::conj, std::move(a), std::move(b)); }
formula disj(formula a, formula b) { return make(op::disj, std::move(a), std::move(b)); }
formula implies(formula a, formula b) { return make(op::implies, std::move(a), std::move(b)); }
formula until(formula a, formula b, interval i) { return make(op::until, std::move(a), std::move(b), i); }
formula release(formula a, formula b, interval i) {
    return make(op::release, std::move(a), std::move(b), i);
}
formula eventually(formula a, interval i) { return make(op::eventually, std::move(a), nullptr, i); }
formula always(formula a, interval i) { return make(op::always, std::move(a), nullptr, i); }

bool equal(const formula& a, const formula& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    if (a->kind != b->kind || !(a->at == b->at) || !(a->iv == b->iv)) return false;
    return equal(a->lhs, b->lhs) && equal(a->rhs, b->rhs);
}

std::size_t depth(const formula& f) {
    if (!f) return 0;
    std::size_t d = std::max(depth(f->lhs), depth(f->rhs));
    bool temporal = f->kind == op::until || f->kind == op::release || f->kind == op::eventually ||
                    f->kind == op::always;
    return d + (temporal ? 1 : 0);
}

formula desugar(const formula& f) {
    switch (f->kind) {
        case op::truth:
        case op::prop:
        case op::arith: return f;
        case op::falsity: return neg(top());
        case op::negation: return neg(desugar(f->lhs));
        case op::conj: return conj(desugar(f->lhs), desugar(f->rhs));
        case op::disj: return neg(conj(neg(desugar(f->lhs)), neg(desugar(f->rhs))));
        case op::implies: return neg(conj(desugar(f->lhs), neg(desugar(f->rhs))));
        case op::until: return until(desugar(f->lhs), desugar(f->rhs), f->iv);
        case op::release:
            return neg(until(neg(desugar(f->lhs)), neg(desugar(f->rhs)), f->iv));
        case op::eventually: return until(top(), desugar(f->lhs), f->iv);
        case op::always: return neg(until(top(), neg(desugar(f->lhs)), f->iv));
    }
    return f;
}

namespace {

formula pnf(const formula& f, bool positive) {
    switch (f->kind) {
        case op::truth: return positive ? f : bottom();
        case op::falsity: return positive ? f : top();
        case op::prop:
        case op::arith: return positive ? f : neg(f);
        case op::negation: return pnf(f->lhs, !positive);
        case op::conj:
            return positive ? conj(pnf(f->lhs, true), pnf(f->rhs, true))
                            : disj(pnf(f->lhs, false), pnf(f->rhs, false));
        case op::disj:
            return positive ? disj(pnf(f->lhs, true), pnf(f->rhs, true))
                            : conj(pnf(f->lhs, false), pnf(f->rhs, false));
        case op::implies:
            return positive ? disj(pnf(f->lhs, false), pnf(f->rhs, true))
                            : conj(pnf(f->lhs, true), pnf(f->rhs, false));
        case op::until:
            return positive ? until(pnf(f->lhs, true), pnf(f->rhs, true), f->iv)
                            : release(pnf(f->lhs, false), pnf(f->rhs, false), f->iv);
        case op::release:
            return positive ? release(pnf(f->lhs, true), pnf(f->rhs, true), f->iv)
                            : until(pnf(f->lhs, false), pnf(f->rhs, false), f->iv);
        case op::eventually:
            return positive ? until(top(), pnf(f->lhs, true), f->iv)
                            : release(bottom(), pnf(f->lhs, false), f->iv);
        case op::always:
            return positive ? release(bottom(), pnf(f->lhs, true), f->iv)
                            : until(top(), pnf(f->lhs, false), f->iv);
    }
    return f;
}

void collect(const formula& f, std::set<atom>& out) {
    if (!f) return;
    if (f->kind == op::prop || f->kind == op::arith) out.insert(f->at);
    collect(f->lhs, out);
    collect(f->rhs, out);
}

int precedence(op k) {
    switch (k) {
        case op::implies: return 1;
        case op::disj: return 2;
        case op::conj: return 3;
        case op::until:
        case op::release: return 4;
        default: return 5;
    }
}

std::string print_rec(const formula& f) {
    auto wrap = [](const formula& g) {
        std::string s = print_rec(g);
        return precedence(g->kind) < 5 ? "(" + s + ")" : s;
    };
    switch (f->kind) {
        case op::truth: return "true";
        case op::falsity: return "false";
        case op::prop:
        case op::arith: {
            std::string s = to_string(f->at);
            return f->at.arithmetic ? "(" + s + ")" : s;
        }
        case op::negation: return "!" + wrap(f->lhs);
        case op::conj: return wrap(f->lhs) + " && " + wrap(f->rhs);
        case op::disj: return wrap(f->lhs) + " || " + wrap(f->rhs);
        case op::implies: return wrap(f->lhs) + " -> " + wrap(f->rhs);
        case op::until: return wrap(f->lhs) + " U" + to_string(f->iv) + " " + wrap(f->rhs);
        case op::release: return wrap(f->lhs) + " R" + to_string(f->iv) + " " + wrap(f->rhs);
        case op::eventually: return "F" + to_string(f->iv) + " " + wrap(f->lhs);
        case op::always: return "G" + to_string(f->iv) + " " + wrap(f->lhs);
    }
    return "?";
}

}  // namespace

formula to_positive_normal_form(const formula& f) { return pnf(f, true); }

std::set<atom> collect_atomic(const formula& f) {
    std::set<atom> out;
    collect(f, out);
    return out;
}

std::int64_t max_constant(const formula& f) {
    if (!f) return 0;
    std::int64_t m = std::max(max_constant(f->lhs), max_constant(f->rhs));
    if (f->kind == op::until || f->kind == op::release || f->kind == op::eventually ||
        f->kind == op::always) {
        m = std::max(m, f->iv.lo);
        if (f->iv.hi) m = std::max(m, *f->iv.hi);
    }
    return m;
}

std::string print(const formula& f) { return print_rec(f); }

}  // namespace tamitl::mitl
