#include "tamitl/cltloc.hpp"

#include "tamitl/semantics.hpp"
#include "tamitl/textio.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <mutex>
#include <unordered_map>

namespace tamitl::cltloc {

namespace {

struct arena {
    std::mutex mu;
    std::deque<node> nodes;
    std::unordered_map<std::string, const node*> index;
};

arena& store() {
    static arena a;
    return a;
}

std::string key_of(const node& n) {
    std::string k = std::to_string(static_cast<int>(n.kind));
    k += '|';
    k += n.name;
    k += '|';
    k += std::to_string(static_cast<int>(n.rel));
    k += '|';
    k += std::to_string(n.value);
    if (n.kind == op::arith_atom) k += '|' + print_expr(n.lhs);
    if (n.kind == op::arith_atom || n.kind == op::next_arith) k += '|' + print_expr(n.rhs);
    for (auto* c : n.kids) k += '#' + std::to_string(c->id);
    return k;
}

formula intern(node n) {
    auto& a = store();
    std::string k = key_of(n);
    std::lock_guard<std::mutex> lock(a.mu);
    auto it = a.index.find(k);
    if (it != a.index.end()) return it->second;
    n.id = a.nodes.size();
    a.nodes.push_back(std::move(n));
    const node* p = &a.nodes.back();
    a.index.emplace(std::move(k), p);
    return p;
}

formula make(op k, std::vector<formula> kids = {}) {
    node n;
    n.kind = k;
    n.kids = std::move(kids);
    return intern(std::move(n));
}

bool is_const_expr(const int_expr& e) { return e.k == int_expr::kind::constant; }

}  // namespace

formula top() { return make(op::truth); }
formula bottom() { return make(op::falsity); }

formula prop(const std::string& p) {
    node n;
    n.kind = op::prop;
    n.name = p;
    return intern(std::move(n));
}

formula clock(const std::string& x, cmp rel, std::int64_t c) {
    if (c < 0) return rel == cmp::gt ? top() : bottom();
    if (c == 0 && rel == cmp::lt) return bottom();
    node n;
    n.kind = op::clock_atom;
    n.name = x;
    n.rel = rel;
    n.value = c;
    return intern(std::move(n));
}

formula arith(const int_expr& lhs, cmp rel, const int_expr& rhs) {
    if (is_const_expr(lhs) && is_const_expr(rhs)) return compare(rel, lhs.value, rhs.value) ? top() : bottom();
    node n;
    n.kind = op::arith_atom;
    n.rel = rel;
    n.lhs = lhs;
    n.rhs = rhs;
    return intern(std::move(n));
}

formula var_eq(const std::string& n, std::int64_t v) {
    return arith(int_expr::variable(n), cmp::eq, int_expr::constant(v));
}

formula next_var(const std::string& name, cmp rel, const int_expr& rhs) {
    node n;
    n.kind = op::next_arith;
    n.name = name;
    n.rel = rel;
    n.rhs = rhs;
    return intern(std::move(n));
}

formula neg(formula f) {
    switch (f->kind) {
        case op::truth: return bottom();
        case op::falsity: return top();
        case op::neg: return f->kids[0];
        default: return make(op::neg, {f});
    }
}

formula conj(std::vector<formula> fs) {
    std::vector<formula> flat;
    std::set<formula> seen;
    std::function<void(formula)> add = [&](formula f) {
        if (f->kind == op::conj) {
            for (auto* k : f->kids) add(k);
            return;
        }
        if (f->kind == op::truth) return;
        if (seen.insert(f).second) flat.push_back(f);
    };
    for (auto* f : fs) add(f);
    for (auto* f : flat)
        if (f->kind == op::falsity || (f->kind == op::neg && seen.count(f->kids[0]))) return bottom();
    if (flat.empty()) return top();
    if (flat.size() == 1) return flat.front();
    return make(op::conj, std::move(flat));
}

formula conj(formula a, formula b) { return conj(std::vector<formula>{a, b}); }

formula disj(std::vector<formula> fs) {
    std::vector<formula> flat;
    std::set<formula> seen;
    std::function<void(formula)> add = [&](formula f) {
        if (f->kind == op::disj) {
            for (auto* k : f->kids) add(k);
            return;
        }
        if (f->kind == op::falsity) return;
        if (seen.insert(f).second) flat.push_back(f);
    };
    for (auto* f : fs) add(f);
    for (auto* f : flat)
        if (f->kind == op::truth || (f->kind == op::neg && seen.count(f->kids[0]))) return top();
    if (flat.empty()) return bottom();
    if (flat.size() == 1) return flat.front();
    return make(op::disj, std::move(flat));
}

formula disj(formula a, formula b) { return disj(std::vector<formula>{a, b}); }
formula implies(formula a, formula b) { return disj(neg(a), b); }

formula iff(formula a, formula b) {
    if (a == b) return top();
    if (a->kind == op::truth) return b;
    if (b->kind == op::truth) return a;
    if (a->kind == op::falsity) return neg(b);
    if (b->kind == op::falsity) return neg(a);
    if (b->id < a->id) std::swap(a, b);
    return make(op::iff, {a, b});
}

formula next(formula f) {
    if (f->kind == op::truth || f->kind == op::falsity) return f;
    return make(op::next, {f});
}

formula until(formula a, formula b) {
    if (b->kind == op::truth || b->kind == op::falsity) return b;
    if (a->kind == op::falsity) return b;
    return make(op::until, {a, b});
}

formula release(formula a, formula b) {
    if (b->kind == op::truth || b->kind == op::falsity) return b;
    if (a->kind == op::truth) return b;
    return make(op::release, {a, b});
}

formula eventually(formula f) { return until(top(), f); }
formula always(formula f) { return release(bottom(), f); }

bool is_temporal(formula f) {
    return f->kind == op::next || f->kind == op::until || f->kind == op::release;
}

bool signature::has_prop(const std::string& p) const {
    return std::find(props.begin(), props.end(), p) != props.end();
}

bool signature::has_clock(const std::string& c) const {
    return std::find(clocks.begin(), clocks.end(), c) != clocks.end();
}

const signature::int_var* signature::find_int(const std::string& n) const {
    for (const auto& v : ints)
        if (v.name == n) return &v;
    return nullptr;
}

void signature::merge(const signature& o) {
    for (const auto& p : o.props)
        if (!has_prop(p)) props.push_back(p);
    for (const auto& c : o.clocks)
        if (!has_clock(c)) clocks.push_back(c);
    for (const auto& v : o.ints)
        if (!find_int(v.name)) ints.push_back(v);
}

rational lasso::time_at(int i) const {
    rational t = 0;
    for (int j = 0; j < i && j < static_cast<int>(delays.size()); ++j) t += delays[static_cast<std::size_t>(j)];
    return t;
}

namespace {

class evaluator {
public:
    explicit evaluator(const lasso& m) : m_(m) {}

    const std::vector<bool>& eval(formula f) {
        auto it = memo_.find(f);
        if (it != memo_.end()) return it->second;
        std::vector<bool> v = compute(f);
        return memo_.emplace(f, std::move(v)).first->second;
    }

private:
    int succ(int i) const { return i + 1 < m_.k ? i + 1 : m_.loop; }

    std::int64_t int_at(int i, const std::string& n) const {
        const auto& mp = m_.ints[static_cast<std::size_t>(i)];
        auto it = mp.find(n);
        if (it == mp.end()) throw undeclared_symbol("undeclared variable '" + n + "'");
        return it->second;
    }

    std::int64_t expr_at(int i, const int_expr& e) const {
        using K = int_expr::kind;
        switch (e.k) {
            case K::constant: return e.value;
            case K::variable: return int_at(i, e.var);
            case K::add: return expr_at(i, e.kids[0]) + expr_at(i, e.kids[1]);
            case K::sub: return expr_at(i, e.kids[0]) - expr_at(i, e.kids[1]);
            case K::mul: return expr_at(i, e.kids[0]) * expr_at(i, e.kids[1]);
            case K::neg: return -expr_at(i, e.kids[0]);
        }
        return 0;
    }

    bool atom_at(formula f, int i) const {
        switch (f->kind) {
            case op::prop: return m_.props[static_cast<std::size_t>(i)].count(f->name) > 0;
            case op::clock_atom: {
                const auto& mp = m_.clocks[static_cast<std::size_t>(i)];
                auto it = mp.find(f->name);
                if (it == mp.end()) throw undeclared_symbol("undeclared clock '" + f->name + "'");
                return compare(f->rel, it->second, rational(f->value));
            }
            case op::arith_atom: return compare(f->rel, expr_at(i, f->lhs), expr_at(i, f->rhs));
            case op::next_arith: {
                int j = i < m_.k ? i + 1 : m_.loop + 1;
                return compare(f->rel, int_at(j, f->name), expr_at(i, f->rhs));
            }
            default: return false;
        }
    }

    std::vector<bool> compute(formula f) {
        const int n = m_.k + 1;
        std::vector<bool> r(static_cast<std::size_t>(n), false);
        auto at = [&](const std::vector<bool>& v, int i) { return static_cast<bool>(v[static_cast<std::size_t>(i)]); };
        switch (f->kind) {
            case op::truth:
                r.assign(static_cast<std::size_t>(n), true);
                return r;
            case op::falsity: return r;
            case op::prop:
            case op::clock_atom:
            case op::arith_atom:
            case op::next_arith:
                for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = atom_at(f, i);
                return r;
            case op::neg: {
                const auto& a = eval(f->kids[0]);
                for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = !at(a, i);
                return r;
            }
            case op::conj:
            case op::disj: {
                bool is_and = f->kind == op::conj;
                r.assign(static_cast<std::size_t>(n), is_and);
                for (auto* k : f->kids) {
                    const auto& a = eval(k);
                    for (int i = 0; i < n; ++i)
                        r[static_cast<std::size_t>(i)] = is_and ? (r[static_cast<std::size_t>(i)] && at(a, i))
                                                                : (r[static_cast<std::size_t>(i)] || at(a, i));
                }
                return r;
            }
            case op::iff: {
                const auto& a = eval(f->kids[0]);
                const auto& b = eval(f->kids[1]);
                for (int i = 0; i < n; ++i) r[static_cast<std::size_t>(i)] = at(a, i) == at(b, i);
                return r;
            }
            case op::next: {
                const auto& a = eval(f->kids[0]);
                for (int i = 0; i < m_.k; ++i) r[static_cast<std::size_t>(i)] = at(a, succ(i));
                r[static_cast<std::size_t>(m_.k)] = r[static_cast<std::size_t>(m_.loop)];
                return r;
            }
            case op::until:
            case op::release: {
                const auto& a = eval(f->kids[0]);
                const auto& b = eval(f->kids[1]);
                bool is_until = f->kind == op::until;
                // two passes: seed the wrap-around with the fixpoint default, then with the loop value
                bool seed = !is_until;
                for (int pass = 0; pass < 2; ++pass) {
                    for (int i = m_.k - 1; i >= 0; --i) {
                        bool nxt = i + 1 < m_.k ? at(r, i + 1) : seed;
                        r[static_cast<std::size_t>(i)] = is_until ? (at(b, i) || (at(a, i) && nxt))
                                                                  : (at(b, i) && (at(a, i) || nxt));
                    }
                    seed = at(r, m_.loop);
                }
                r[static_cast<std::size_t>(m_.k)] = r[static_cast<std::size_t>(m_.loop)];
                return r;
            }
        }
        return r;
    }

    const lasso& m_;
    std::unordered_map<formula, std::vector<bool>> memo_;
};

}  // namespace

std::vector<bool> evaluate_all(formula f, const lasso& m) {
    evaluator e(m);
    return e.eval(f);
}

bool evaluate_at(formula f, const lasso& m, int i) {
    if (i < 0 || i > m.k) throw std::out_of_range("position outside lasso");
    return evaluate_all(f, m)[static_cast<std::size_t>(i)];
}

bool evaluate_unrolled(formula f, const lasso& m, int i) {
    // explicit unbounded word; from max(j, loop) one full period decides every until and release
    const int period = m.k - m.loop;
    auto pos = [&](int j) { return j < m.k ? j : m.loop + (j - m.loop) % period; };
    auto end = [&](int j) { return std::max(j, m.loop) + period; };
    std::function<bool(formula, int)> ev = [&](formula g, int j) -> bool {
        switch (g->kind) {
            case op::truth: return true;
            case op::falsity: return false;
            case op::prop:
            case op::clock_atom:
            case op::arith_atom:
            case op::next_arith: return evaluate_all(g, m)[static_cast<std::size_t>(pos(j))];
            case op::neg: return !ev(g->kids[0], j);
            case op::conj:
                for (auto* k : g->kids)
                    if (!ev(k, j)) return false;
                return true;
            case op::disj:
                for (auto* k : g->kids)
                    if (ev(k, j)) return true;
                return false;
            case op::iff: return ev(g->kids[0], j) == ev(g->kids[1], j);
            case op::next: return ev(g->kids[0], j + 1);
            case op::until:
                for (int t = j; t < end(j); ++t) {
                    if (ev(g->kids[1], t)) return true;
                    if (!ev(g->kids[0], t)) return false;
                }
                return false;
            case op::release:
                for (int t = j; t < end(j); ++t) {
                    if (!ev(g->kids[1], t)) return false;
                    if (ev(g->kids[0], t)) return true;
                }
                return true;
        }
        return false;
    };
    return ev(f, i);
}

atom_inventory atoms_of(formula f) {
    atom_inventory inv;
    std::set<formula> seen;
    std::function<void(const int_expr&)> vars = [&](const int_expr& e) {
        if (e.k == int_expr::kind::variable) inv.vars.insert(e.var);
        for (const auto& k : e.kids) vars(k);
    };
    std::function<void(formula)> walk = [&](formula g) {
        if (!seen.insert(g).second) return;
        switch (g->kind) {
            case op::prop: inv.props.insert(g->name); break;
            case op::clock_atom:
                inv.clocks.insert(g->name);
                inv.clock_atoms.insert(g);
                break;
            case op::arith_atom:
                vars(g->lhs);
                vars(g->rhs);
                inv.arith_atoms.insert(g);
                break;
            case op::next_arith:
                inv.vars.insert(g->name);
                vars(g->rhs);
                inv.arith_atoms.insert(g);
                break;
            default: break;
        }
        for (auto* k : g->kids) walk(k);
    };
    walk(f);
    return inv;
}

std::vector<std::string> check_lasso(const lasso& m, formula f) {
    std::vector<std::string> out;
    if (m.k < 2 || m.loop < 1 || m.loop >= m.k) out.push_back("loop position outside [1,k-1]");
    if (static_cast<int>(m.delays.size()) < m.k) out.push_back("missing delays");
    for (std::size_t i = 0; i < m.delays.size(); ++i)
        if (m.delays[i] <= 0) out.push_back("non-positive delay at " + std::to_string(i));
    if (!out.empty()) return out;
    for (int i = 0; i < m.k; ++i) {
        for (const auto& [c, v] : m.clocks[static_cast<std::size_t>(i + 1)]) {
            auto prev = m.clocks[static_cast<std::size_t>(i)].at(c);
            if (v != 0 && v != prev + m.delays[static_cast<std::size_t>(i)])
                out.push_back("clock " + c + " neither progresses nor resets at " + std::to_string(i + 1));
        }
    }
    auto l = static_cast<std::size_t>(m.loop), k = static_cast<std::size_t>(m.k);
    if (m.props[k] != m.props[l]) out.push_back("propositions differ at k and loop");
    if (m.ints[k] != m.ints[l]) out.push_back("integers differ at k and loop");
    auto inv = atoms_of(f);
    for (auto* a : inv.clock_atoms) {
        auto v = evaluate_all(a, m);
        if (v[k] != v[l]) out.push_back("clock atom " + print(a) + " differs at k and loop");
    }
    return out;
}

std::size_t dag_size(formula f) {
    std::set<formula> seen;
    std::function<void(formula)> walk = [&](formula g) {
        if (!seen.insert(g).second) return;
        for (auto* k : g->kids) walk(k);
    };
    walk(f);
    return seen.size();
}

std::size_t conjunct_count(formula f) {
    if (f->kind == op::conj) return f->kids.size();
    return f->kind == op::truth ? 0 : 1;
}

std::string print(formula f) {
    switch (f->kind) {
        case op::truth: return "true";
        case op::falsity: return "false";
        case op::prop: return f->name;
        case op::clock_atom: return "(" + f->name + " " + cmp_text(f->rel) + " " + std::to_string(f->value) + ")";
        case op::arith_atom: return "(" + print_expr(f->lhs) + " " + cmp_text(f->rel) + " " + print_expr(f->rhs) + ")";
        case op::next_arith: return "(X(" + f->name + ") " + cmp_text(f->rel) + " " + print_expr(f->rhs) + ")";
        case op::neg: return "!" + print(f->kids[0]);
        case op::conj:
        case op::disj: {
            std::string s = "(";
            for (std::size_t i = 0; i < f->kids.size(); ++i) {
                if (i) s += f->kind == op::conj ? " & " : " | ";
                s += print(f->kids[i]);
            }
            return s + ")";
        }
        case op::iff: return "(" + print(f->kids[0]) + " <-> " + print(f->kids[1]) + ")";
        case op::next: return "X" + print(f->kids[0]);
        case op::until: return "(" + print(f->kids[0]) + " U " + print(f->kids[1]) + ")";
        case op::release: return "(" + print(f->kids[0]) + " R " + print(f->kids[1]) + ")";
    }
    return "?";
}

formula desugar(formula f) {
    switch (f->kind) {
        case op::truth:
        case op::falsity:
        case op::prop:
        case op::clock_atom:
        case op::arith_atom:
        case op::next_arith: return f;
        case op::neg: return neg(desugar(f->kids[0]));
        case op::conj: {
            std::vector<formula> ks;
            for (auto* k : f->kids) ks.push_back(desugar(k));
            return conj(std::move(ks));
        }
        case op::disj: {
            std::vector<formula> ks;
            for (auto* k : f->kids) ks.push_back(neg(desugar(k)));
            return neg(conj(std::move(ks)));
        }
        case op::iff: {
            auto a = desugar(f->kids[0]), b = desugar(f->kids[1]);
            return conj(neg(conj(a, neg(b))), neg(conj(b, neg(a))));
        }
        case op::next: return next(desugar(f->kids[0]));
        case op::until: return until(desugar(f->kids[0]), desugar(f->kids[1]));
        case op::release: return neg(until(neg(desugar(f->kids[0])), neg(desugar(f->kids[1]))));
    }
    return f;
}

}  // namespace tamitl::cltloc
