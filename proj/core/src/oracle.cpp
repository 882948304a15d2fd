#include "tamitl/oracle.hpp"

#include "tamitl/semantics.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>

namespace tamitl::oracle {

configuration initial_configuration(const network& n) {
    configuration c;
    c.loc.assign(n.automata.size(), 0);
    for (const auto& d : n.vars) c.vars[d.name] = d.init;
    for (const auto& x : n.clocks) c.clocks[x] = 0;
    return c;
}

namespace {

const transition* taken(const network& n, std::size_t k, const move& m) {
    if (m.idle()) return nullptr;
    const auto& ts = n.automata[k].transitions;
    if (m.transition >= static_cast<int>(ts.size())) return nullptr;
    return &ts[static_cast<std::size_t>(m.transition)];
}

clock_valuation advanced(const clock_valuation& v, const rational& d) {
    clock_valuation r = v;
    for (auto& [_, x] : r) x += d;
    return r;
}

// the configuration reached by one delay and discrete step; first writer wins on conflicts
configuration apply(const network& n, const configuration& c, const step& s) {
    configuration r = c;
    r.clocks = advanced(c.clocks, s.delay);
    for (std::size_t k = 0; k < s.moves.size() && k < n.automata.size(); ++k) {
        const auto* t = taken(n, k, s.moves[k]);
        if (!t) continue;
        r.loc[k] = t->target;
        for (const auto& x : t->resets) r.clocks[x] = 0;
    }
    std::set<std::string> written;
    for (std::size_t k = 0; k < s.moves.size() && k < n.automata.size(); ++k) {
        const auto* t = taken(n, k, s.moves[k]);
        if (!t) continue;
        for (const auto& a : t->updates) {
            if (written.count(a.target)) continue;
            written.insert(a.target);
            r.vars[a.target] = eval_int_expr(a.value, c.vars);
        }
    }
    return r;
}

std::string loc_name(const network& n, std::size_t k, int q) {
    const auto& a = n.automata[k];
    if (q < 0 || q >= static_cast<int>(a.locations.size())) return a.name + ".?";
    return a.name + "." + a.locations[static_cast<std::size_t>(q)].name;
}

bool enabled(const transition& t, const clock_valuation& v, const var_valuation& vars) {
    return eval_clock_constraint(t.guard, v, sat_mode::strong) && eval_var_constraint(t.var_guard, vars);
}

struct checker {
    const network& n;
    const semantics_config& cfg;
    std::vector<violation> out;

    void flag(std::size_t h, std::string clause, std::string msg) {
        out.push_back({h, std::move(clause), std::move(msg)});
    }

    const convex_guard& inv(std::size_t k, int q) const {
        return n.automata[k].locations[static_cast<std::size_t>(q)].invariant;
    }

    void check_step(std::size_t h, const configuration& c, const step& s, const configuration& next) {
        const std::size_t K = n.automata.size();
        if (s.delay <= 0) flag(h, "delay", "delay must be positive");
        if (s.moves.size() != K) {
            flag(h, "shape", "step has " + std::to_string(s.moves.size()) + " entries for " + std::to_string(K) +
                                 " automata");
            return;
        }
        auto pre = advanced(c.clocks, s.delay);
        for (std::size_t k = 0; k < K; ++k)
            if (!eval_clock_constraint(inv(k, c.loc[k]), pre, sat_mode::weak))
                flag(h, "time", "invariant of " + loc_name(n, k, c.loc[k]) + " not weakly satisfied after delay");

        for (std::size_t k = 0; k < K; ++k) {
            const auto& m = s.moves[k];
            if (m.idle()) {
                if (!eval_clock_constraint(inv(k, c.loc[k]), pre, sat_mode::strong) ||
                    !eval_clock_constraint(inv(k, next.loc[k]), next.clocks, sat_mode::strong))
                    flag(h, "idle", "invariant of idle " + loc_name(n, k, c.loc[k]) + " violated");
                continue;
            }
            const auto* t = taken(n, k, m);
            if (!t) {
                flag(h, "firing", n.automata[k].name + " takes an unknown transition");
                continue;
            }
            if (t->source != c.loc[k]) {
                flag(h, "firing", n.automata[k].name + " is not in the source of its transition");
                continue;
            }
            if (!eval_clock_constraint(t->guard, pre, sat_mode::strong))
                flag(h, "guard", n.automata[k].name + " clock guard false");
            if (!eval_var_constraint(t->var_guard, c.vars))
                flag(h, "guard", n.automata[k].name + " variable guard false");
            auto src_mode = m.closed_open ? sat_mode::strong : sat_mode::weak;
            auto dst_mode = m.closed_open ? sat_mode::weak : sat_mode::strong;
            const char* clause = m.closed_open ? "invariant-ie" : "invariant-ei";
            if (!eval_clock_constraint(inv(k, t->source), pre, src_mode))
                flag(h, clause, "source invariant of " + loc_name(n, k, t->source) + " fails at the step");
            if (!eval_clock_constraint(inv(k, t->target), next.clocks, dst_mode))
                flag(h, clause, "target invariant of " + loc_name(n, k, t->target) + " fails after the step");
            if (cfg.edges == edge_restriction::closed_open && !m.closed_open)
                flag(h, "edges", n.automata[k].name + " takes an open-closed step");
            if (cfg.edges == edge_restriction::open_closed && m.closed_open)
                flag(h, "edges", n.automata[k].name + " takes a closed-open step");
        }

        // writers: equal values and the same edge
        std::map<std::string, std::pair<std::int64_t, bool>> writes;
        for (std::size_t k = 0; k < K; ++k) {
            const auto* t = taken(n, k, s.moves[k]);
            if (!t || t->source != c.loc[k]) continue;
            for (const auto& a : t->updates) {
                auto v = eval_int_expr(a.value, c.vars);
                auto [it, fresh] = writes.emplace(a.target, std::pair{v, s.moves[k].closed_open});
                if (fresh) continue;
                if (it->second.first != v) flag(h, "writers", "conflicting values written to " + a.target);
                if (it->second.second != s.moves[k].closed_open)
                    flag(h, "edge-consistency", "writers of " + a.target + " use different edges");
            }
        }
        for (const auto& [var, wv] : writes) {
            int vi = n.var_index(var);
            if (vi < 0) continue;
            const auto& d = n.vars[static_cast<std::size_t>(vi)];
            if (wv.first < d.lo || wv.first > d.hi)
                flag(h, "domain", var + " leaves its domain with value " + std::to_string(wv.first));
        }
        check_sync(h, c, pre, s);
    }

    void check_sync(std::size_t h, const configuration& c, const clock_valuation& pre, const step& s) {
        const std::size_t K = n.automata.size();
        auto kind_of = [&](std::size_t k) -> const action* {
            const auto* t = taken(n, k, s.moves[k]);
            return t ? &t->act : nullptr;
        };
        auto takers = [&](const std::string& ev, sync_kind sk, std::size_t but) {
            std::vector<std::size_t> r;
            for (std::size_t g = 0; g < K; ++g) {
                const auto* a = kind_of(g);
                if (g != but && a && a->event == ev && a->sync == sk) r.push_back(g);
            }
            return r;
        };
        for (std::size_t k = 0; k < K; ++k) {
            const auto* a = kind_of(k);
            if (!a || a->is_tau()) continue;
            const auto& ev = a->event;
            const bool edge = s.moves[k].closed_open;
            switch (a->sync) {
                case sync_kind::send: {
                    auto r = takers(ev, sync_kind::recv, k);
                    if (r.size() != 1)
                        flag(h, "channel", ev + "! needs exactly one receiver, found " + std::to_string(r.size()));
                    else if (s.moves[r[0]].closed_open != edge)
                        flag(h, "channel", ev + " sender and receiver use different edges");
                    break;
                }
                case sync_kind::recv: {
                    auto r = takers(ev, sync_kind::send, k);
                    if (r.size() != 1)
                        flag(h, "channel", ev + "? needs exactly one sender, found " + std::to_string(r.size()));
                    break;
                }
                case sync_kind::bsend: {
                    if (!takers(ev, sync_kind::bsend, k).empty()) flag(h, "broadcast", ev + "# has several senders");
                    for (std::size_t g = 0; g < K; ++g) {
                        if (g == k) continue;
                        const auto* b = kind_of(g);
                        if (b && b->event == ev && b->sync == sync_kind::brecv) {
                            if (s.moves[g].closed_open != edge)
                                flag(h, "broadcast", ev + " receiver " + n.automata[g].name + " uses another edge");
                            continue;
                        }
                        for (const auto& t : n.automata[g].transitions)
                            if (t.act.sync == sync_kind::brecv && t.act.event == ev && t.source == c.loc[g] &&
                                enabled(t, pre, c.vars))
                                flag(h, "broadcast", n.automata[g].name + " ignores enabled " + ev + "@");
                    }
                    break;
                }
                case sync_kind::brecv:
                    if (takers(ev, sync_kind::bsend, k).empty()) flag(h, "broadcast", ev + "@ without a sender");
                    break;
                case sync_kind::osend:
                    if (!takers(ev, sync_kind::osend, k).empty()) flag(h, "one-to-many", ev + "& has several senders");
                    if (takers(ev, sync_kind::orecv, k).empty()) flag(h, "one-to-many", ev + "& without receivers");
                    break;
                case sync_kind::orecv:
                    if (takers(ev, sync_kind::osend, k).empty()) flag(h, "one-to-many", ev + "* without a sender");
                    break;
                case sync_kind::none: break;
            }
        }
    }

    // a position's reading: location and variables after the step, clocks before its resets
    struct reading {
        std::vector<int> loc;
        var_valuation vars;
        clock_valuation clocks;
    };

    void check_liveness(const trace& tr, const std::vector<configuration>& cs) {
        if (!tr.loop || cfg.live.empty()) return;
        const std::size_t m = tr.steps.size(), L = *tr.loop;
        const std::size_t K = n.automata.size();
        std::vector<reading> pos(m);
        for (std::size_t p = 0; p < m; ++p) {
            pos[p].loc = cs[p].loc;
            pos[p].vars = cs[p].vars;
            pos[p].clocks = p == 0 ? cs[0].clocks : advanced(cs[p - 1].clocks, tr.steps[p - 1].delay);
        }
        // the position after the last step reads like position L
        auto enabled_from = [&](std::size_t k, int q, const reading& r) {
            for (const auto& t : n.automata[k].transitions)
                if (t.source == q && enabled(t, r.clocks, r.vars)) return true;
            return false;
        };
        auto eventually_enabled = [&](std::size_t k, int q, std::size_t p) {
            for (std::size_t j = p; j < m; ++j)
                if (enabled_from(k, q, pos[j])) return true;
            for (std::size_t j = L; j < m; ++j)
                if (enabled_from(k, q, pos[j])) return true;
            return false;
        };
        for (auto l : cfg.live) {
            switch (l) {
                case liveness::strong_transition:
                    for (std::size_t k = 0; k < K; ++k) {
                        bool moved = false;
                        for (std::size_t h = L; h < m; ++h) moved |= !tr.steps[h].moves[k].idle();
                        if (!moved) flag(L, "liveness", n.automata[k].name + " never moves in the loop");
                    }
                    break;
                case liveness::weak_transition: {
                    bool moved = false;
                    for (std::size_t h = L; h < m; ++h)
                        for (const auto& mv : tr.steps[h].moves) moved |= !mv.idle();
                    if (!moved) flag(L, "liveness", "no automaton moves in the loop");
                    break;
                }
                case liveness::strong_guard:
                case liveness::weak_guard: {
                    bool strong = l == liveness::strong_guard;
                    for (std::size_t p = 0; p < m; ++p) {
                        std::size_t good = 0;
                        for (std::size_t k = 0; k < K; ++k)
                            good += eventually_enabled(k, pos[p].loc[k], p) ? 1 : 0;
                        if (strong ? good < K : good == 0)
                            flag(p, "liveness", "no guard eventually enabled from position " + std::to_string(p));
                    }
                    break;
                }
            }
        }
    }
};

}  // namespace

std::vector<configuration> replay(const network& n, const trace& tr) {
    std::vector<configuration> cs{initial_configuration(n)};
    for (const auto& s : tr.steps) cs.push_back(apply(n, cs.back(), s));
    return cs;
}

bool equivalent(const network& n, const configuration& a, const configuration& b) {
    if (a.loc != b.loc || a.vars != b.vars) return false;
    for (const auto& [x, va] : a.clocks) {
        auto it = b.clocks.find(x);
        if (it == b.clocks.end()) return false;
        if (va == it->second) continue;
        rational m(n.max_constant(x));
        if (!(va > m && it->second > m)) return false;
    }
    return true;
}

std::vector<violation> validate_trace(const network& n, const trace& tr, const semantics_config& cfg) {
    checker ck{n, cfg, {}};
    auto c0 = initial_configuration(n);
    for (std::size_t k = 0; k < n.automata.size(); ++k)
        if (!eval_clock_constraint(ck.inv(k, 0), c0.clocks, sat_mode::strong))
            ck.flag(0, "initial", "initial invariant of " + loc_name(n, k, 0) + " fails");
    std::vector<configuration> cs;
    try {
        cs = replay(n, tr);
    } catch (const std::exception& e) {
        ck.flag(0, "shape", e.what());
        return ck.out;
    }
    for (std::size_t h = 0; h < tr.steps.size(); ++h) ck.check_step(h, cs[h], tr.steps[h], cs[h + 1]);
    if (tr.loop) {
        if (*tr.loop >= tr.steps.size())
            ck.flag(tr.steps.size(), "lasso", "loop start beyond the last step");
        else if (!equivalent(n, cs.back(), cs[*tr.loop]))
            ck.flag(tr.steps.size(), "lasso", "final configuration differs from the loop start");
        else
            ck.check_liveness(tr, cs);
    }
    return ck.out;
}

// signals

rational signal::period() const {
    if (!loop) return 0;
    return times.back() - times[*loop];
}

valuation valuation_of(const network& n, const std::vector<int>& loc, const var_valuation& vars) {
    valuation v;
    v.vars = vars;
    for (std::size_t k = 0; k < n.automata.size() && k < loc.size(); ++k)
        for (const auto& l : n.automata[k].locations[static_cast<std::size_t>(loc[k])].labels) v.props.insert(l);
    return v;
}

signal trace_to_signal(const network& n, const trace& tr) {
    auto cs = replay(n, tr);
    signal s;
    rational now = 0;
    s.times.push_back(0);
    s.point.push_back(valuation_of(n, cs[0].loc, cs[0].vars));
    for (std::size_t h = 0; h < tr.steps.size(); ++h) {
        const auto& st = tr.steps[h];
        s.open.push_back(valuation_of(n, cs[h].loc, cs[h].vars));
        now += st.delay;
        s.times.push_back(now);
        std::vector<int> loc = cs[h].loc;
        var_valuation vars = cs[h].vars;
        std::map<std::string, bool> edge_of;
        for (std::size_t k = 0; k < st.moves.size() && k < n.automata.size(); ++k) {
            const auto* t = taken(n, k, st.moves[k]);
            if (!t) continue;
            if (!st.moves[k].closed_open) loc[k] = cs[h + 1].loc[k];
            for (const auto& a : t->updates) {
                auto [it, fresh] = edge_of.emplace(a.target, st.moves[k].closed_open);
                if (!fresh && it->second != st.moves[k].closed_open)
                    throw edge_inconsistent("step " + std::to_string(h) + ": writers of " + a.target +
                                            " use different edges");
                if (!st.moves[k].closed_open) vars[a.target] = cs[h + 1].vars[a.target];
            }
        }
        s.point.push_back(valuation_of(n, loc, vars));
    }
    s.loop = tr.loop;
    return s;
}

bool holds(const mitl::atom& a, const valuation& v) {
    if (!a.arithmetic) return v.props.count(a.name) > 0;
    auto it = v.vars.find(a.name);
    if (it == v.vars.end()) throw declaration_error("unknown variable '" + a.name + "' in signal");
    return compare(a.rel, it->second, a.value);
}

// interval sets

namespace {

using iset = std::vector<interval>;

bool empty(const interval& i) { return i.lo > i.hi || (i.lo == i.hi && !(i.lo_closed && i.hi_closed)); }

iset normalize(iset s) {
    s.erase(std::remove_if(s.begin(), s.end(), empty), s.end());
    std::sort(s.begin(), s.end(), [](const interval& a, const interval& b) {
        if (a.lo != b.lo) return a.lo < b.lo;
        return a.lo_closed && !b.lo_closed;
    });
    iset r;
    for (const auto& i : s) {
        if (!r.empty()) {
            auto& b = r.back();
            bool touch = b.hi > i.lo || (b.hi == i.lo && (b.hi_closed || i.lo_closed));
            if (touch) {
                if (i.hi > b.hi) {
                    b.hi = i.hi;
                    b.hi_closed = i.hi_closed;
                } else if (i.hi == b.hi) {
                    b.hi_closed = b.hi_closed || i.hi_closed;
                }
                continue;
            }
        }
        r.push_back(i);
    }
    return r;
}

interval meet(const interval& a, const interval& b) {
    interval r;
    if (a.lo > b.lo) r.lo = a.lo, r.lo_closed = a.lo_closed;
    else if (b.lo > a.lo) r.lo = b.lo, r.lo_closed = b.lo_closed;
    else r.lo = a.lo, r.lo_closed = a.lo_closed && b.lo_closed;
    if (a.hi < b.hi) r.hi = a.hi, r.hi_closed = a.hi_closed;
    else if (b.hi < a.hi) r.hi = b.hi, r.hi_closed = b.hi_closed;
    else r.hi = a.hi, r.hi_closed = a.hi_closed && b.hi_closed;
    return r;
}

iset intersect(const iset& a, const iset& b) {
    iset r;
    for (const auto& x : a)
        for (const auto& y : b) {
            auto m = meet(x, y);
            if (!empty(m)) r.push_back(m);
        }
    return normalize(r);
}

iset unite(iset a, const iset& b) {
    a.insert(a.end(), b.begin(), b.end());
    return normalize(a);
}

iset complement(const iset& a, const rational& H) {
    iset r;
    interval cur{0, H, true, false};
    for (const auto& i : a) {
        interval gap{cur.lo, i.lo, cur.lo_closed, !i.lo_closed};
        if (!empty(gap)) r.push_back(gap);
        cur.lo = i.hi;
        cur.lo_closed = !i.hi_closed;
    }
    if (!empty(cur)) r.push_back(cur);
    return normalize(r);
}

struct ctx {
    const signal& s;
    rational H;

    // past times[L] every suffix repeats with the period, so each subformula is
    // evaluated exactly on [0, times[L] + P] and then replicated up to H
    iset fold(iset x) const {
        if (!s.loop) return x;
        const rational L = s.times[*s.loop], P = s.period(), W = L + P;
        auto r = intersect(x, {{0, W, true, true}});
        auto block = intersect(x, {{L, W, false, true}});
        for (rational shift = P; L + shift < H; shift += P)
            for (auto i : block) {
                i.lo += shift;
                i.hi += shift;
                r.push_back(i);
            }
        return intersect(normalize(r), {{0, H, true, false}});
    }

    // (start, point value, open value, end) for every segment up to H
    template <class F>
    void segments(F&& f) const {
        const std::size_t n = s.open.size();
        rational base = 0;
        std::size_t i = 0;
        const valuation* pt = &s.point[0];
        while (true) {
            if (i == n) {
                if (!s.loop) {
                    f(base + s.times[n], s.point[n], nullptr, base + s.times[n]);
                    return;
                }
                base += s.period();
                i = *s.loop;
                // the loop block starts right after times[L]; its point value is point[n]
                pt = &s.point[n];
            }
            rational a = base + s.times[i], b = base + s.times[i + 1];
            if (a >= H) return;
            f(a, *pt, &s.open[i], b);
            pt = &s.point[i + 1];
            ++i;
        }
    }

    iset atom_set(const mitl::atom& at) const {
        iset r;
        segments([&](const rational& a, const valuation& p, const valuation* o, const rational& b) {
            if (holds(at, p)) r.push_back({a, a, true, true});
            if (o && holds(at, *o)) r.push_back({a, b, false, false});
        });
        return intersect(normalize(r), {{0, H, true, false}});
    }

    iset until(const iset& phi, const iset& psi, const mitl::interval& iv) const {
        iset r;
        // strict: the witness lies strictly after t
        rational a(iv.lo), b;
        bool a_closed = !iv.lo_open && iv.lo > 0;
        bool bounded = iv.hi.has_value();
        if (bounded) b = rational(*iv.hi);
        bool b_closed = bounded && !iv.hi_open;
        for (const auto& J : phi) {
            interval around{J.lo, J.hi, false, true};
            for (const auto& K : psi) {
                auto k = meet(K, around);
                if (empty(k)) continue;
                interval d;
                if (bounded) {
                    d.lo = k.lo - b;
                    d.lo_closed = k.lo_closed && b_closed;
                } else {
                    d.lo = J.lo;
                    d.lo_closed = true;
                }
                d.hi = k.hi - a;
                d.hi_closed = k.hi_closed && a_closed;
                auto e = meet(d, {J.lo, J.hi, true, false});
                if (!empty(e)) r.push_back(e);
            }
        }
        return intersect(normalize(r), {{0, H, true, false}});
    }

    iset eval(const mitl::formula& f) const { return fold(eval_here(f)); }

    iset eval_here(const mitl::formula& f) const {
        using mitl::op;
        switch (f->kind) {
            case op::truth: return {{0, H, true, false}};
            case op::falsity: return {};
            case op::prop:
            case op::arith: return atom_set(f->at);
            case op::negation: return complement(eval(f->lhs), H);
            case op::conj: return intersect(eval(f->lhs), eval(f->rhs));
            case op::disj: return unite(eval(f->lhs), eval(f->rhs));
            case op::implies: return unite(complement(eval(f->lhs), H), eval(f->rhs));
            case op::until: return until(eval(f->lhs), eval(f->rhs), f->iv);
            case op::release:
                return complement(until(complement(eval(f->lhs), H), complement(eval(f->rhs), H), f->iv), H);
            case op::eventually: return until({{0, H, true, false}}, eval(f->lhs), f->iv);
            case op::always:
                return complement(until({{0, H, true, false}}, complement(eval(f->lhs), H), f->iv), H);
        }
        return {};
    }
};

// how far past t the value of f depends on the signal
std::optional<rational> lookahead(const mitl::formula& f, const signal& s) {
    using mitl::op;
    switch (f->kind) {
        case op::truth:
        case op::falsity:
        case op::prop:
        case op::arith: return rational(0);
        case op::negation:
        case op::eventually:
        case op::always:
        case op::until:
        case op::release:
        case op::conj:
        case op::disj:
        case op::implies: break;
    }
    auto l = lookahead(f->lhs, s);
    if (!l) return std::nullopt;
    rational need = *l;
    if (f->rhs) {
        auto r = lookahead(f->rhs, s);
        if (!r) return std::nullopt;
        need = std::max(need, *r);
    }
    if (f->kind == op::negation || f->kind == op::conj || f->kind == op::disj || f->kind == op::implies) return need;
    if (f->iv.hi) return need + rational(*f->iv.hi);
    if (!s.loop) return std::nullopt;
    // the first witness after t + lo lies within one period once inside the periodic part
    return need + rational(f->iv.lo) + s.period() + s.times[*s.loop] + 1;
}

// for a lasso signal, a horizon past which folding leaves the first period exact
rational folded_horizon(const mitl::formula& psi, const signal& s) {
    const rational P = s.period();
    if (P <= 0) throw std::invalid_argument("loop block has zero duration");
    return s.times.back() + rational(mitl::max_constant(psi)) + 2 * P + 2;
}

}  // namespace

std::vector<interval> satisfaction_set(const mitl::formula& psi, const signal& s, const rational& horizon) {
    if (!s.loop) return ctx{s, horizon}.eval(psi);
    ctx c{s, std::max(horizon, folded_horizon(psi, s))};
    return intersect(c.eval(psi), {{0, horizon, true, false}});
}

bool eval_mitl_signal(const mitl::formula& psi, const signal& s, const rational& t) {
    if (s.times.empty() || s.point.size() != s.times.size() || s.open.size() + 1 != s.times.size())
        throw std::invalid_argument("malformed signal");
    rational u = t, H;
    if (s.loop) {
        const rational L = s.times[*s.loop], P = s.period();
        H = folded_horizon(psi, s);
        if (u > L + P) {
            rational q = (u - L) / P;
            mpz_class n;
            mpz_fdiv_q(n.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
            u -= rational(n) * P;
            if (u == L) u += P;
        }
    } else {
        auto need = lookahead(psi, s);
        if (!need) throw insufficient_horizon("unbounded operator on a signal without a loop");
        if (u + *need >= s.times.back())
            throw insufficient_horizon("signal ends at " + s.times.back().get_str() + ", need " +
                                       rational(u + *need).get_str());
        H = s.times.back();
    }
    for (const auto& i : ctx{s, H}.eval(psi)) {
        bool after_lo = u > i.lo || (u == i.lo && i.lo_closed);
        bool before_hi = u < i.hi || (u == i.hi && i.hi_closed);
        if (after_lo && before_hi) return true;
    }
    return false;
}

// counterexample search

namespace {

struct search {
    const network& n;
    const mitl::formula& psi;
    const semantics_config& cfg;
    const search_options& opt;
    std::size_t expanded = 0;
    std::map<std::string, std::size_t> seen;  // state key -> smallest depth reached
    std::vector<step> path;
    std::vector<configuration> configs;
    std::optional<trace> found;

    std::string key(const configuration& c) const {
        std::ostringstream o;
        for (auto q : c.loc) o << q << ',';
        for (const auto& [v, x] : c.vars) o << x << ',';
        for (const auto& [x, v] : c.clocks) {
            rational m(n.max_constant(x));
            o << (v > m ? rational(m + 1).get_str() + "+" : v.get_str()) << ',';
        }
        return o.str();
    }

    std::vector<std::vector<move>> move_choices(const configuration& c) const {
        std::vector<std::vector<move>> per(n.automata.size());
        for (std::size_t k = 0; k < n.automata.size(); ++k) {
            per[k].push_back({});
            const auto& ts = n.automata[k].transitions;
            for (std::size_t t = 0; t < ts.size(); ++t) {
                if (ts[t].source != c.loc[k]) continue;
                if (cfg.edges != edge_restriction::open_closed) per[k].push_back({static_cast<int>(t), true});
                if (cfg.edges != edge_restriction::closed_open) per[k].push_back({static_cast<int>(t), false});
            }
        }
        return per;
    }

    bool step_ok(const configuration& c, const step& s, const configuration& next) {
        checker ck{n, cfg, {}};
        ck.check_step(0, c, s, next);
        return ck.out.empty();
    }

    void try_lassos() {
        const auto& last = configs.back();
        for (std::size_t j = 0; j + 1 < configs.size(); ++j) {
            if (!equivalent(n, last, configs[j])) continue;
            trace tr{path, j};
            if (!validate_trace(n, tr, cfg).empty()) continue;
            if (!eval_mitl_signal(psi, trace_to_signal(n, tr), 0)) {
                found = tr;
                return;
            }
        }
    }

    void dfs() {
        if (found) return;
        if (++expanded > opt.cap) throw search_cap_exceeded("search expanded more than " + std::to_string(opt.cap) +
                                                            " nodes");
        if (!path.empty()) try_lassos();
        if (found || path.size() >= opt.depth) return;
        const configuration c = configs.back();  // configs grows below
        auto per = move_choices(c);
        std::vector<move> pick(n.automata.size());
        std::function<void(std::size_t)> choose = [&](std::size_t k) {
            if (found) return;
            if (k == per.size()) {
                bool any = std::any_of(pick.begin(), pick.end(), [](const move& m) { return !m.idle(); });
                if (!any) return;  // idle steps only merge delays
                for (const auto& d : opt.grid) {
                    step s{d, pick};
                    auto next = apply(n, c, s);
                    if (!step_ok(c, s, next)) continue;
                    auto kk = key(next);
                    auto it = seen.find(kk);
                    bool on_path = std::any_of(configs.begin(), configs.end(),
                                               [&](const configuration& x) { return equivalent(n, x, next); });
                    if (!on_path && it != seen.end() && it->second <= path.size() + 1) continue;
                    seen[kk] = std::min(it == seen.end() ? path.size() + 1 : it->second, path.size() + 1);
                    path.push_back(s);
                    configs.push_back(next);
                    dfs();
                    path.pop_back();
                    configs.pop_back();
                    if (found) return;
                }
                return;
            }
            for (const auto& m : per[k]) {
                pick[k] = m;
                choose(k + 1);
                if (found) return;
            }
        };
        choose(0);
    }
};

}  // namespace

std::optional<trace> search_counterexample(const network& n, const mitl::formula& psi, const semantics_config& cfg,
                                           const search_options& opt) {
    search s{n, psi, cfg, opt, 0, {}, {}, {}, std::nullopt};
    s.configs.push_back(initial_configuration(n));
    s.dfs();
    return s.found;
}

// dumps

std::string dump_trace(const network& n, const trace& tr) {
    std::ostringstream o;
    auto cs = replay(n, tr);
    auto config_line = [&](const configuration& c) {
        o << "config";
        for (std::size_t k = 0; k < n.automata.size(); ++k) o << ' ' << loc_name(n, k, c.loc[k]);
        for (const auto& [v, x] : c.vars) o << ' ' << v << '=' << x;
        for (const auto& [x, v] : c.clocks) o << ' ' << x << '=' << v.get_str();
        o << '\n';
    };
    o << "trace steps " << tr.steps.size() << " loop " << (tr.loop ? std::to_string(*tr.loop) : "none") << '\n';
    config_line(cs[0]);
    for (std::size_t h = 0; h < tr.steps.size(); ++h) {
        const auto& s = tr.steps[h];
        o << "step " << h << " delay " << s.delay.get_str();
        for (std::size_t k = 0; k < s.moves.size() && k < n.automata.size(); ++k) {
            const auto& m = s.moves[k];
            o << ' ' << n.automata[k].name << ':';
            if (m.idle()) {
                o << '_';
                continue;
            }
            const auto* t = taken(n, k, m);
            std::string name = t && !t->name.empty() ? t->name : "t" + std::to_string(m.transition);
            o << name;
            if (t && !t->act.is_tau()) o << '[' << t->act.event << sync_symbol(t->act.sync) << ']';
            o << (m.closed_open ? "/ie" : "/ei");
        }
        o << '\n';
        config_line(cs[h + 1]);
    }
    return o.str();
}

std::string dump_signal(const signal& s) {
    std::ostringstream o;
    auto val = [&](const valuation& v) {
        o << '{';
        bool first = true;
        for (const auto& p : v.props) {
            o << (first ? "" : " ") << p;
            first = false;
        }
        for (const auto& [n, x] : v.vars) {
            o << (first ? "" : " ") << n << '=' << x;
            first = false;
        }
        o << '}';
    };
    o << "signal segments " << s.open.size() << " loop " << (s.loop ? std::to_string(*s.loop) : "none") << '\n';
    for (std::size_t i = 0; i < s.open.size(); ++i) {
        o << "at " << s.times[i].get_str() << ' ';
        val(s.point[i]);
        o << "\nin (" << s.times[i].get_str() << ',' << s.times[i + 1].get_str() << ") ";
        val(s.open[i]);
        o << '\n';
    }
    o << "at " << s.times.back().get_str() << ' ';
    val(s.point.back());
    o << '\n';
    return o.str();
}

}  // namespace tamitl::oracle
