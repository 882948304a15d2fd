#include "tamitl/encoder.hpp"

#include "tamitl/semantics.hpp"

#include <algorithm>

namespace tamitl::enc {

namespace c = cltloc;
using c::formula;

std::string vocabulary::atom_key(const mitl::atom& a) {
    if (!a.arithmetic) return a.name;
    std::string r = a.rel == cmp::eq ? "==" : cmp_text(a.rel);
    return a.name + r + std::to_string(a.value);
}

std::string vocabulary::first(const mitl::atom& a) { return "first(" + atom_key(a) + ")"; }
std::string vocabulary::rest(const mitl::atom& a) { return "rest(" + atom_key(a) + ")"; }

clock_pair vocabulary::pair_for(const std::string& clock) {
    return {clock + "$0", clock + "$1", clock + "$v"};
}

vocabulary::vocabulary(const network& n, std::set<mitl::atom> as) : atoms(std::move(as)) {
    for (std::size_t k = 0; k < n.automata.size(); ++k) {
        auto i = std::to_string(k);
        loc.push_back("l[" + i + "]");
        trans.push_back("t[" + i + "]");
        edge.push_back("edge[" + i + "]");
    }
    for (const auto& x : n.clocks) clocks[x] = pair_for(x);
}

formula active_is(const clock_pair& p, int j) { return c::var_eq(p.active, j); }

formula reset_now(const clock_pair& p) {
    return c::disj(c::clock(p.copy0, cmp::eq, 0), c::clock(p.copy1, cmp::eq, 0));
}

formula encode_clock_atom(const clock_pair& p, cmp rel, std::int64_t d) {
    return c::disj(c::conj(c::clock(p.copy0, rel, d), active_is(p, 0)),
                   c::conj(c::clock(p.copy1, rel, d), active_is(p, 1)));
}

formula encode_literal(const clock_pair& p, const clock_literal& l) {
    auto f = encode_clock_atom(p, l.atom.op, l.atom.bound);
    return l.negated ? c::neg(f) : f;
}

formula encode_clock_system(const std::vector<clock_pair>& pairs) {
    std::vector<formula> init, step;
    for (const auto& p : pairs) {
        init.push_back(c::clock(p.copy0, cmp::eq, 0));
        init.push_back(c::clock(p.copy1, cmp::gt, 0));
        init.push_back(active_is(p, 0));
        const std::string* copy[2] = {&p.copy0, &p.copy1};
        for (int j = 0; j < 2; ++j) {
            auto held = c::conj(active_is(p, j), c::clock(*copy[j], cmp::gt, 0));
            step.push_back(c::implies(c::clock(*copy[j], cmp::eq, 0),
                                      c::next(c::release(c::clock(*copy[1 - j], cmp::eq, 0), held))));
        }
    }
    return c::conj(c::conj(init), c::always(c::conj(step)));
}

std::vector<clock_pair> clock_pairs(const vocabulary& v) {
    std::vector<clock_pair> r;
    for (const auto& [_, p] : v.clocks) r.push_back(p);
    return r;
}

static const clock_pair& pair_of(const vocabulary& v, const std::string& x) {
    auto it = v.clocks.find(x);
    if (it == v.clocks.end()) throw declaration_error("unknown clock '" + x + "'");
    return it->second;
}

formula encode_clock_atom(const clock_atom& a, const vocabulary& v) {
    return encode_clock_atom(pair_of(v, a.clock), a.op, a.bound);
}

formula encode_guard(const convex_guard& g, const vocabulary& v) {
    std::vector<formula> fs;
    for (const auto& l : g) fs.push_back(encode_literal(pair_of(v, l.atom.clock), l));
    return c::conj(fs);
}

formula rewrite_reset_aware(const convex_guard& g, rewrite mode, const vocabulary& v) {
    std::vector<formula> fs;
    for (const auto& l : g) {
        const auto& p = pair_of(v, l.atom.clock);
        auto reset = reset_now(p);
        auto at_zero = literal_at(l, 0) ? c::top() : c::bottom();
        auto on_reset = c::implies(reset, at_zero);
        if (mode == rewrite::r1) {
            fs.push_back(on_reset);
        } else {
            fs.push_back(c::implies(c::neg(reset), encode_literal(p, l)));
            fs.push_back(on_reset);
        }
    }
    return c::conj(fs);
}

std::optional<convex_guard> weak_version(const convex_guard& g) {
    convex_guard r;
    for (const auto& l : g) {
        if (l.negated) {
            if (l.atom.op != cmp::eq) r.push_back(l);
            continue;
        }
        switch (l.atom.op) {
            case cmp::eq: return std::nullopt;
            case cmp::lt: r.push_back({{l.atom.clock, cmp::gt, l.atom.bound}, true}); break;
            case cmp::gt: r.push_back({{l.atom.clock, cmp::lt, l.atom.bound}, true}); break;
        }
    }
    return r;
}

formula encode_var_constraint(const var_constraint& vc) {
    using K = var_constraint::kind;
    std::vector<formula> kids;
    switch (vc.k) {
        case K::truth: return c::top();
        case K::atom: return c::arith(vc.lhs, vc.op, vc.rhs);
        case K::negation: return c::neg(encode_var_constraint(vc.kids.at(0)));
        case K::conjunction:
        case K::disjunction:
            for (const auto& kid : vc.kids) kids.push_back(encode_var_constraint(kid));
            return vc.k == K::conjunction ? c::conj(kids) : c::disj(kids);
    }
    return c::top();
}

namespace {

struct context {
    const network& n;
    const vocabulary& v;
    bool lorc;

    formula at_loc(std::size_t k, int q) const { return c::var_eq(v.loc[k], q); }
    formula fires(std::size_t k, std::size_t t) const {
        return c::var_eq(v.trans[k], static_cast<std::int64_t>(t));
    }
    formula idle(std::size_t k) const { return c::var_eq(v.trans[k], no_transition); }
    // edge atom of automaton k at the position where its step takes effect
    formula edge_next(std::size_t k) const { return lorc ? c::top() : c::next(c::prop(v.edge[k])); }

    const location& loc(std::size_t k, int q) const {
        return n.automata[k].locations[static_cast<std::size_t>(q)];
    }
    formula inv(std::size_t k, int q) const { return encode_guard(loc(k, q).invariant, v); }
    formula inv_weak(std::size_t k, int q) const {
        auto w = weak_version(loc(k, q).invariant);
        return w ? encode_guard(*w, v) : c::bottom();
    }
    formula r2_inv(std::size_t k, int q, bool weak) const {
        if (!weak) return rewrite_reset_aware(loc(k, q).invariant, rewrite::r2, v);
        auto w = weak_version(loc(k, q).invariant);
        return w ? rewrite_reset_aware(*w, rewrite::r2, v) : c::bottom();
    }

    // sync-on(k, event with qualifier)
    formula sync_on(std::size_t k, const std::string& ev, sync_kind s) const {
        std::vector<formula> fs;
        const auto& ts = n.automata[k].transitions;
        for (std::size_t t = 0; t < ts.size(); ++t)
            if (ts[t].act.sync == s && ts[t].act.event == ev) fs.push_back(fires(k, t));
        return c::disj(fs);
    }
    formula sync_on_but(const std::set<std::size_t>& skip, const std::string& ev, sync_kind s) const {
        std::vector<formula> fs;
        for (std::size_t g = 0; g < n.automata.size(); ++g)
            if (!skip.count(g)) fs.push_back(sync_on(g, ev, s));
        return c::disj(fs);
    }
    formula same_edge(std::size_t k, std::size_t h) const {
        if (lorc) return c::top();
        return c::next(c::iff(c::prop(v.edge[k]), c::prop(v.edge[h])));
    }
};

formula mu_formula(const transition& t) {
    std::vector<formula> fs;
    for (const auto& a : t.updates) fs.push_back(c::next_var(a.target, cmp::eq, a.value));
    return c::conj(fs);
}

formula zeta_formula(const transition& t, const vocabulary& v) {
    std::vector<formula> fs;
    for (const auto& x : t.resets) fs.push_back(reset_now(pair_of(v, x)));
    return c::conj(fs);
}

}  // namespace

formula encode_network(const network& n, const vocabulary& v, encoding_variant variant) {
    context cx{n, v, variant == encoding_variant::lorc};
    std::vector<formula> init, inv0, step;
    for (std::size_t k = 0; k < n.automata.size(); ++k) {
        init.push_back(cx.at_loc(k, 0));
        inv0.push_back(cx.inv(k, 0));
    }
    for (const auto& d : n.vars) init.push_back(c::var_eq(d.name, d.init));

    for (std::size_t k = 0; k < n.automata.size(); ++k) {
        const auto& a = n.automata[k];
        // phi4
        for (std::size_t q = 0; q < a.locations.size(); ++q) {
            int qi = static_cast<int>(q);
            const auto& g = a.locations[q].invariant;
            step.push_back(c::implies(c::conj(cx.at_loc(k, qi), cx.idle(k)),
                                      c::next(c::conj(cx.inv(k, qi), rewrite_reset_aware(g, rewrite::r1, v)))));
        }
        // phi5
        for (std::size_t ti = 0; ti < a.transitions.size(); ++ti) {
            const auto& t = a.transitions[ti];
            formula closed_open = c::conj({cx.inv(k, t.source), cx.r2_inv(k, t.target, true)});
            formula edge;
            if (cx.lorc) {
                edge = closed_open;
            } else {
                auto e = c::prop(v.edge[k]);
                auto open_closed = c::conj({cx.inv_weak(k, t.source), cx.r2_inv(k, t.target, false), c::neg(e)});
                edge = c::disj(c::conj(closed_open, e), open_closed);
            }
            auto after = c::conj({cx.at_loc(k, t.target), encode_guard(t.guard, v), zeta_formula(t, v), edge});
            step.push_back(c::implies(cx.fires(k, ti), c::conj({cx.at_loc(k, t.source),
                                                                 encode_var_constraint(t.var_guard),
                                                                 mu_formula(t), c::next(after)})));
        }
        // phi6
        for (std::size_t q = 0; q < a.locations.size(); ++q)
            for (std::size_t q2 = 0; q2 < a.locations.size(); ++q2) {
                if (q == q2) continue;
                std::vector<formula> by;
                for (std::size_t ti = 0; ti < a.transitions.size(); ++ti)
                    if (a.transitions[ti].source == static_cast<int>(q) &&
                        a.transitions[ti].target == static_cast<int>(q2))
                        by.push_back(cx.fires(k, ti));
                step.push_back(c::implies(
                    c::conj(cx.at_loc(k, static_cast<int>(q)), c::next(cx.at_loc(k, static_cast<int>(q2)))),
                    c::disj(by)));
            }
    }
    // phi7
    for (const auto& x : n.clocks) {
        std::vector<formula> by;
        for (std::size_t k = 0; k < n.automata.size(); ++k)
            for (std::size_t ti = 0; ti < n.automata[k].transitions.size(); ++ti) {
                const auto& rs = n.automata[k].transitions[ti].resets;
                if (std::find(rs.begin(), rs.end(), x) != rs.end()) by.push_back(cx.fires(k, ti));
            }
        step.push_back(c::implies(c::next(reset_now(pair_of(v, x))), c::disj(by)));
    }
    // phi8
    for (const auto& d : n.vars) {
        std::vector<formula> by;
        for (std::size_t k = 0; k < n.automata.size(); ++k)
            for (std::size_t ti = 0; ti < n.automata[k].transitions.size(); ++ti)
                if (n.automata[k].transitions[ti].updated_vars().count(d.name)) by.push_back(cx.fires(k, ti));
        step.push_back(c::implies(c::neg(c::next_var(d.name, cmp::eq, int_expr::variable(d.name))), c::disj(by)));
    }
    return c::conj({encode_clock_system(clock_pairs(v)), c::conj(init), c::conj(inv0), c::always(c::conj(step))});
}

formula encode_constraints(const network& n, const semantics_config& cfg, const vocabulary& v) {
    context cx{n, v, cfg.variant == encoding_variant::lorc};
    const std::size_t K = n.automata.size();
    std::vector<formula> parts;

    auto guard_enabled_from = [&](std::size_t k, int q) {
        std::vector<formula> fs;
        for (const auto& t : n.automata[k].transitions)
            if (t.source == q) fs.push_back(c::conj(encode_guard(t.guard, v), encode_var_constraint(t.var_guard)));
        return c::disj(fs);
    };
    auto guard_live = [&](std::size_t k) {
        std::vector<formula> fs;
        for (std::size_t q = 0; q < n.automata[k].locations.size(); ++q) {
            int qi = static_cast<int>(q);
            fs.push_back(c::implies(cx.at_loc(k, qi), c::eventually(guard_enabled_from(k, qi))));
        }
        return c::conj(fs);
    };

    for (auto l : cfg.live) {
        std::vector<formula> fs;
        switch (l) {
            case liveness::strong_transition:
                for (std::size_t k = 0; k < K; ++k) fs.push_back(c::always(c::eventually(c::neg(cx.idle(k)))));
                parts.push_back(c::conj(fs));
                break;
            case liveness::weak_transition:
                for (std::size_t k = 0; k < K; ++k) fs.push_back(c::neg(cx.idle(k)));
                parts.push_back(c::always(c::eventually(c::disj(fs))));
                break;
            case liveness::strong_guard:
                for (std::size_t k = 0; k < K; ++k) fs.push_back(guard_live(k));
                parts.push_back(c::always(c::conj(fs)));
                break;
            case liveness::weak_guard:
                for (std::size_t k = 0; k < K; ++k) fs.push_back(guard_live(k));
                parts.push_back(c::always(c::disj(fs)));
                break;
        }
    }

    std::vector<formula> sync;
    for (std::size_t k = 0; k < K; ++k) {
        const auto& ts = n.automata[k].transitions;
        for (std::size_t ti = 0; ti < ts.size(); ++ti) {
            const auto& ev = ts[ti].act.event;
            auto fire = cx.fires(k, ti);
            std::vector<formula> fs;
            switch (ts[ti].act.sync) {
                case sync_kind::none: break;
                case sync_kind::send:
                    for (std::size_t h = 0; h < K; ++h)
                        if (h != k)
                            fs.push_back(c::conj({cx.sync_on(h, ev, sync_kind::recv),
                                                  c::neg(cx.sync_on_but({k, h}, ev, sync_kind::recv)),
                                                  cx.same_edge(k, h)}));
                    sync.push_back(c::implies(fire, c::disj(fs)));
                    break;
                case sync_kind::recv:
                    for (std::size_t h = 0; h < K; ++h)
                        if (h != k)
                            fs.push_back(c::conj(cx.sync_on(h, ev, sync_kind::send),
                                                 c::neg(cx.sync_on_but({k, h}, ev, sync_kind::send))));
                    sync.push_back(c::implies(fire, c::disj(fs)));
                    break;
                case sync_kind::bsend:
                    fs.push_back(c::neg(cx.sync_on_but({k}, ev, sync_kind::bsend)));
                    for (std::size_t h = 0; h < K; ++h) {
                        if (h == k) continue;
                        std::vector<formula> disabled;
                        const auto& hs = n.automata[h].transitions;
                        for (const auto& t2 : hs)
                            if (t2.act.sync == sync_kind::brecv && t2.act.event == ev)
                                disabled.push_back(c::disj({c::next(c::neg(encode_guard(t2.guard, v))),
                                                            c::neg(encode_var_constraint(t2.var_guard)),
                                                            c::neg(cx.at_loc(h, t2.source))}));
                        fs.push_back(c::disj(c::conj(cx.sync_on(h, ev, sync_kind::brecv), cx.same_edge(k, h)),
                                             c::conj(disabled)));
                    }
                    sync.push_back(c::implies(fire, c::conj(fs)));
                    break;
                case sync_kind::brecv:
                    sync.push_back(c::implies(fire, cx.sync_on_but({k}, ev, sync_kind::bsend)));
                    break;
                case sync_kind::osend:
                    sync.push_back(c::implies(fire, c::conj(c::neg(cx.sync_on_but({k}, ev, sync_kind::osend)),
                                                            cx.sync_on_but({k}, ev, sync_kind::orecv))));
                    break;
                case sync_kind::orecv:
                    sync.push_back(c::implies(fire, cx.sync_on_but({k}, ev, sync_kind::osend)));
                    break;
            }
        }
    }
    parts.push_back(c::always(c::conj(sync)));

    if (!cx.lorc) {
        std::vector<formula> fs;
        if (cfg.edges == edge_restriction::closed_open)
            for (std::size_t k = 0; k < K; ++k) fs.push_back(c::prop(v.edge[k]));
        if (cfg.edges == edge_restriction::open_closed)
            for (std::size_t k = 0; k < K; ++k) fs.push_back(c::neg(c::prop(v.edge[k])));
        parts.push_back(c::always(c::conj(fs)));

        // simultaneous writers of one variable take the same edge
        std::vector<formula> consistent;
        for (std::size_t k = 0; k < K; ++k)
            for (std::size_t h = k + 1; h < K; ++h)
                for (std::size_t ti = 0; ti < n.automata[k].transitions.size(); ++ti)
                    for (std::size_t hi = 0; hi < n.automata[h].transitions.size(); ++hi) {
                        auto a = n.automata[k].transitions[ti].updated_vars();
                        auto b = n.automata[h].transitions[hi].updated_vars();
                        bool shared = std::any_of(a.begin(), a.end(), [&](auto& x) { return b.count(x) > 0; });
                        if (shared)
                            consistent.push_back(c::implies(c::conj(cx.fires(k, ti), cx.fires(h, hi)),
                                                            cx.same_edge(k, h)));
                    }
        parts.push_back(c::always(c::conj(consistent)));
    }
    return c::conj(parts);
}

formula encode_signal_binding(const network& n, const vocabulary& v, encoding_variant variant) {
    context cx{n, v, variant == encoding_variant::lorc};
    const std::size_t K = n.automata.size();
    std::vector<formula> origin, always;
    const auto known = n.propositions();
    for (const auto& a : v.atoms) {
        if (!a.arithmetic && !known.count(a.name))
            throw declaration_error("unknown proposition '" + a.name + "' in property");
        auto first = c::prop(vocabulary::first(a));
        auto rest = c::prop(vocabulary::rest(a));
        if (a.arithmetic) {
            if (n.var_index(a.name) < 0) throw declaration_error("unknown variable '" + a.name + "' in property");
            auto now = c::arith(int_expr::variable(a.name), a.rel, int_expr::constant(a.value));
            origin.push_back(c::iff(first, now));
            always.push_back(c::iff(rest, now));
            if (cx.lorc) {
                always.push_back(c::iff(c::next(first), rest));
                continue;
            }
            std::vector<formula> keep, take;
            bool any_writer = false;
            for (std::size_t k = 0; k < K; ++k)
                for (std::size_t ti = 0; ti < n.automata[k].transitions.size(); ++ti)
                    if (n.automata[k].transitions[ti].updated_vars().count(a.name)) {
                        any_writer = true;
                        auto e = c::prop(v.edge[k]);
                        keep.push_back(c::conj(cx.fires(k, ti), c::next(e)));
                        take.push_back(c::conj(cx.fires(k, ti), c::next(c::neg(e))));
                    }
            formula no_writer = any_writer ? c::neg(c::disj([&] {
                std::vector<formula> fs;
                for (std::size_t k = 0; k < K; ++k)
                    for (std::size_t ti = 0; ti < n.automata[k].transitions.size(); ++ti)
                        if (n.automata[k].transitions[ti].updated_vars().count(a.name)) fs.push_back(cx.fires(k, ti));
                return fs;
            }()))
                                           : c::top();
            auto value = c::disj(c::conj(now, c::disj(no_writer, c::disj(keep))),
                                 c::conj(c::next(now), c::disj(take)));
            always.push_back(c::iff(c::next(first), value));
            continue;
        }
        std::vector<formula> init, live, keep, take;
        for (std::size_t k = 0; k < K; ++k) {
            const auto& locs = n.automata[k].locations;
            for (std::size_t q = 0; q < locs.size(); ++q) {
                if (std::find(locs[q].labels.begin(), locs[q].labels.end(), a.name) == locs[q].labels.end())
                    continue;
                int qi = static_cast<int>(q);
                if (q == 0) init.push_back(cx.at_loc(k, 0));
                live.push_back(cx.at_loc(k, qi));
                if (!cx.lorc) {
                    auto e = c::prop(v.edge[k]);
                    keep.push_back(c::conj(cx.at_loc(k, qi), c::disj(cx.idle(k), c::next(e))));
                    take.push_back(c::conj({c::next(cx.at_loc(k, qi)), c::neg(cx.idle(k)), c::next(c::neg(e))}));
                }
            }
        }
        origin.push_back(c::iff(first, c::disj(init)));
        always.push_back(c::iff(rest, c::disj(live)));
        if (cx.lorc)
            always.push_back(c::iff(c::next(first), rest));
        else
            always.push_back(c::iff(c::next(first), c::disj(c::disj(keep), c::disj(take))));
    }
    return c::conj(c::conj(origin), c::always(c::conj(always)));
}

encoder_output encode_system(const network& n, const semantics_config& cfg, const std::set<mitl::atom>& atoms) {
    auto diags = validate_config(cfg);
    if (!diags.empty()) throw declaration_error(diags.front().message);
    if (n.clocks.empty()) return encode_system(with_some_clock(n), cfg, atoms);

    encoder_output out;
    out.vocab = vocabulary(n, atoms);
    const auto& v = out.vocab;
    out.formula = c::conj({encode_network(n, v, cfg.variant), encode_constraints(n, cfg, v),
                           encode_signal_binding(n, v, cfg.variant)});
    out.conjuncts = c::conjunct_count(out.formula);

    auto& sig = out.sig;
    for (std::size_t k = 0; k < n.automata.size(); ++k) {
        const auto& a = n.automata[k];
        sig.ints.push_back({v.loc[k], 0, static_cast<std::int64_t>(a.locations.size()) - 1});
        sig.ints.push_back({v.trans[k], no_transition, static_cast<std::int64_t>(a.transitions.size()) - 1});
        if (cfg.variant != encoding_variant::lorc) sig.props.push_back(v.edge[k]);
    }
    for (const auto& [_, p] : v.clocks) {
        sig.clocks.push_back(p.copy0);
        sig.clocks.push_back(p.copy1);
        sig.ints.push_back({p.active, 0, 1});
    }
    for (const auto& d : n.vars) sig.ints.push_back({d.name, d.lo, d.hi});
    for (const auto& a : atoms) {
        sig.props.push_back(vocabulary::first(a));
        sig.props.push_back(vocabulary::rest(a));
    }
    return out;
}

}  // namespace tamitl::enc
