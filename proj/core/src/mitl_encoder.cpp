#include "tamitl/mitl_encoder.hpp"

#include "tamitl/encoder.hpp"

#include <map>

namespace tamitl::menc {

namespace c = cltloc;
using c::formula;
using enc::clock_pair;

int timer_capacity(std::int64_t a, std::optional<std::int64_t> b, int cap) {
    int n = 4;
    if (b) {
        std::int64_t w = *b - a;
        n = static_cast<int>(2 * ((a + w - 1) / w) + 4);
    }
    return std::min(n, std::max(cap, 1));
}

namespace {

// truth of a subformula at the instant a_i (f) and on (a_i, a_{i+1}) (r)
struct fr {
    formula f, r;
};

bool is_top(const fr& x) { return x.f == c::top() && x.r == c::top(); }
bool is_bottom(const fr& x) { return x.f == c::bottom() && x.r == c::bottom(); }

fr both(formula g) { return {g, g}; }

fr conj(const fr& a, const fr& b) { return {c::conj(a.f, b.f), c::conj(a.r, b.r)}; }
fr disj(const fr& a, const fr& b) { return {c::disj(a.f, b.f), c::disj(a.r, b.r)}; }

class builder {
public:
    explicit builder(const options& o) : opt_(o) {}

    mitl_encoding run(const mitl::formula& psi) {
        auto root = encode(mitl::to_positive_normal_form(psi));
        std::vector<formula> all{root.f};
        if (!pairs_.empty()) all.push_back(enc::encode_clock_system(pairs_));
        if (!initial_.empty()) all.push_back(c::conj(initial_));
        if (!global_.empty()) all.push_back(c::always(c::conj(global_)));
        out_.formula = c::conj(all);
        return std::move(out_);
    }

private:
    const options& opt_;
    mitl_encoding out_;
    std::vector<clock_pair> pairs_;
    std::vector<formula> initial_, global_;
    std::map<std::string, fr> memo_;
    int next_id_ = 0;

    std::string fresh(const char* tag) { return "$" + std::string(tag) + std::to_string(next_id_++); }

    formula new_prop(const std::string& name) {
        out_.sig.props.push_back(name);
        return c::prop(name);
    }

    clock_pair new_pair(const std::string& base) {
        auto p = enc::vocabulary::pair_for(base);
        out_.sig.clocks.push_back(p.copy0);
        out_.sig.clocks.push_back(p.copy1);
        out_.sig.ints.push_back({p.active, 0, 1});
        out_.aux_clocks.push_back(p.copy0);
        out_.aux_clocks.push_back(p.copy1);
        pairs_.push_back(p);
        return p;
    }

    void check_bound(std::int64_t v) {
        if (v > opt_.horizon)
            throw encoding_error("interval endpoint " + std::to_string(v) + " exceeds horizon " +
                                 std::to_string(opt_.horizon));
    }

    fr encode(const mitl::formula& f) {
        auto key = mitl::print(f);
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;
        fr r = build(f);
        memo_.emplace(key, r);
        return r;
    }

    fr atom_fr(const mitl::atom& a) {
        out_.atoms.insert(a);
        return {c::prop(enc::vocabulary::first(a)), c::prop(enc::vocabulary::rest(a))};
    }

    fr build(const mitl::formula& f) {
        using mitl::op;
        switch (f->kind) {
        case op::truth: return both(c::top());
        case op::falsity: return both(c::bottom());
        case op::prop:
        case op::arith: return atom_fr(f->at);
        case op::negation: {
            auto a = atom_fr(f->lhs->at);
            return {c::neg(a.f), c::neg(a.r)};
        }
        case op::conj: return conj(encode(f->lhs), encode(f->rhs));
        case op::disj: return disj(encode(f->lhs), encode(f->rhs));
        case op::until: return until(encode(f->lhs), encode(f->rhs), f->iv);
        case op::release: return release(encode(f->lhs), encode(f->rhs), f->iv);
        default: throw encoding_error("formula not in positive normal form: " + mitl::print(f));
        }
    }

    void check_interval(const mitl::interval& iv) {
        check_bound(iv.lo);
        if (iv.hi) {
            check_bound(*iv.hi);
            if (*iv.hi == iv.lo) throw encoding_error("punctual interval " + mitl::to_string(iv));
        }
    }

    fr until(const fr& a, const fr& b, const mitl::interval& iv) {
        check_interval(iv);
        if (iv.lo == 0) {
            fr base = until0(a, b);
            return iv.hi ? conj(base, eventually0(b, *iv.hi, !iv.hi_open)) : base;
        }
        // the first lo time units are covered by a, the rest starts lo later
        mitl::interval tail{0, true, iv.hi ? std::optional(*iv.hi - iv.lo) : std::nullopt, iv.hi_open};
        fr y = conj(a, until(a, b, tail));
        if (!iv.lo_open) y = disj(b, y);
        return conj(always0(a, iv.lo, false), shift(y, iv.lo, tail.hi));
    }

    fr release(const fr& a, const fr& b, const mitl::interval& iv) {
        check_interval(iv);
        if (iv.lo == 0) {
            fr base = release0(a, b);
            return iv.hi ? disj(base, always0(b, *iv.hi, !iv.hi_open)) : base;
        }
        mitl::interval tail{0, true, iv.hi ? std::optional(*iv.hi - iv.lo) : std::nullopt, iv.hi_open};
        fr z = disj(a, release(a, b, tail));
        if (!iv.lo_open) z = conj(b, z);
        return disj(eventually0(a, iv.lo, false), shift(z, iv.lo, tail.hi));
    }

    // unbounded strict until: a holds up to some later point where b holds
    fr until0(const fr& a, const fr& b) {
        if (is_bottom(b)) return both(c::bottom());
        ++out_.temporal;
        auto hold = c::conj(a.r, c::next(a.f));
        auto done = c::conj(a.r, c::disj(b.r, c::next(b.f)));
        return both(c::until(hold, done));
    }

    fr release0(const fr& a, const fr& b) {
        if (is_top(b)) return both(c::top());
        ++out_.temporal;
        auto now = c::disj(a.r, c::conj(b.r, c::next(b.f)));
        auto stop = c::disj(a.r, c::conj({b.r, c::next(b.f), c::next(a.f)}));
        return both(c::release(stop, now));
    }

    // F_(0,b> x: one pending obligation, discharged at the first witness after its origin
    fr eventually0(const fr& x, std::int64_t bound, bool closed) {
        if (is_top(x)) return both(c::top());
        if (is_bottom(x)) return both(c::bottom());
        ++out_.temporal;
        auto id = fresh("f");
        auto sf = new_prop(id + ".f"), sr = new_prop(id + ".r");
        auto pend = new_prop(id + ".p"), carry = new_prop(id + ".c");
        auto carried = new_prop(id + ".i"), strict = new_prop(id + ".s");
        auto z = new_pair(id + ".z");
        auto lt = enc::encode_clock_atom(z, cmp::lt, bound);
        auto le = c::neg(enc::encode_clock_atom(z, cmp::gt, bound));
        auto lt_or_le = closed ? le : lt;

        auto fresh_origin = c::neg(carried);
        auto at_r = c::conj(x.r, c::disj({fresh_origin, c::conj(strict, lt), c::conj(c::neg(strict), le)}));
        auto at_f = c::disj(c::conj(strict, c::next(c::conj(x.f, lt_or_le))),
                            c::conj(c::neg(strict), c::next(c::conj(x.f, le))));
        auto discharge = c::disj(at_r, at_f);

        initial_.push_back(c::neg(carried));
        global_.push_back(c::implies(sf, c::disj(x.r, pend)));
        global_.push_back(c::implies(sr, c::disj(x.r, pend)));
        global_.push_back(c::implies(c::conj({pend, fresh_origin, sf}), strict));
        global_.push_back(c::implies(c::conj(pend, fresh_origin), enc::reset_now(z)));
        global_.push_back(c::implies(pend, c::until(carry, discharge)));
        global_.push_back(c::implies(carry, c::conj({c::next(pend), c::iff(strict, c::next(strict)),
                                                     c::next(c::neg(enc::reset_now(z)))})));
        global_.push_back(c::iff(c::next(carried), carry));
        return {sf, sr};
    }

    // G_(0,b> x: the latest origin dominates, so one clock pair suffices
    fr always0(const fr& x, std::int64_t bound, bool closed) {
        if (is_top(x)) return both(c::top());
        ++out_.temporal;
        auto id = fresh("g");
        auto sf = new_prop(id + ".f"), sr = new_prop(id + ".r");
        auto st_closed = new_prop(id + ".sc"), st_open = new_prop(id + ".so");
        auto act = new_prop(id + ".a"), kind = new_prop(id + ".k");
        auto z = new_pair(id + ".z");
        auto lt = enc::encode_clock_atom(z, cmp::lt, bound);
        auto le = c::neg(enc::encode_clock_atom(z, cmp::gt, bound));
        auto start = c::disj(st_closed, st_open);

        global_.push_back(c::implies(sf, c::conj(x.r, closed ? st_closed : st_open)));
        global_.push_back(c::implies(sr, c::conj(x.r, c::next(c::conj(x.f, st_open)))));
        global_.push_back(c::implies(start, c::conj({x.r, enc::reset_now(z), c::next(act),
                                                     c::iff(c::next(kind), st_closed)})));
        global_.push_back(c::implies(c::conj(act, c::disj(c::conj(kind, le), c::conj(c::neg(kind), lt))), x.f));
        global_.push_back(c::implies(c::conj(act, lt), x.r));
        global_.push_back(c::implies(c::conj({act, lt, c::neg(start)}),
                                     c::conj(c::next(act), c::iff(kind, c::next(kind)))));
        global_.push_back(c::implies(c::next(enc::reset_now(z)), c::next(start)));
        return {sf, sr};
    }

    // value of y exactly a time units later; boundaries of the asserted set are
    // replayed through a pool of timers that each fire when their clock reads a
    fr shift(const fr& y, std::int64_t a, std::optional<std::int64_t> tail_hi) {
        if (is_top(y)) return both(c::top());
        if (is_bottom(y)) return both(c::bottom());
        ++out_.temporal;
        auto id = fresh("s");
        auto sf = new_prop(id + ".f"), sr = new_prop(id + ".r");
        auto prev = new_prop(id + ".v"), mode = new_prop(id + ".m");
        std::optional<std::int64_t> b;
        if (tail_hi) b = *tail_hi + a;
        int m = timer_capacity(a, b, opt_.max_timers);

        initial_.push_back(c::neg(prev));
        global_.push_back(c::iff(c::next(prev), sr));
        auto steady = c::disj(c::conj({prev, sf, sr}), c::conj({c::neg(prev), c::neg(sf), c::neg(sr)}));
        auto boundary = c::neg(steady);

        std::vector<formula> starts, fires;
        for (int j = 0; j < m; ++j) {
            auto tid = id + ".t" + std::to_string(j);
            auto w = tid + ".w";
            out_.sig.clocks.push_back(w);
            out_.aux_clocks.push_back(w);
            auto start = new_prop(tid + ".st"), pend = new_prop(tid + ".p");
            auto ef = new_prop(tid + ".ef"), er = new_prop(tid + ".er");
            auto w0 = c::clock(w, cmp::eq, 0), wa = c::clock(w, cmp::eq, a), wlt = c::clock(w, cmp::lt, a);
            auto fire = c::conj(pend, wa);
            starts.push_back(start);
            fires.push_back(fire);
            global_.push_back(c::implies(start, c::conj({boundary, w0, c::next(pend), c::iff(c::next(ef), sf),
                                                         c::iff(c::next(er), sr)})));
            // a timer only fires after a genuine start, otherwise it could cut a mode run short
            initial_.push_back(c::neg(pend));
            global_.push_back(c::implies(c::next(pend), c::disj(start, c::conj(pend, wlt))));
            global_.push_back(c::implies(pend, c::conj(c::neg(w0), c::neg(c::clock(w, cmp::gt, a)))));
            global_.push_back(c::implies(c::conj(pend, wlt), c::conj({c::next(pend), c::iff(ef, c::next(ef)),
                                                                      c::iff(er, c::next(er))})));
            global_.push_back(c::implies(c::conj(fire, ef), y.f));
            global_.push_back(c::implies(c::conj(fire, er), mode));
        }
        global_.push_back(c::implies(boundary, c::disj(starts)));
        global_.push_back(c::implies(mode, y.r));
        global_.push_back(c::implies(c::conj(mode, c::next(c::neg(c::disj(fires)))),
                                     c::next(c::conj(mode, y.f))));
        return {sf, sr};
    }
};

}  // namespace

cltloc::formula pin_signal(const oracle::signal& s, const std::set<mitl::atom>& atoms, cltloc::signature& sig) {
    const std::size_t n = s.open.size();
    if (n == 0 || !s.loop || *s.loop + 1 != n || !(s.point[n] == s.open[n - 1]))
        throw encoding_error("pinned signals must end with a constant segment");
    std::vector<std::int64_t> tau;
    for (const auto& t : s.times) {
        if (t.get_den() != 1) throw encoding_error("pinned signal breakpoints must be integers");
        tau.push_back(t.get_num().get_si());
    }
    const std::string now = "$now";
    sig.clocks.push_back(now);
    for (const auto& a : atoms) {
        sig.props.push_back(enc::vocabulary::first(a));
        sig.props.push_back(enc::vocabulary::rest(a));
    }
    auto values = [&](const oracle::valuation& v, bool first) {
        std::vector<formula> fs;
        for (const auto& a : atoms) {
            auto p = c::prop(first ? enc::vocabulary::first(a) : enc::vocabulary::rest(a));
            fs.push_back(oracle::holds(a, v) ? p : c::neg(p));
        }
        return c::conj(fs);
    };
    auto at = [&](std::int64_t t) { return c::clock(now, cmp::eq, t); };
    auto before = [&](std::int64_t t) { return c::clock(now, cmp::lt, t); };
    auto after = [&](std::int64_t t) { return c::clock(now, cmp::gt, t); };
    std::vector<formula> g;
    for (std::size_t i = 1; i <= n; ++i) g.push_back(c::implies(before(tau[i]), c::next(c::neg(after(tau[i])))));
    for (std::size_t i = 0; i < n; ++i) {
        g.push_back(c::implies(at(tau[i]), values(s.point[i], true)));
        if (i + 1 < n) {
            auto inside = c::conj(after(tau[i]), before(tau[i + 1]));
            g.push_back(c::implies(inside, values(s.open[i], true)));
            g.push_back(c::implies(c::conj(c::neg(before(tau[i])), before(tau[i + 1])), values(s.open[i], false)));
        }
    }
    // the last segment never ends
    g.push_back(c::implies(after(tau[n - 1]), values(s.open[n - 1], true)));
    g.push_back(c::implies(c::neg(before(tau[n - 1])), values(s.open[n - 1], false)));
    g.push_back(c::next(c::neg(at(0))));
    return c::conj(at(0), c::always(c::conj(g)));
}

mitl_encoding encode_mitl(const mitl::formula& psi, const options& opt) {
    return builder(opt).run(psi);
}

}  // namespace tamitl::menc
