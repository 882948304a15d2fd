#include "tamitl/bmc.hpp"

#include "tamitl/semantics.hpp"
#include "tamitl/textio.hpp"

#include <chrono>

namespace tamitl::bmc {

namespace c = cltloc;

std::string to_string(outcome o) {
    switch (o) {
        case outcome::holds: return "holds";
        case outcome::violated: return "violated";
        case outcome::inconclusive: return "inconclusive";
    }
    return "?";
}

static network prepared_network(const network& n, const std::set<mitl::atom>& atoms, const semantics_config& cfg) {
    network r = materialize_location_props(n, atoms);
    if (cfg.non_zeno_guard) r = with_non_zeno_guard(r);
    return with_some_clock(r);
}

problem prepare(const network& n, const mitl::formula& psi, const semantics_config& cfg, const menc::options& mopt) {
    problem p;
    auto atoms = mitl::collect_atomic(psi);
    p.net = prepared_network(n, atoms, cfg);
    p.cfg = cfg;
    p.property = psi;
    p.system = enc::encode_system(p.net, cfg, atoms);
    p.negated = menc::encode_mitl(mitl::neg(psi), mopt);
    p.formula = c::conj(p.system.formula, p.negated.formula);
    p.sig = p.system.sig;
    p.sig.merge(p.negated.sig);
    return p;
}

problem prepare_system(const network& n, const semantics_config& cfg) {
    problem p;
    p.net = prepared_network(n, {}, cfg);
    p.cfg = cfg;
    p.property = mitl::top();
    p.system = enc::encode_system(p.net, cfg, {});
    p.formula = p.system.formula;
    p.sig = p.system.sig;
    return p;
}

smt::script unroll(const problem& p, int k) {
    if (k < 2) throw std::invalid_argument("bound must be at least 2");
    return smt::unroll_bmc(p.formula, p.sig, k);
}

oracle::trace decode_trace(const problem& p, const cltloc::lasso& m) {
    const auto& v = p.system.vocab;
    const bool lorc = p.cfg.variant == encoding_variant::lorc;
    oracle::trace tr;
    for (int h = 0; h < m.k; ++h) {
        oracle::step s;
        s.delay = m.delays.at(static_cast<std::size_t>(h));
        const auto& ints = m.ints.at(static_cast<std::size_t>(h));
        const auto& next = m.props.at(static_cast<std::size_t>(h + 1));
        for (std::size_t k = 0; k < p.net.automata.size(); ++k) {
            oracle::move mv;
            mv.transition = static_cast<int>(ints.at(v.trans[k]));
            mv.closed_open = lorc || next.count(v.edge[k]) > 0;
            s.moves.push_back(mv);
        }
        tr.steps.push_back(std::move(s));
    }
    tr.loop = static_cast<std::size_t>(m.loop);
    return tr;
}

namespace {

struct pair_state {
    rational v[2] = {0, 1};
    int active = 0;
    int flip_to = -1;
};

bool idle_edge_default(const semantics_config& cfg) { return cfg.edges != edge_restriction::open_closed; }

}  // namespace

cltloc::lasso encode_trace(const problem& p, const oracle::trace& tr) {
    if (!tr.loop || *tr.loop >= tr.steps.size()) throw std::invalid_argument("encode_trace needs a lasso trace");
    const auto& v = p.system.vocab;
    const auto& net = p.net;
    const bool lorc = p.cfg.variant == encoding_variant::lorc;
    const std::size_t K = net.automata.size();

    const std::size_t L = *tr.loop, body = tr.steps.size() - L;
    oracle::trace flat;
    flat.steps.assign(tr.steps.begin(), tr.steps.end());
    for (int r = 0; r < 2; ++r) flat.steps.insert(flat.steps.end(), tr.steps.begin() + static_cast<long>(L), tr.steps.end());
    auto cs = oracle::replay(net, flat);

    cltloc::lasso m;
    m.k = static_cast<int>(flat.steps.size());
    m.loop = static_cast<int>(L + body);
    const auto n = static_cast<std::size_t>(m.k) + 1;
    m.props.resize(n);
    m.clocks.resize(n);
    m.ints.resize(n);

    std::map<std::string, pair_state> pairs;
    for (const auto& x : net.clocks) pairs[x] = {};

    auto label_at = [&](const std::vector<int>& loc, std::size_t k, const std::string& name) {
        const auto& ls = net.automata[k].locations[static_cast<std::size_t>(loc[k])].labels;
        return std::find(ls.begin(), ls.end(), name) != ls.end();
    };

    for (std::size_t i = 0; i < n; ++i) {
        const auto& C = cs[i];
        auto& ints = m.ints[i];
        auto& props = m.props[i];
        for (std::size_t k = 0; k < K; ++k) {
            ints[v.loc[k]] = C.loc[k];
            const auto& moves = flat.steps[i < flat.steps.size() ? i : static_cast<std::size_t>(m.loop)].moves;
            ints[v.trans[k]] = moves[k].transition;
        }
        for (const auto& [name, val] : C.vars) ints[name] = val;

        // clock copies: a reset zeroes the idle copy now and hands it the selector next position
        const oracle::step* prev = i > 0 ? &flat.steps[i - 1] : nullptr;
        for (auto& [x, st] : pairs) {
            if (st.flip_to >= 0) {
                st.active = st.flip_to;
                st.flip_to = -1;
            }
            if (prev) {
                st.v[0] += prev->delay;
                st.v[1] += prev->delay;
                bool reset = false;
                for (std::size_t k = 0; k < K; ++k) {
                    const auto& mv = prev->moves[k];
                    if (mv.idle()) continue;
                    const auto& rs = net.automata[k].transitions[static_cast<std::size_t>(mv.transition)].resets;
                    if (std::find(rs.begin(), rs.end(), x) != rs.end()) reset = true;
                }
                if (reset) {
                    st.v[1 - st.active] = 0;
                    st.flip_to = 1 - st.active;
                }
            }
            const auto& cp = v.clocks.at(x);
            m.clocks[i][cp.copy0] = st.v[0];
            m.clocks[i][cp.copy1] = st.v[1];
            ints[cp.active] = st.active;
        }

        if (!lorc)
            for (std::size_t k = 0; k < K; ++k) {
                bool e = idle_edge_default(p.cfg);
                if (prev && !prev->moves[k].idle()) e = prev->moves[k].closed_open;
                if (e) props.insert(v.edge[k]);
            }

        auto now = oracle::valuation_of(net, C.loc, C.vars);
        for (const auto& a : v.atoms) {
            if (oracle::holds(a, now)) props.insert(enc::vocabulary::rest(a));
            bool first;
            if (!prev) {
                first = oracle::holds(a, now);
            } else {
                const auto& B = cs[i - 1];
                auto before = oracle::valuation_of(net, B.loc, B.vars);
                if (lorc) {
                    first = oracle::holds(a, before);
                } else if (a.arithmetic) {
                    bool any = false, keep = false, take = false;
                    for (std::size_t k = 0; k < K; ++k) {
                        const auto& mv = prev->moves[k];
                        if (mv.idle()) continue;
                        const auto& t = net.automata[k].transitions[static_cast<std::size_t>(mv.transition)];
                        if (!t.updated_vars().count(a.name)) continue;
                        any = true;
                        (mv.closed_open ? keep : take) = true;
                    }
                    first = (oracle::holds(a, before) && (!any || keep)) || (oracle::holds(a, now) && take);
                } else {
                    first = false;
                    for (std::size_t k = 0; k < K; ++k) {
                        const auto& mv = prev->moves[k];
                        if (label_at(B.loc, k, a.name) && (mv.idle() || mv.closed_open)) first = true;
                        if (label_at(C.loc, k, a.name) && !mv.idle() && !mv.closed_open) first = true;
                    }
                }
            }
            if (first) props.insert(enc::vocabulary::first(a));
        }
    }
    for (const auto& s : flat.steps) m.delays.push_back(s.delay);
    return m;
}

std::vector<enc::clock_pair> all_pairs(const problem& p) {
    auto r = enc::clock_pairs(p.system.vocab);
    for (const auto& x : p.negated.aux_clocks)
        if (x.size() > 2 && x.compare(x.size() - 2, 2, "$0") == 0)
            r.push_back(enc::vocabulary::pair_for(x.substr(0, x.size() - 2)));
    return r;
}

std::vector<std::string> check_clock_pairs(const std::vector<enc::clock_pair>& pairs, const cltloc::lasso& m) {
    std::vector<std::string> out;
    std::vector<int> order;
    for (int i = 0; i < m.k; ++i) order.push_back(i);
    for (int i = m.loop; i < m.k; ++i) order.push_back(i);
    for (const auto& p : pairs) {
        int last = -1;
        for (std::size_t o = 0; o < order.size(); ++o) {
            auto i = static_cast<std::size_t>(order[o]);
            bool r0 = m.clocks[i].at(p.copy0) == 0, r1 = m.clocks[i].at(p.copy1) == 0;
            auto active = m.ints[i].at(p.active);
            auto where = p.copy0 + " at " + std::to_string(i);
            if (r0 && r1) out.push_back(where + ": both copies reset");
            if (o == 0) {
                if (!r0 || active != 0) out.push_back(where + ": copy 0 must start reset and active");
                last = 0;
                continue;
            }
            if (active != last) out.push_back(where + ": selector does not name the copy reset last");
            if (r0 || r1) {
                int j = r0 ? 0 : 1;
                if (j == last) out.push_back(where + ": the active copy was reset twice in a row");
                last = j;
            }
        }
    }
    return out;
}

verdict check(const problem& p, const smt::script& s, const solver_options& so) {
    auto t0 = std::chrono::steady_clock::now();
    verdict out;
    out.bound = s.k;
    out.conjuncts = c::conjunct_count(p.formula);
    out.smt_bytes = s.text.size();
    auto r = smt::run_solver(s.text, so.command, so.timeout_s);
    out.solver_ms = r.wall_ms;
    using st = smt::solver_result::status;
    switch (r.st) {
        case st::unsat: out.result = outcome::holds; break;
        case st::sat: {
            try {
                auto m = smt::decode_lasso(r, s, p.sig);
                auto tr = decode_trace(p, m);
                auto bad = oracle::validate_trace(p.net, tr, p.cfg);
                auto sig = oracle::trace_to_signal(p.net, tr);
                out.model = std::move(m);
                out.witness = tr;
                out.signal = sig;
                if (!bad.empty()) {
                    out.reason = "uncertified witness: " + bad.front().clause + " at step " +
                                 std::to_string(bad.front().step) + ": " + bad.front().message;
                } else if (oracle::eval_mitl_signal(p.property, sig, 0)) {
                    out.reason = "uncertified witness: the decoded signal satisfies the property";
                } else {
                    out.result = outcome::violated;
                }
            } catch (const std::exception& e) {
                out.reason = std::string("uncertified witness: ") + e.what();
            }
            break;
        }
        default: out.reason = smt::to_string(r.st) + (r.reason.empty() ? "" : ": " + r.reason);
    }
    out.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return out;
}

verdict verify(const network& n, const mitl::formula& psi, const semantics_config& cfg, int k,
               const solver_options& so, const menc::options& mopt) {
    auto t0 = std::chrono::steady_clock::now();
    auto p = prepare(n, psi, cfg, mopt);
    auto s = unroll(p, k);
    auto v = check(p, s, so);
    v.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return v;
}

}  // namespace tamitl::bmc
