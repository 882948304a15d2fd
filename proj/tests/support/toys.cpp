#include "toys.hpp"

#include "tamitl/textio.hpp"

#include <stdexcept>

namespace tamitl::testing {

const std::vector<toy>& toys() {
    static const std::vector<toy> all{
        {"gate", R"(clock x;
int n in [0,2] = 0;
automaton A {
  loc q0;
  loc q1 { inv: x <= 3; }
  trans q0 -> q1 { guard: x > 1; do: n := 2; reset: x; }
  trans q1 -> q0 { guard: x >= 2; do: n := 0; }
}
)"},
        {"handshake", R"(clock x, y;
automaton S {
  loc s0;
  loc s1 { inv: x < 2; }
  trans s0 -> s1 { sync: a!; reset: x; }
  trans s1 -> s0 { guard: x > 0; sync: b?; }
}
automaton R {
  loc r0;
  loc r1;
  trans r0 -> r1 { sync: a?; reset: y; }
  trans r1 -> r0 { guard: y >= 1; sync: b!; }
}
)"},
        {"broadcast", R"(clock x;
automaton B {
  loc b0 { inv: x <= 2; }
  trans b0 -> b0 { guard: x >= 1; sync: go#; reset: x; }
}
automaton C {
  loc c0;
  loc c1;
  trans c0 -> c1 { sync: go@; }
  trans c1 -> c0 { sync: go@; }
}
automaton D {
  loc d0;
  loc d1;
  trans d0 -> d1 { sync: go@; }
  trans d1 -> d0 { }
}
)"},
        {"shared", R"(clock x;
int v in [0,1] = 0;
automaton W {
  loc w0 { inv: x < 1; }
  trans w0 -> w0 { do: v := 1 - v; reset: x; }
}
automaton U {
  loc u0;
  loc u1;
  trans u0 -> u1 { guard: v == 1; }
  trans u1 -> u0 { guard: v == 0; }
}
)"},
        {"fanout", R"(clock x, z;
automaton M {
  loc m0;
  loc m1 { inv: x <= 1; }
  trans m0 -> m1 { sync: e&; reset: x; }
  trans m1 -> m0 { guard: x == 1; }
}
automaton N {
  loc n0;
  loc n1 { inv: z < 3; }
  trans n0 -> n1 { sync: e*; reset: z; }
  trans n1 -> n0 { guard: z > 1; }
}
)"},
    };
    return all;
}

network toy_network(const std::string& name) {
    for (const auto& t : toys())
        if (t.name == name) return parse_network(t.text, name);
    throw std::invalid_argument("no toy named " + name);
}

std::vector<semantics_config> toy_configs() {
    std::vector<semantics_config> out;
    semantics_config c;
    c.variant = encoding_variant::general;
    c.edges = edge_restriction::unrestricted;
    out.push_back(c);
    c.edges = edge_restriction::open_closed;
    c.live = {liveness::weak_transition};
    out.push_back(c);
    c.edges = edge_restriction::closed_open;
    c.live = {liveness::strong_guard};
    out.push_back(c);
    c.variant = encoding_variant::lorc;
    c.live = {liveness::weak_transition, liveness::weak_guard};
    out.push_back(c);
    return out;
}

namespace {

int pick(std::mt19937& rng, int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); }

bool valid(const network& n, const oracle::trace& tr, const semantics_config& cfg) {
    return oracle::validate_trace(n, tr, cfg).empty();
}

}  // namespace

std::optional<oracle::trace> random_lasso(const network& n, const semantics_config& cfg, std::mt19937& rng,
                                          std::size_t max_steps, int attempts) {
    const std::vector<rational> delays{rational(1, 2), rational(1), rational(3, 2), rational(2), rational(3)};
    for (int a = 0; a < attempts; ++a) {
        oracle::trace tr;
        while (tr.steps.size() < max_steps) {
            auto cs = oracle::replay(n, tr);
            const auto& now = cs.back();
            bool extended = false;
            for (int tries = 0; tries < 40 && !extended; ++tries) {
                oracle::step s;
                s.delay = delays[static_cast<std::size_t>(pick(rng, static_cast<int>(delays.size())))];
                for (std::size_t k = 0; k < n.automata.size(); ++k) {
                    oracle::move mv;
                    std::vector<int> out;
                    const auto& ts = n.automata[k].transitions;
                    for (std::size_t t = 0; t < ts.size(); ++t)
                        if (ts[t].source == now.loc[k]) out.push_back(static_cast<int>(t));
                    if (!out.empty() && pick(rng, 2))
                        mv.transition = out[static_cast<std::size_t>(pick(rng, static_cast<int>(out.size())))];
                    if (cfg.edges == edge_restriction::open_closed)
                        mv.closed_open = false;
                    else if (cfg.edges == edge_restriction::unrestricted)
                        mv.closed_open = pick(rng, 2) == 0;
                    s.moves.push_back(mv);
                }
                tr.steps.push_back(s);
                if (valid(n, tr, cfg))
                    extended = true;
                else
                    tr.steps.pop_back();
            }
            if (!extended) break;
            cs = oracle::replay(n, tr);
            for (std::size_t L = 0; L + 1 < cs.size(); ++L) {
                if (!oracle::equivalent(n, cs.back(), cs[L])) continue;
                tr.loop = L;
                if (valid(n, tr, cfg)) return tr;
                tr.loop.reset();
            }
        }
    }
    return std::nullopt;
}

namespace {

mitl::interval random_interval(std::mt19937& rng) {
    mitl::interval i;
    i.lo = pick(rng, 4);
    i.lo_open = i.lo > 0 && pick(rng, 2);
    if (pick(rng, 4) == 0) return i;
    i.hi = std::min<std::int64_t>(4, i.lo + 1 + pick(rng, static_cast<int>(4 - i.lo)));
    i.hi_open = pick(rng, 2);
    return i;
}

}  // namespace

mitl::formula random_formula(std::mt19937& rng, const std::vector<std::string>& atoms, int depth, int size) {
    if (size <= 1 || pick(rng, 3) == 0) {
        auto a = mitl::prop(atoms[static_cast<std::size_t>(pick(rng, static_cast<int>(atoms.size())))]);
        return pick(rng, 3) == 0 ? mitl::neg(a) : a;
    }
    auto sub = [&](int d, int s) { return random_formula(rng, atoms, d, s); };
    switch (pick(rng, depth > 0 ? 8 : 3)) {
        case 0: return mitl::neg(sub(depth, size - 1));
        case 1: return mitl::conj(sub(depth, size / 2), sub(depth, size / 2));
        case 2: return mitl::disj(sub(depth, size / 2), sub(depth, size / 2));
        case 3:
        case 4: return mitl::eventually(sub(depth - 1, size - 1), random_interval(rng));
        case 5: return mitl::always(sub(depth - 1, size - 1), random_interval(rng));
        case 6: return mitl::until(sub(depth - 1, size / 2), sub(depth - 1, size / 2), random_interval(rng));
        default: return mitl::release(sub(depth - 1, size / 2), sub(depth - 1, size / 2), random_interval(rng));
    }
}

oracle::signal random_signal(std::mt19937& rng) {
    oracle::signal s;
    const int n = 1 + pick(rng, 4);
    auto val = [&] {
        oracle::valuation v;
        if (pick(rng, 2)) v.props.insert("p");
        if (pick(rng, 2)) v.props.insert("q");
        return v;
    };
    std::int64_t t = 0;
    s.times.push_back(0);
    for (int i = 0; i < n; ++i) s.times.push_back(t += 1 + pick(rng, 2));
    for (int i = 0; i <= n; ++i) s.point.push_back(val());
    for (int i = 0; i < n; ++i) s.open.push_back(val());
    s.point[static_cast<std::size_t>(n)] = s.open[static_cast<std::size_t>(n - 1)];
    s.loop = static_cast<std::size_t>(n - 1);
    return s;
}

}  // namespace tamitl::testing
