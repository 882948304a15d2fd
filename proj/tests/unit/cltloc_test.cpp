#include "tamitl/cltloc.hpp"

#include <doctest.h>

#include <functional>
#include <random>

using namespace tamitl;
namespace c = tamitl::cltloc;

namespace {

// positions 0..3, position 3 repeats position 1; p holds at 1, x is reset at 2
c::lasso small() {
    c::lasso m;
    m.k = 3;
    m.loop = 1;
    m.props = {{}, {"p"}, {}, {"p"}};
    m.clocks = {{{"x", 0}}, {{"x", 1}}, {{"x", 0}}, {{"x", 1}}};
    m.ints.resize(4);
    m.delays = {1, 1, 1};
    return m;
}

}  // namespace

TEST_CASE("formulas are interned") {
    auto a = c::conj(c::prop("p"), c::clock("x", cmp::lt, 1));
    auto b = c::conj(c::prop("p"), c::clock("x", cmp::lt, 1));
    CHECK(a == b);
    CHECK(c::neg(c::neg(c::prop("p"))) == c::prop("p"));
    CHECK(c::conj(c::top(), c::prop("p")) == c::prop("p"));
}

TEST_CASE("lasso evaluation") {
    auto m = small();
    auto p = c::prop("p"), q = c::prop("q");
    auto x1 = c::clock("x", cmp::lt, 1);
    CHECK_FALSE(c::evaluate_at(p, m, 0));
    CHECK(c::evaluate_at(p, m, 1));
    CHECK(c::evaluate_at(c::next(p), m, 0));
    CHECK(c::evaluate_at(c::eventually(p), m, 0));
    CHECK(c::evaluate_at(c::always(c::eventually(p)), m, 0));
    CHECK_FALSE(c::evaluate_at(c::always(p), m, 0));
    CHECK_FALSE(c::evaluate_at(c::until(p, q), m, 0));
    CHECK(c::evaluate_at(c::release(q, c::top()), m, 0));
    CHECK(c::evaluate_at(c::always(c::eventually(x1)), m, 0));
    CHECK(c::evaluate_at(c::always(c::disj(x1, p)), m, 0));
    CHECK(m.time_at(3) == 3);

    // the memoized evaluator and the naive unrolling agree everywhere
    for (auto f : {c::always(c::eventually(p)), c::until(c::neg(p), c::conj(p, c::next(x1))),
                   c::release(p, c::disj(x1, p)), c::next(c::next(c::neg(x1)))}) {
        auto all = c::evaluate_all(f, m);
        for (int i = 0; i <= m.k; ++i) CHECK(all[static_cast<std::size_t>(i)] == c::evaluate_unrolled(f, m, i));
    }
}

TEST_CASE("lasso consistency checks") {
    auto m = small();
    auto f = c::always(c::eventually(c::clock("x", cmp::lt, 1)));
    CHECK(c::check_lasso(m, f).empty());
    m.clocks[2]["x"] = 5;  // neither progress nor reset
    CHECK_FALSE(c::check_lasso(m, f).empty());
    m = small();
    m.delays[1] = 0;
    CHECK_FALSE(c::check_lasso(m, f).empty());
}

TEST_CASE("undeclared symbols are reported") {
    auto m = small();
    CHECK_THROWS_AS(c::evaluate_at(c::clock("y", cmp::lt, 1), m, 0), c::undeclared_symbol);
}

TEST_CASE("memoized and naive evaluation agree on random lassos") {
    std::mt19937 rng(17);
    auto pick = [&](int n) { return std::uniform_int_distribution<int>(0, n - 1)(rng); };
    std::function<c::formula(int)> gen = [&](int d) -> c::formula {
        if (d == 0 || pick(4) == 0) return pick(2) ? c::prop("p") : c::prop("q");
        switch (pick(6)) {
            case 0: return c::neg(gen(d - 1));
            case 1: return c::conj(gen(d - 1), gen(d - 1));
            case 2: return c::disj(gen(d - 1), gen(d - 1));
            case 3: return c::next(gen(d - 1));
            case 4: return c::until(gen(d - 1), gen(d - 1));
            default: return c::release(gen(d - 1), gen(d - 1));
        }
    };
    for (int it = 0; it < 300; ++it) {
        c::lasso m;
        m.k = 2 + pick(4);
        m.loop = 1 + pick(m.k - 1);
        m.props.resize(static_cast<std::size_t>(m.k) + 1);
        for (int i = 0; i < m.k; ++i) {
            if (pick(2)) m.props[static_cast<std::size_t>(i)].insert("p");
            if (pick(2)) m.props[static_cast<std::size_t>(i)].insert("q");
        }
        m.props.back() = m.props[static_cast<std::size_t>(m.loop)];
        m.clocks.resize(m.props.size());
        m.ints.resize(m.props.size());
        m.delays.assign(static_cast<std::size_t>(m.k), 1);
        auto f = gen(4);
        auto all = c::evaluate_all(f, m);
        for (int i = 0; i <= m.k; ++i) REQUIRE(all[static_cast<std::size_t>(i)] == c::evaluate_unrolled(f, m, i));
    }
}
