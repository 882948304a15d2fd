#include "tamitl/bench.hpp"
#include "tamitl/oracle.hpp"
#include "tamitl/textio.hpp"

#include <doctest.h>

#include <sstream>

using namespace tamitl;
using namespace tamitl::oracle;

namespace {

signal fixed() {
    signal s;
    valuation P, Q, E;
    P.props = {"p"};
    Q.props = {"q"};
    s.times = {0, 2, 5, 7};
    s.point = {P, Q, P, E};
    s.open = {P, P, E};
    s.loop = 2;
    return s;
}

std::string sat_set(const std::string& f) {
    std::ostringstream o;
    for (const auto& i : satisfaction_set(parse_mitl(f), fixed(), 20))
        o << (i.lo_closed ? "[" : "(") << i.lo << "," << i.hi << (i.hi_closed ? "]" : ")");
    return o.str();
}

}  // namespace

TEST_CASE("satisfaction sets on a fixed signal") {
    CHECK(sat_set("p") == "[0,2)(2,5]");
    CHECK(sat_set("q") == "[2,2]");
    CHECK(sat_set("!p") == "[2,2](5,20)");
    // the until is strict: the witness lies strictly in the future
    CHECK(sat_set("F[0,1] q") == "[1,2)");
    CHECK(sat_set("F(0,1] q") == "[1,2)");
    CHECK(sat_set("G[0,1] p") == "[0,1)[2,4]");
    CHECK(sat_set("p U[0,3] q") == "[0,2)");
    CHECK(sat_set("F[0,inf) q") == "[0,2)");
    CHECK(sat_set("G[0,inf) F[0,3] !p") == "[2,20)");
    CHECK(sat_set("q R[0,inf) !p") == "[5,20)");
}

TEST_CASE("pointwise evaluation folds the loop") {
    auto s = fixed();
    CHECK(eval_mitl_signal(parse_mitl("G[6,inf) !p"), s, 0));
    CHECK(eval_mitl_signal(parse_mitl("F[1,2] q"), s, 0));
    CHECK_FALSE(eval_mitl_signal(parse_mitl("F(2,3] q"), s, 0));
    CHECK(eval_mitl_signal(parse_mitl("G[0,inf) F[0,3] !p"), s, 1000));
    CHECK_FALSE(eval_mitl_signal(parse_mitl("F[0,inf) q"), s, 3));
    CHECK(s.period() == 2);
}

TEST_CASE("signals without a loop need bounded lookahead") {
    auto s = fixed();
    s.loop.reset();
    CHECK_THROWS_AS(eval_mitl_signal(parse_mitl("G[0,inf) p"), s, 0), insufficient_horizon);
}

TEST_CASE("trace validation") {
    auto in = bench::generate({bench::family::fischer, 2, "live-one"});
    trace t;
    t.steps.push_back({1, {{0, true}, {-1, true}}});
    t.steps.push_back({3, {{1, true}, {-1, true}}});  // req is left after 3 > 2
    auto v = validate_trace(in.net, t, in.cfg);
    REQUIRE(v.size() == 3);
    CHECK(v[0].step == 1);
    CHECK(v[0].clause == "time");
    CHECK(v[1].clause == "guard");
    CHECK(v[2].clause == "invariant-ie");

    trace ok;
    ok.steps.push_back({1, {{0, true}, {-1, true}}});
    ok.steps.push_back({1, {{1, true}, {-1, true}}});
    CHECK(validate_trace(in.net, ok, in.cfg).empty());

    trace lasso;
    lasso.steps.push_back({1, {{-1, true}, {-1, true}}});
    lasso.loop = 0;
    v = validate_trace(in.net, lasso, in.cfg);
    REQUIRE(v.size() == 1);
    CHECK(v[0].clause == "lasso");
}

TEST_CASE("explicit search finds the mutual exclusion delay") {
    auto in = bench::generate({bench::family::fischer, 2, "live-three"});
    auto net = materialize_location_props(in.net, mitl::collect_atomic(in.property));
    search_options o;
    o.depth = 6;
    CHECK_FALSE(search_counterexample(net, in.property, in.cfg, o).has_value());
    o.depth = 10;
    auto tr = search_counterexample(net, in.property, in.cfg, o);
    REQUIRE(tr);
    CHECK(validate_trace(net, *tr, in.cfg).empty());
    CHECK_FALSE(eval_mitl_signal(in.property, trace_to_signal(net, *tr), 0));

    auto safe = bench::generate({bench::family::fischer, 2, "live-six"});
    CHECK_FALSE(search_counterexample(materialize_location_props(safe.net, mitl::collect_atomic(safe.property)),
                                      safe.property, safe.cfg, o)
                    .has_value());
}

TEST_CASE("dumps") {
    auto d = dump_signal(fixed());
    CHECK(d.rfind("signal segments 3 loop 2\nat 0 {p}\nin (0,2) {p}\nat 2 {q}\n", 0) == 0);
    auto in = bench::generate({bench::family::fischer, 2, "live-one"});
    trace t;
    t.steps.push_back({rational(1, 2), {{0, true}, {-1, true}}});
    CHECK(dump_trace(in.net, t) ==
          "trace steps 1 loop none\n"
          "config p1.idle p2.idle id=0 x1=0 x2=0\n"
          "step 0 delay 1/2 p1:t0/ie p2:_\n"
          "config p1.req p2.idle id=0 x1=0 x2=1/2\n");
}
