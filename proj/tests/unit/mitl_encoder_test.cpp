#include "tamitl/mitl_encoder.hpp"
#include "tamitl/smt.hpp"
#include "tamitl/textio.hpp"

#include <doctest.h>

using namespace tamitl;

TEST_CASE("timer capacity") {
    CHECK(menc::timer_capacity(0, 3, 12) == 4);
    CHECK(menc::timer_capacity(1, 3, 12) == 6);
    CHECK(menc::timer_capacity(2, 5, 12) == 6);
    CHECK(menc::timer_capacity(1, 2, 12) == 6);
    CHECK(menc::timer_capacity(9, 10, 12) == 12);
    CHECK(menc::timer_capacity(3, std::nullopt, 12) == 4);
    CHECK(menc::timer_capacity(9, 10, 5) == 5);
}

TEST_CASE("rejected intervals") {
    CHECK_THROWS_WITH_AS(menc::encode_mitl(parse_mitl("F[2,2] p")), "punctual interval [2,2]", menc::encoding_error);
    CHECK_THROWS_WITH_AS(menc::encode_mitl(parse_mitl("F[0,20000] p")), "interval endpoint 20000 exceeds horizon 10000",
                         menc::encoding_error);
    CHECK_NOTHROW(menc::encode_mitl(parse_mitl("F[0,20000] p"), {30000, 12}));
}

namespace {

// p on [0,2), q alone at 2, p on (2,5], nothing afterwards
oracle::signal fixed() {
    oracle::signal s;
    oracle::valuation P, Q, E;
    P.props = {"p"};
    Q.props = {"q"};
    s.times = {0, 2, 5, 7};
    s.point = {P, Q, P, E};
    s.open = {P, P, E};
    s.loop = 2;
    return s;
}

bool solver_says(const std::string& text) {
    auto f = parse_mitl(text);
    auto me = menc::encode_mitl(f);
    auto sig = me.sig;
    auto phi = cltloc::conj(me.formula, menc::pin_signal(fixed(), {{"p"}, {"q"}}, sig));
    auto s = smt::unroll_bmc(phi, sig, 14);
    auto r = smt::run_solver(s.text, "z3 -in -smt2 smt.arith.solver=2", 120);
    REQUIRE((r.st == smt::solver_result::status::sat || r.st == smt::solver_result::status::unsat));
    return r.st == smt::solver_result::status::sat;
}

}  // namespace

TEST_CASE("encoded formulas agree with hand evaluation on a pinned signal") {
    CHECK(solver_says("p"));
    CHECK_FALSE(solver_says("q"));
    CHECK(solver_says("F[1,2] q"));
    CHECK_FALSE(solver_says("F(2,3] q"));
    CHECK(solver_says("p U[0,3] q"));
    CHECK_FALSE(solver_says("p U[3,4] q"));
    CHECK(solver_says("G[6,inf) !p"));
    CHECK_FALSE(solver_says("G[0,1] q"));
    CHECK(solver_says("F[4,inf) G[0,inf) (!p && !q)"));
}
