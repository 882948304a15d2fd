#include "tamitl/smt.hpp"

#include <doctest.h>

using namespace tamitl;
namespace c = tamitl::cltloc;

TEST_CASE("numerals") {
    CHECK(smt::parse_number("1") == 1);
    CHECK(smt::parse_number("(- 2)") == -2);
    CHECK(smt::parse_number("1.5") == rational(3, 2));
    CHECK(smt::parse_number("0.25") == rational(1, 4));
    CHECK(smt::parse_number("0.08") == rational(2, 25));
    CHECK(smt::parse_number("(/ 1.0 3.0)") == rational(1, 3));
    CHECK(smt::parse_number("(- (/ 1 2))") == rational(-1, 2));
    CHECK(smt::parse_number("010") == 10);
}

namespace {

c::signature sig_pqx() {
    c::signature s;
    s.props = {"p", "q"};
    s.clocks = {"x"};
    return s;
}

}  // namespace

TEST_CASE("unrolling is deterministic") {
    auto f = c::conj(c::always(c::eventually(c::prop("p"))), c::until(c::prop("q"), c::clock("x", cmp::gt, 2)));
    auto a = smt::unroll_bmc(f, sig_pqx(), 6), b = smt::unroll_bmc(f, sig_pqx(), 6);
    CHECK(a.text == b.text);
    CHECK(a.k == 6);
    CHECK(a.text.find("(check-sat)") != std::string::npos);
    CHECK(smt::script::symbol("x", 3) != smt::script::symbol("x", 4));
}

TEST_CASE("solver round trip") {
    auto sig = sig_pqx();
    auto f = c::conj(c::always(c::eventually(c::prop("p"))), c::always(c::eventually(c::neg(c::prop("p")))));
    auto s = smt::unroll_bmc(f, sig, 5);
    auto r = smt::run_solver(s.text, "z3 -in -smt2", 60);
    REQUIRE(r.st == smt::solver_result::status::sat);
    auto m = smt::decode_lasso(r, s, sig);
    CHECK(c::evaluate_at(f, m, 0));
    CHECK(c::check_lasso(m, f).empty());

    auto u = smt::unroll_bmc(c::conj(c::prop("p"), c::neg(c::prop("p"))), sig, 3);
    CHECK(smt::run_solver(u.text, "z3 -in -smt2", 60).st == smt::solver_result::status::unsat);
}

TEST_CASE("a missing solver is an error, not a verdict") {
    auto s = smt::unroll_bmc(c::prop("p"), sig_pqx(), 3);
    auto r = smt::run_solver(s.text, "no-such-solver-binary", 10);
    CHECK(r.st == smt::solver_result::status::error);
    CHECK(smt::run_solver(s.text, "", 10).st == smt::solver_result::status::error);
}
