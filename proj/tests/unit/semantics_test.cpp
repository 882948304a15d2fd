#include "tamitl/semantics.hpp"
#include "tamitl/textio.hpp"

#include <doctest.h>

using namespace tamitl;

TEST_CASE("strong and weak literal evaluation") {
    clock_literal lt2{{"x", cmp::lt, 2}, false}, gt2{{"x", cmp::gt, 2}, false}, eq2{{"x", cmp::eq, 2}, false};
    CHECK_FALSE(eval_literal(lt2, 2, sat_mode::strong));
    CHECK(eval_literal(lt2, 2, sat_mode::weak));
    CHECK(eval_literal(gt2, 2, sat_mode::weak));
    // equalities never hold weakly
    CHECK_FALSE(eval_literal(eq2, 2, sat_mode::weak));
    CHECK(eval_literal(eq2, 2, sat_mode::strong));
    CHECK(eval_literal(lt2, rational(3, 2), sat_mode::strong));
}

TEST_CASE("assignments") {
    auto n = parse_network("int n in [0,2] = 1;\nint m in [0,2] = 0;\nautomaton A { loc a; }\n");
    var_valuation v{{"n", 1}, {"m", 0}};
    CHECK(std::holds_alternative<domain_exit>(apply_assignments({{"n", int_expr::constant(5)}}, v, &n)));
    CHECK(std::holds_alternative<inconsistent_assignment>(
        apply_assignments({{"n", int_expr::constant(1)}, {"n", int_expr::constant(2)}}, v)));
    // right hand sides read the old valuation
    auto r = apply_assignments({{"n", int_expr::variable("m")}, {"m", int_expr::variable("n")}}, v);
    auto w = std::get<var_valuation>(r);
    CHECK(w["n"] == 0);
    CHECK(w["m"] == 1);
}

TEST_CASE("guard normalization gives disjoint cells") {
    auto g = clock_constraint::make_not(clock_constraint::make_and(
        {clock_constraint::make_atom({"x", cmp::gt, 1}), clock_constraint::make_atom({"x", cmp::lt, 3})}));
    auto cells = normalize_guard(g);
    REQUIRE(cells.size() == 2);
    int hits = 0;
    for (auto v : {rational(0), rational(1), rational(2), rational(3), rational(4)}) {
        int inside = 0;
        for (const auto& c : cells) inside += eval_clock_constraint(c, {{"x", v}}, sat_mode::strong);
        CHECK(inside <= 1);
        CHECK((inside == 1) == eval_clock_constraint(g, {{"x", v}}));
        hits += inside;
    }
    CHECK(hits == 4);
}

TEST_CASE("config validation") {
    semantics_config c;
    c.variant = encoding_variant::lorc;
    c.edges = edge_restriction::open_closed;
    auto d = validate_config(c);
    REQUIRE(d.size() == 1);
    CHECK(d[0].message == "lorc encoding requires closed-open edges");
    c.edges = edge_restriction::closed_open;
    CHECK(validate_config(c).empty());
    CHECK(parse_liveness("weak-guard") == liveness::weak_guard);
    CHECK_FALSE(parse_edges("sideways").has_value());
}

TEST_CASE("network helpers add automata and clocks") {
    auto n = parse_network("automaton A { loc a; }\n");
    CHECK(n.clocks.empty());
    CHECK(with_some_clock(n).clocks.size() == 1);
    auto z = with_non_zeno_guard(n);
    CHECK(z.automata.size() == 2);
    CHECK(z.clocks.size() == 1);
    CHECK(validate_network(z).empty());
}
