#include "tamitl/bench.hpp"
#include "tamitl/semantics.hpp"

#include <doctest.h>

using namespace tamitl;

TEST_CASE("generated networks are well formed") {
    for (auto f : {bench::family::fischer, bench::family::csma, bench::family::token_ring})
        for (int n = 2; n <= 10; ++n)
            for (const auto& pr : bench::properties(f)) {
                auto in = bench::generate({f, n, pr});
                CHECK(validate_network(in.net).empty());
                CHECK(validate_config(in.cfg).empty());
            }
}

TEST_CASE("generated sizes") {
    auto f = bench::generate({bench::family::fischer, 3, "live-one"});
    CHECK(f.net.automata.size() == 3);
    CHECK(f.net.clocks.size() == 3);
    auto c = bench::generate({bench::family::csma, 3, "live-csma"});
    CHECK(c.net.automata.size() == 4);
    CHECK(c.net.clocks.size() == 4);
    auto t = bench::generate({bench::family::token_ring, 4, "live-token"});
    CHECK(t.net.automata.size() == 5);
    CHECK(t.net.clocks.size() == 8);
    CHECK(t.net.automata.back().locations.size() == 8);
}

TEST_CASE("property texts") {
    CHECK(bench::property_text(bench::family::fischer, 2, "live-two") == "G[0,inf) (p1.req -> F[0,3] p1.wait)");
    CHECK(bench::property_text(bench::family::fischer, 3, "live-six") ==
          "G[0,inf) !((p1.cs && p2.cs) || (p1.cs && p3.cs) || (p2.cs && p3.cs))");
    CHECK(bench::property_text(bench::family::token_ring, 2, "live-token") ==
          "G(0,inf) !((ST1.zsync || ST1.zasync || ST1.ysync || ST1.yasync) && "
          "(ST2.zsync || ST2.zasync || ST2.ysync || ST2.yasync))");
    CHECK_THROWS_AS(bench::property_text(bench::family::csma, 2, "live-one"), std::invalid_argument);
    CHECK_THROWS_AS(bench::generate({bench::family::csma, 1, "live-csma"}), std::invalid_argument);
    CHECK(bench::parse_family("token-ring") == bench::family::token_ring);
    CHECK_FALSE(bench::parse_family("ring").has_value());
}
