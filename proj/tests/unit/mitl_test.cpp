#include "tamitl/mitl.hpp"
#include "tamitl/textio.hpp"

#include <doctest.h>

using namespace tamitl;

namespace {

std::string reprint(const std::string& s) { return mitl::print(parse_mitl(s)); }

std::string first_error(const std::string& s) {
    try {
        parse_mitl(s);
    } catch (const parse_error& e) {
        return to_string(e.messages().front().span) + ": " + e.messages().front().message;
    }
    return "";
}

}  // namespace

TEST_CASE("mitl print and parse") {
    CHECK(reprint("G[0,inf) (p -> F[0,3] q)") == "G[0,inf) (p -> F[0,3] q)");
    CHECK(reprint("p U(1,2] !q") == "p U(1,2] !q");
    CHECK(reprint("F(0,3) A.b && n < 3") == "F(0,3) A.b && (n < 3)");
    CHECK(reprint("true || false") == "true || false");

    // printing is a fixpoint of parsing
    for (const char* s : {"G[0,inf) (p -> F[0,3] q)", "(p R[2,5) q) || !(n == 2)", "F(0,inf) G[1,4) (a U b)"}) {
        auto once = reprint(s);
        CHECK(reprint(once) == once);
    }
}

TEST_CASE("mitl parse errors carry positions") {
    CHECK(first_error("G[3,2] p") == "<input>:1:2: empty interval [3,2]");
    CHECK(first_error("p &&") == "<input>:1:5: expected identifier but found end of input");
    CHECK(first_error("p") == "");
}

TEST_CASE("mitl normal form, depth and constants") {
    auto f = parse_mitl("G[0,inf) (p -> F[0,3] q)");
    CHECK(mitl::print(mitl::to_positive_normal_form(f)) == "false R[0,inf) (!p || (true U[0,3] q))");
    CHECK(mitl::depth(f) == 2);
    CHECK(mitl::max_constant(f) == 3);
    CHECK(mitl::max_constant(parse_mitl("p R[2,5) q")) == 5);
    CHECK(mitl::depth(parse_mitl("p && !q")) == 0);

    auto g = parse_mitl("!(p U[1,2) (n < 3))");
    auto atoms = mitl::collect_atomic(g);
    REQUIRE(atoms.size() == 2);
    CHECK(atoms.begin()->arithmetic);
    CHECK(mitl::to_string(*atoms.begin()) == "n < 3");
}

TEST_CASE("mitl derived operators desugar to until") {
    auto d = mitl::desugar(parse_mitl("G[1,2] p"));
    CHECK(mitl::print(d) == "!(true U[1,2] !p)");
    CHECK(mitl::equal(mitl::desugar(parse_mitl("F[0,inf) p")), mitl::until(mitl::top(), mitl::prop("p"))));
}
