#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace tamitl {

using rational = mpq_class;

enum class cmp { lt, eq, gt };

bool compare(cmp op, const mpq_class& a, const mpq_class& b);
bool compare(cmp op, std::int64_t a, std::int64_t b);
const char* cmp_text(cmp op);

struct declaration_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// clock constraints

struct clock_atom {
    std::string clock;
    cmp op = cmp::lt;
    std::int64_t bound = 0;
    bool operator==(const clock_atom&) const = default;
    auto operator<=>(const clock_atom&) const = default;
};

// x ~ d or !(x ~ d)
struct clock_literal {
    clock_atom atom;
    bool negated = false;
    bool operator==(const clock_literal&) const = default;
    auto operator<=>(const clock_literal&) const = default;
};

using convex_guard = std::vector<clock_literal>;

struct clock_constraint {
    enum class kind { truth, atom, negation, conjunction, disjunction };
    kind k = kind::truth;
    clock_atom a;
    std::vector<clock_constraint> kids;

    static clock_constraint top() { return {}; }
    static clock_constraint make_atom(clock_atom at);
    static clock_constraint make_not(clock_constraint c);
    static clock_constraint make_and(std::vector<clock_constraint> cs);
    static clock_constraint make_or(std::vector<clock_constraint> cs);
    static clock_constraint from_convex(const convex_guard& g);
};

// integer expressions and variable constraints

struct int_expr {
    enum class kind { constant, variable, add, sub, neg, mul };
    kind k = kind::constant;
    std::int64_t value = 0;
    std::string var;
    std::vector<int_expr> kids;

    static int_expr constant(std::int64_t v);
    static int_expr variable(std::string n);
    static int_expr binary(kind k, int_expr a, int_expr b);
    static int_expr negate(int_expr a);
};

struct var_constraint {
    enum class kind { truth, atom, negation, conjunction, disjunction };
    kind k = kind::truth;
    cmp op = cmp::lt;
    int_expr lhs, rhs;
    std::vector<var_constraint> kids;

    static var_constraint top() { return {}; }
    static var_constraint make_atom(int_expr l, cmp o, int_expr r);
    static var_constraint make_not(var_constraint c);
    static var_constraint make_and(std::vector<var_constraint> cs);
    static var_constraint make_or(std::vector<var_constraint> cs);
    bool is_true() const { return k == kind::truth; }
};

struct assignment {
    std::string target;
    int_expr value;
};

// actions

enum class sync_kind { none, send, recv, bsend, brecv, osend, orecv };

char sync_symbol(sync_kind s);
bool is_sender(sync_kind s);

struct action {
    std::string event;          // empty for tau
    sync_kind sync = sync_kind::none;
    bool is_tau() const { return sync == sync_kind::none; }
    bool operator==(const action&) const = default;
};

struct transition {
    int source = 0;
    int target = 0;
    convex_guard guard;
    var_constraint var_guard;
    action act;
    std::vector<std::string> resets;
    std::vector<assignment> updates;
    std::string name;  // optional user name, used in dumps

    std::set<std::string> updated_vars() const;
};

struct location {
    std::string name;
    convex_guard invariant;
    std::vector<std::string> labels;
};

struct automaton {
    std::string name;
    std::vector<location> locations;  // index 0 is initial
    std::vector<transition> transitions;

    int location_index(const std::string& n) const;
};

struct var_decl {
    std::string name;
    std::int64_t lo = 0;
    std::int64_t hi = 0;
    std::int64_t init = 0;
};

struct network {
    std::vector<std::string> clocks;
    std::vector<var_decl> vars;
    std::vector<automaton> automata;

    int clock_index(const std::string& n) const;
    int var_index(const std::string& n) const;
    int automaton_index(const std::string& n) const;
    std::set<std::string> propositions() const;
    std::set<std::string> events() const;
    // maximal constant compared against each clock, over guards and invariants
    std::int64_t max_constant(const std::string& clock) const;
};

using clock_valuation = std::map<std::string, rational>;
using var_valuation = std::map<std::string, std::int64_t>;

// semantic configuration

enum class liveness { strong_transition, weak_transition, strong_guard, weak_guard };
enum class edge_restriction { closed_open, open_closed, unrestricted };
enum class encoding_variant { general, lorc };

struct semantics_config {
    std::set<liveness> live;
    edge_restriction edges = edge_restriction::unrestricted;
    encoding_variant variant = encoding_variant::general;
    bool non_zeno_guard = false;
};

std::string to_string(liveness l);
std::string to_string(edge_restriction e);
std::string to_string(encoding_variant v);
std::optional<liveness> parse_liveness(const std::string& s);
std::optional<edge_restriction> parse_edges(const std::string& s);
std::optional<encoding_variant> parse_variant(const std::string& s);

}  // namespace tamitl
