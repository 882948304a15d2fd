#pragma once

#include "tamitl/mitl.hpp"
#include "tamitl/model.hpp"

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tamitl::oracle {

// one automaton's part of a discrete step; transition -1 is the idle symbol
struct move {
    int transition = -1;
    bool closed_open = true;  // ie when true, ei otherwise
    bool idle() const { return transition < 0; }
    bool operator==(const move&) const = default;
};

// a delay followed by a discrete step
struct step {
    rational delay;
    std::vector<move> moves;
};

struct configuration {
    std::vector<int> loc;
    var_valuation vars;
    clock_valuation clocks;
    bool operator==(const configuration&) const = default;
};

// starts in the initial configuration; when loop is set, steps[loop..] repeat forever
struct trace {
    std::vector<step> steps;
    std::optional<std::size_t> loop;
};

configuration initial_configuration(const network& n);
// configurations before each delay: result[h] precedes steps[h], result.back() follows the last step
std::vector<configuration> replay(const network& n, const trace& tr);
// same locations and variables; each clock equal or both above its maximal constant
bool equivalent(const network& n, const configuration& a, const configuration& b);

struct violation {
    std::size_t step = 0;
    std::string clause;
    std::string message;
};

std::vector<violation> validate_trace(const network& n, const trace& tr, const semantics_config& cfg);

struct valuation {
    std::set<std::string> props;
    var_valuation vars;
    bool operator==(const valuation&) const = default;
};

// point values at times[i], open values on (times[i], times[i+1]); with a loop L
// the block (times[L], times.back()] repeats forever
struct signal {
    std::vector<rational> times;
    std::vector<valuation> point;
    std::vector<valuation> open;
    std::optional<std::size_t> loop;

    rational period() const;
};

struct edge_inconsistent : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct insufficient_horizon : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct search_cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

valuation valuation_of(const network& n, const std::vector<int>& loc, const var_valuation& vars);
signal trace_to_signal(const network& n, const trace& tr);

bool holds(const mitl::atom& a, const valuation& v);
bool eval_mitl_signal(const mitl::formula& psi, const signal& s, const rational& t);

// sorted disjoint intervals, exposed for tests
struct interval {
    rational lo, hi;
    bool lo_closed = true, hi_closed = false;
};
std::vector<interval> satisfaction_set(const mitl::formula& psi, const signal& s, const rational& horizon);

struct search_options {
    std::size_t depth = 8;
    std::vector<rational> grid{rational(1, 2), rational(1), rational(3)};
    std::size_t cap = 2000000;  // expanded nodes
};

std::optional<trace> search_counterexample(const network& n, const mitl::formula& psi, const semantics_config& cfg,
                                           const search_options& opt = {});

std::string dump_trace(const network& n, const trace& tr);
std::string dump_signal(const signal& s);

}  // namespace tamitl::oracle
