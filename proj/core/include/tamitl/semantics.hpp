#pragma once

#include "tamitl/model.hpp"

#include <string>
#include <variant>
#include <vector>

namespace tamitl {

enum class sat_mode { strong, weak };

bool eval_literal(const clock_literal& l, const rational& v, sat_mode mode);
bool eval_clock_constraint(const convex_guard& g, const clock_valuation& v, sat_mode mode);
// strong semantics only; weak satisfaction needs the convex form
bool eval_clock_constraint(const clock_constraint& g, const clock_valuation& v);

std::int64_t eval_int_expr(const int_expr& e, const var_valuation& v);
bool eval_var_constraint(const var_constraint& c, const var_valuation& v);

struct inconsistent_assignment {
    std::string var;
};
struct domain_exit {
    std::string var;
    std::int64_t value;
};
using assignment_result = std::variant<var_valuation, inconsistent_assignment, domain_exit>;

// rhs evaluated in the old valuation; domains are checked when net is given
assignment_result apply_assignments(const std::vector<assignment>& mu, const var_valuation& v,
                                    const network* net = nullptr);

// disjoint convex cells whose union is g
std::vector<convex_guard> normalize_guard(const clock_constraint& g);

// literals that evaluate to a constant when x is replaced by c
bool literal_at(const clock_literal& l, std::int64_t c);

struct diagnostic {
    std::string where;
    std::string message;
};

std::vector<diagnostic> validate_network(const network& n);
std::vector<diagnostic> validate_config(const semantics_config& c);

// adds an automaton that resets a fresh clock whenever it reaches 1
network with_non_zeno_guard(const network& n);
// adds a clock that is never reset nor tested when the network has none
network with_some_clock(const network& n);

}  // namespace tamitl
