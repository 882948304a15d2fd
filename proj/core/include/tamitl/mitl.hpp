#pragma once

#include "tamitl/model.hpp"

#include <memory>
#include <optional>
#include <set>
#include <string>

namespace tamitl::mitl {

struct interval {
    std::int64_t lo = 0;
    bool lo_open = false;
    std::optional<std::int64_t> hi;  // nullopt is infinity, always open
    bool hi_open = true;

    static interval unbounded() { return {}; }
    bool is_unbounded() const { return !hi.has_value(); }
    bool is_trivial() const { return lo == 0 && !hi; }
    bool operator==(const interval&) const = default;
};

std::string to_string(const interval& i);

enum class op { truth, falsity, prop, arith, negation, conj, disj, implies, until, release,
                eventually, always };

struct node;
using formula = std::shared_ptr<const node>;

// an atomic formula: proposition p or comparison n ~ d
struct atom {
    std::string name;           // proposition or variable name
    bool arithmetic = false;
    cmp rel = cmp::eq;
    std::int64_t value = 0;
    auto operator<=>(const atom&) const = default;
    bool operator==(const atom&) const = default;
};

std::string to_string(const atom& a);

struct node {
    op kind = op::truth;
    atom at;
    interval iv;
    formula lhs, rhs;
};

formula top();
formula bottom();
formula prop(std::string p);
formula arith(std::string var, cmp rel, std::int64_t value);
formula make_atom(const atom& a);
formula neg(formula f);
formula conj(formula a, formula b);
formula disj(formula a, formula b);
formula implies(formula a, formula b);
formula until(formula a, formula b, interval i = {});
formula release(formula a, formula b, interval i = {});
formula eventually(formula a, interval i = {});
formula always(formula a, interval i = {});

bool equal(const formula& a, const formula& b);
std::size_t depth(const formula& f);

// rewrite into truth, prop, arith, negation, conj, until
formula desugar(const formula& f);
// push negations to atoms; keeps truth, falsity, atoms, negated atoms, conj, disj, until, release
formula to_positive_normal_form(const formula& f);
std::set<atom> collect_atomic(const formula& f);
std::int64_t max_constant(const formula& f);

// fully parenthesized, re-parseable text
std::string print(const formula& f);

}  // namespace tamitl::mitl
