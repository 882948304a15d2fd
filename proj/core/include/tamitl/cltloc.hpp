#pragma once

#include "tamitl/model.hpp"

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace tamitl::cltloc {

enum class op {
    truth, falsity,
    prop,          // name
    clock_atom,    // name rel value
    arith_atom,    // lhs rel rhs
    next_arith,    // X(name) rel rhs
    neg, conj, disj, iff,
    next, until, release
};

struct node {
    op kind = op::truth;
    std::string name;
    cmp rel = cmp::eq;
    std::int64_t value = 0;
    int_expr lhs, rhs;
    std::vector<const node*> kids;
    std::size_t id = 0;  // creation order, unique per structure
};

// formulas are interned: structurally equal formulas share one node
using formula = const node*;

formula top();
formula bottom();
formula prop(const std::string& p);
formula clock(const std::string& x, cmp rel, std::int64_t c);
formula arith(const int_expr& lhs, cmp rel, const int_expr& rhs);
formula var_eq(const std::string& n, std::int64_t v);
formula next_var(const std::string& n, cmp rel, const int_expr& rhs);
formula neg(formula f);
formula conj(std::vector<formula> fs);
formula conj(formula a, formula b);
formula disj(std::vector<formula> fs);
formula disj(formula a, formula b);
formula implies(formula a, formula b);
formula iff(formula a, formula b);
formula next(formula f);
formula until(formula a, formula b);
formula release(formula a, formula b);
formula eventually(formula f);
formula always(formula f);

bool is_temporal(formula f);

// declared symbols of an interpretation
struct signature {
    std::vector<std::string> props;
    std::vector<std::string> clocks;
    struct int_var {
        std::string name;
        std::int64_t lo, hi;
    };
    std::vector<int_var> ints;

    bool has_prop(const std::string& p) const;
    bool has_clock(const std::string& c) const;
    const int_var* find_int(const std::string& n) const;
    void merge(const signature& other);
};

struct lasso {
    int k = 1;
    int loop = 1;  // position k is a copy of position loop, 1 <= loop < k
    std::vector<std::set<std::string>> props;                  // per position 0..k
    std::vector<std::map<std::string, rational>> clocks;       // per position 0..k
    std::vector<std::map<std::string, std::int64_t>> ints;     // per position 0..k
    std::vector<rational> delays;                              // per position 0..k-1

    rational time_at(int i) const;
};

struct undeclared_symbol : std::runtime_error {
    using std::runtime_error::runtime_error;
};

bool evaluate_at(formula f, const lasso& m, int i);
// truth at all positions 0..k, memoized over the formula DAG
std::vector<bool> evaluate_all(formula f, const lasso& m);

// naive reference: walks the infinite word position by position, without memoization
bool evaluate_unrolled(formula f, const lasso& m, int i);

// checks progress-or-reset, positive delays and loop consistency for the atoms of f
std::vector<std::string> check_lasso(const lasso& m, formula f);

struct atom_inventory {
    std::set<std::string> props, clocks, vars;
    std::set<formula> clock_atoms, arith_atoms;
};
atom_inventory atoms_of(formula f);

std::size_t dag_size(formula f);
std::size_t conjunct_count(formula f);

std::string print(formula f);

// kernel form: negation, conjunction, next, until and atoms only
formula desugar(formula f);

}  // namespace tamitl::cltloc
