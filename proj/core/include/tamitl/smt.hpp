#pragma once

#include "tamitl/cltloc.hpp"

#include <map>
#include <string>
#include <vector>

namespace tamitl::smt {

struct unroll_options {
    // clock copies on the loop either repeat exactly or stay above every constant they are compared with
    bool periodic_clocks = true;
    // clocks whose loop condition is skipped (never compared against anything)
    std::vector<std::string> free_clocks;
};

struct script {
    std::string text;
    int k = 0;
    std::vector<std::string> value_symbols;  // symbols requested with get-value
    std::size_t subformulas = 0;

    static std::string symbol(const std::string& name, int pos);
    static std::string delay_symbol(int pos);
    static std::string loop_symbol(int pos);
};

// requires k >= 2 and every symbol of phi declared in sig
script unroll_bmc(cltloc::formula phi, const cltloc::signature& sig, int k, const unroll_options& opt = {});

struct solver_result {
    enum class status { sat, unsat, unknown, timeout, error };
    status st = status::error;
    std::string reason;
    std::map<std::string, std::string> values;  // raw s-expression text per symbol
    double wall_ms = 0;
};

std::string to_string(solver_result::status s);

// runs "cmd" with the script on standard input; kills it after timeout_s seconds (0 = no limit)
solver_result run_solver(const std::string& script_text, const std::string& cmd, double timeout_s);

// parses z3-style numerals: 1, (- 2), 1.5, (/ 1.0 3.0), (- (/ 1 2))
rational parse_number(const std::string& sexpr);

cltloc::lasso decode_lasso(const solver_result& r, const script& s, const cltloc::signature& sig);

}  // namespace tamitl::smt
