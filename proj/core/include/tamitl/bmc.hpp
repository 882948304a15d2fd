#pragma once

#include "tamitl/encoder.hpp"
#include "tamitl/mitl_encoder.hpp"
#include "tamitl/oracle.hpp"
#include "tamitl/smt.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tamitl::bmc {

// everything needed to unroll one verification query
struct problem {
    network net;  // with location labels, the non-Zeno automaton and a clock added as needed
    semantics_config cfg;
    mitl::formula property;
    enc::encoder_output system;
    menc::mitl_encoding negated;
    cltloc::formula formula = nullptr;
    cltloc::signature sig;
};

problem prepare(const network& n, const mitl::formula& psi, const semantics_config& cfg,
                const menc::options& mopt = {});

// the system alone with no property atoms, for round trips
problem prepare_system(const network& n, const semantics_config& cfg);

enum class outcome { holds, violated, inconclusive };
std::string to_string(outcome o);

struct verdict {
    outcome result = outcome::inconclusive;
    int bound = 0;
    std::string reason;
    std::optional<oracle::trace> witness;
    std::optional<oracle::signal> signal;
    std::optional<cltloc::lasso> model;
    double solver_ms = 0;
    double wall_ms = 0;
    std::size_t conjuncts = 0;
    std::size_t smt_bytes = 0;
};

struct solver_options {
    // the legacy arithmetic core is several times faster on these unrollings
    std::string command = "z3 -in -smt2 smt.arith.solver=2";
    double timeout_s = 0;
};

smt::script unroll(const problem& p, int k);
// solves an unrolled script and certifies any witness against the oracle
verdict check(const problem& p, const smt::script& s, const solver_options& so);
verdict verify(const network& n, const mitl::formula& psi, const semantics_config& cfg, int k,
               const solver_options& so = {}, const menc::options& mopt = {});

// model to trace: step h is the delay of position h and the transitions of position h
oracle::trace decode_trace(const problem& p, const cltloc::lasso& m);
// trace to model, unrolling the loop body three times so that the loop closes exactly;
// the trace must be a lasso
cltloc::lasso encode_trace(const problem& p, const oracle::trace& tr);

// x0/x1 resets alternate and the selector names the copy reset last
std::vector<std::string> check_clock_pairs(const std::vector<enc::clock_pair>& pairs, const cltloc::lasso& m);
std::vector<enc::clock_pair> all_pairs(const problem& p);

}  // namespace tamitl::bmc
