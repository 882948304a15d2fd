#pragma once

#include "tamitl/cltloc.hpp"
#include "tamitl/mitl.hpp"
#include "tamitl/oracle.hpp"

#include <set>
#include <string>
#include <vector>

namespace tamitl::menc {

struct options {
    std::int64_t horizon = 10000;  // largest interval endpoint accepted
    int max_timers = 12;           // cap on delay-line timers per shifted subformula
};

struct encoding_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct mitl_encoding {
    cltloc::formula formula = nullptr;  // asserts the property at the origin
    cltloc::signature sig;              // auxiliary symbols only
    std::set<mitl::atom> atoms;         // atoms read through first/rest propositions
    std::vector<std::string> aux_clocks;
    std::size_t temporal = 0;           // number of temporal operators encoded
};

// The result is satisfiable together with a signal binding exactly when the
// bound signal satisfies psi at time 0 (given enough positions).
mitl_encoding encode_mitl(const mitl::formula& psi, const options& opt = {});

// timers allocated for a shift by a with an upper bound b (nullopt: unbounded)
int timer_capacity(std::int64_t a, std::optional<std::int64_t> b, int cap);

// Fixes first/rest of the given atoms to an eventually constant signal with
// integer breakpoints, through a never-reset clock "$now". Adds its symbols to sig.
cltloc::formula pin_signal(const oracle::signal& s, const std::set<mitl::atom>& atoms, cltloc::signature& sig);

}  // namespace tamitl::menc
