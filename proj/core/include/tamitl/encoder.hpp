#pragma once

#include "tamitl/cltloc.hpp"
#include "tamitl/mitl.hpp"
#include "tamitl/model.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tamitl::enc {

// t[k] value for "no transition"
inline constexpr std::int64_t no_transition = -1;

struct clock_pair {
    std::string copy0, copy1, active;  // two CLTLoc clocks and the 0/1 selector
};

// names of every CLTLoc symbol introduced for a network
struct vocabulary {
    std::vector<std::string> loc;    // l[k]
    std::vector<std::string> trans;  // t[k]
    std::vector<std::string> edge;   // edge[k], true when the step is closed-open
    std::map<std::string, clock_pair> clocks;
    std::set<mitl::atom> atoms;

    explicit vocabulary(const network& n, std::set<mitl::atom> atoms = {});
    vocabulary() = default;

    static std::string atom_key(const mitl::atom& a);  // "p", "n==2", "n<3"
    static std::string first(const mitl::atom& a);
    static std::string rest(const mitl::atom& a);
    static clock_pair pair_for(const std::string& clock);
};

// clock pair formulas; also reused by the MITL encoder for auxiliary clocks
cltloc::formula active_is(const clock_pair& p, int j);
cltloc::formula reset_now(const clock_pair& p);  // x0 = 0 or x1 = 0
cltloc::formula encode_clock_atom(const clock_pair& p, cmp rel, std::int64_t d);
cltloc::formula encode_literal(const clock_pair& p, const clock_literal& l);
cltloc::formula encode_clock_system(const std::vector<clock_pair>& pairs);

cltloc::formula encode_clock_atom(const clock_atom& a, const vocabulary& v);
cltloc::formula encode_guard(const convex_guard& g, const vocabulary& v);
std::vector<clock_pair> clock_pairs(const vocabulary& v);

enum class rewrite { r1, r2 };
cltloc::formula rewrite_reset_aware(const convex_guard& g, rewrite mode, const vocabulary& v);

// nullopt when the weak version is false (an equality literal)
std::optional<convex_guard> weak_version(const convex_guard& g);

cltloc::formula encode_var_constraint(const var_constraint& c);

cltloc::formula encode_network(const network& n, const vocabulary& v, encoding_variant variant);
cltloc::formula encode_constraints(const network& n, const semantics_config& c, const vocabulary& v);
cltloc::formula encode_signal_binding(const network& n, const vocabulary& v, encoding_variant variant);

struct encoder_output {
    cltloc::formula formula = nullptr;
    cltloc::signature sig;
    vocabulary vocab;
    std::size_t conjuncts = 0;
};

// throws declaration_error on config conflicts or unknown atoms
encoder_output encode_system(const network& n, const semantics_config& c, const std::set<mitl::atom>& atoms);

}  // namespace tamitl::enc
