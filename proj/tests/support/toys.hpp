#pragma once

#include "tamitl/mitl.hpp"
#include "tamitl/model.hpp"
#include "tamitl/oracle.hpp"

#include <optional>
#include <random>
#include <string>
#include <vector>

namespace tamitl::testing {

struct toy {
    std::string name;
    std::string text;
};

// five small networks covering channels, broadcast, one-to-many, variables and open invariants
const std::vector<toy>& toys();
network toy_network(const std::string& name);

// configurations the round trips cycle through
std::vector<semantics_config> toy_configs();

// random valid lasso by extension and closure, validated step by step with the oracle
std::optional<oracle::trace> random_lasso(const network& n, const semantics_config& cfg, std::mt19937& rng,
                                          std::size_t max_steps = 8, int attempts = 50);

// random MITL over the given atoms: temporal depth at most depth, integer bounds at most 4
mitl::formula random_formula(std::mt19937& rng, const std::vector<std::string>& atoms, int depth = 3,
                             int size = 6);
// lasso signal over p and q with integer breakpoints
oracle::signal random_signal(std::mt19937& rng);

}  // namespace tamitl::testing
