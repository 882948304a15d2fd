#pragma once

#include "tamitl/mitl.hpp"
#include "tamitl/model.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tamitl::bench {

enum class family { fischer, csma, token_ring };

std::string to_string(family f);
std::optional<family> parse_family(const std::string& s);
std::vector<std::string> properties(family f);

struct spec {
    family fam = family::fischer;
    int n = 2;
    std::string property;
};

struct instance {
    network net;
    mitl::formula property;
    semantics_config cfg;
    std::string model_text;     // DSL source of net
    std::string property_text;
};

// lorc encoding, closed-open edges, weak transition liveness
semantics_config default_config();

std::string model_text(family f, int n);
std::string property_text(family f, int n, const std::string& name);

// throws std::invalid_argument on an unknown property or n < 2 (n = 1 allowed for fischer)
instance generate(const spec& s);

}  // namespace tamitl::bench
