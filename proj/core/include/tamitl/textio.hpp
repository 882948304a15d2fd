#pragma once

#include "tamitl/mitl.hpp"
#include "tamitl/model.hpp"

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

namespace tamitl {

struct source_span {
    std::string file;
    int line = 1;
    int column = 1;
    int end_column = 1;
};

std::string to_string(const source_span& s);

struct located_message {
    source_span span;
    std::string message;
};

class parse_error : public std::runtime_error {
public:
    explicit parse_error(std::vector<located_message> msgs);
    const std::vector<located_message>& messages() const { return msgs_; }

private:
    std::vector<located_message> msgs_;
};

// throws parse_error on syntax or validation problems
network parse_network(const std::string& text, const std::string& file = "<input>");
mitl::formula parse_mitl(const std::string& text, const std::string& file = "<input>");

std::string print_network(const network& n);
std::string print_guard(const convex_guard& g);
std::string print_expr(const int_expr& e);
std::string print_var_constraint(const var_constraint& c);

std::string read_file(const std::string& path);  // "-" reads standard input

// adds label "A.q" to location q of automaton A for every such atom in props
network materialize_location_props(const network& n, const std::set<mitl::atom>& atoms);

}  // namespace tamitl
