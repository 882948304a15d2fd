#include "tamitl/bench.hpp"

#include "tamitl/textio.hpp"

#include <sstream>
#include <stdexcept>

namespace tamitl::bench {

std::string to_string(family f) {
    switch (f) {
        case family::fischer: return "fischer";
        case family::csma: return "csma";
        case family::token_ring: return "token-ring";
    }
    return "?";
}

std::optional<family> parse_family(const std::string& s) {
    if (s == "fischer") return family::fischer;
    if (s == "csma") return family::csma;
    if (s == "token-ring" || s == "token_ring") return family::token_ring;
    return std::nullopt;
}

std::vector<std::string> properties(family f) {
    switch (f) {
        case family::fischer: return {"live-one", "live-two", "live-three", "live-four", "live-five", "live-six"};
        case family::csma: return {"live-csma"};
        case family::token_ring: return {"live-token"};
    }
    return {};
}

semantics_config default_config() {
    semantics_config c;
    c.live = {liveness::weak_transition};
    c.edges = edge_restriction::closed_open;
    c.variant = encoding_variant::lorc;
    return c;
}

namespace {

std::string idx(const std::string& base, int i) { return base + std::to_string(i); }

std::string clocks_line(const std::vector<std::string>& cs) {
    std::string s = "clock ";
    for (std::size_t i = 0; i < cs.size(); ++i) s += (i ? ", " : "") + cs[i];
    return s + ";\n";
}

// Fischer: req may last at most delta, the check in wait needs strictly more than delta.
// delta = 2 keeps live-two and live-four true (wait within 3) while cs can take longer than 3.
std::string fischer(int n) {
    const int delta = 2;
    std::ostringstream o;
    std::vector<std::string> cs;
    for (int i = 1; i <= n; ++i) cs.push_back(idx("x", i));
    o << clocks_line(cs);
    o << "int id in [0," << n << "] = 0;\n";
    for (int i = 1; i <= n; ++i) {
        auto x = idx("x", i);
        o << "\nautomaton " << idx("p", i) << " {\n"
          << "  loc idle;\n"
          << "  loc req { inv: " << x << " <= " << delta << "; }\n"
          << "  loc wait;\n"
          << "  loc cs;\n"
          << "  trans idle -> req { guard: id == 0; reset: " << x << "; }\n"
          << "  trans req -> wait { guard: " << x << " <= " << delta << "; do: id := " << i << "; reset: " << x
          << "; }\n"
          << "  trans wait -> req { guard: id == 0; reset: " << x << "; }\n"
          << "  trans wait -> cs { guard: " << x << " > " << delta << " && id == " << i << "; }\n"
          << "  trans cs -> idle { do: id := 0; }\n"
          << "}\n";
    }
    return o.str();
}

// CSMA/CD after the classical timed automata model: sigma = 26 is the propagation
// window, lambda = 808 the frame length. A collision signal aborts every sender.
std::string csma(int n) {
    const int sigma = 26, lambda = 808;
    std::ostringstream o;
    std::vector<std::string> cs{"y"};
    for (int i = 1; i <= n; ++i) cs.push_back(idx("x", i));
    o << clocks_line(cs);
    o << "\nautomaton bus {\n"
      << "  loc idle;\n"
      << "  loc active;\n"
      << "  loc collision { inv: y < " << sigma << "; }\n"
      << "  trans idle -> active { sync: begin?; reset: y; }\n"
      << "  trans active -> idle { sync: end?; reset: y; }\n"
      << "  trans active -> active { guard: y >= " << sigma << "; sync: busy#; }\n"
      << "  trans active -> collision { guard: y < " << sigma << "; sync: begin?; reset: y; }\n"
      << "  trans collision -> idle { guard: y < " << sigma << "; sync: cd#; reset: y; }\n"
      << "}\n";
    for (int i = 1; i <= n; ++i) {
        auto x = idx("x", i);
        o << "\nautomaton " << idx("P", i) << " {\n"
          << "  loc wait;\n"
          << "  loc send { inv: " << x << " <= " << lambda << "; }\n"
          << "  loc retry { inv: " << x << " < " << 2 * sigma << "; }\n"
          << "  trans wait -> send { sync: begin!; reset: " << x << "; }\n"
          << "  trans wait -> retry { sync: busy@; reset: " << x << "; }\n"
          << "  trans wait -> retry { sync: cd@; reset: " << x << "; }\n"
          << "  trans send -> wait { guard: " << x << " == " << lambda << "; sync: end!; reset: " << x << "; }\n"
          << "  trans send -> retry { sync: cd@; reset: " << x << "; }\n"
          << "  trans retry -> send { guard: " << x << " < " << 2 * sigma << "; sync: begin!; reset: " << x
          << "; }\n"
          << "  trans retry -> retry { sync: cd@; reset: " << x << "; }\n"
          << "  trans retry -> retry { sync: busy@; reset: " << x << "; }\n"
          << "}\n";
    }
    return o.str();
}

// FDDI-style token ring: a station holding the token transmits synchronously for sa
// time units, then asynchronously only if its rotation timer is below ttrt.
// The z and y phases alternate on every token visit.
std::string token_ring(int n) {
    const int sa = 2, ttrt = 10;
    std::ostringstream o;
    std::vector<std::string> cs;
    for (int i = 1; i <= n; ++i) {
        cs.push_back(idx("trt", i));
        cs.push_back(idx("x", i));
    }
    o << clocks_line(cs);
    for (int i = 1; i <= n; ++i) {
        auto x = idx("x", i), trt = idx("trt", i), tt = idx("tt", i), rt = idx("rt", i);
        o << "\nautomaton " << idx("ST", i) << " {\n";
        for (const char* ph : {"z", "y"}) {
            std::string p = ph;
            o << "  loc " << p << "idle;\n"
              << "  loc " << p << "sync { inv: " << x << " <= " << sa << "; }\n"
              << "  loc " << p << "async { inv: " << trt << " <= " << ttrt << "; }\n";
        }
        for (const char* ph : {"z", "y"}) {
            std::string p = ph, q = p == "z" ? "y" : "z";
            o << "  trans " << p << "idle -> " << p << "sync { sync: " << tt << "?; reset: " << x << "; }\n"
              << "  trans " << p << "sync -> " << q << "idle { guard: " << x << " == " << sa << " && " << trt
              << " >= " << ttrt << "; sync: " << rt << "!; reset: " << trt << "; }\n"
              << "  trans " << p << "sync -> " << p << "async { guard: " << x << " == " << sa << " && " << trt
              << " < " << ttrt << "; }\n"
              << "  trans " << p << "async -> " << q << "idle { sync: " << rt << "!; reset: " << trt << "; }\n";
        }
        o << "}\n";
    }
    o << "\nautomaton ring {\n";
    for (int i = 1; i <= n; ++i) o << "  loc " << idx("at", i) << ";\n  loc " << idx("pass", i) << ";\n";
    for (int i = 1; i <= n; ++i) {
        int next = i % n + 1;
        o << "  trans " << idx("at", i) << " -> " << idx("pass", i) << " { sync: " << idx("tt", i) << "!; }\n"
          << "  trans " << idx("pass", i) << " -> " << idx("at", next) << " { sync: " << idx("rt", i) << "?; }\n";
    }
    o << "}\n";
    return o.str();
}

std::string any_of(const std::string& st, std::initializer_list<const char*> locs) {
    std::string s;
    for (auto l : locs) s += (s.empty() ? "" : " || ") + st + "." + l;
    return "(" + s + ")";
}

}  // namespace

std::string model_text(family f, int n) {
    switch (f) {
        case family::fischer: return fischer(n);
        case family::csma: return csma(n);
        case family::token_ring: return token_ring(n);
    }
    return {};
}

std::string property_text(family f, int n, const std::string& name) {
    if (f == family::fischer) {
        if (name == "live-one") return "G[0,inf) (p1.req -> F[0,inf) p1.wait)";
        if (name == "live-two") return "G[0,inf) (p1.req -> F[0,3] p1.wait)";
        if (name == "live-three") return "G[0,inf) (p1.req -> F(0,3) p1.cs)";
        if (name == "live-four") return "G[0,inf) (p1.req -> F(0,3) p1.wait)";
        if (name == "live-five") return "G[0,inf) (p1.req -> F[0,3] p1.cs)";
        if (name == "live-six") {
            std::string d;
            for (int i = 1; i < n; ++i)
                for (int j = i + 1; j <= n; ++j)
                    d += (d.empty() ? "" : " || ") + std::string("(") + idx("p", i) + ".cs && " + idx("p", j) + ".cs)";
            return d.empty() ? "G[0,inf) true" : "G[0,inf) !(" + d + ")";
        }
    }
    if (f == family::csma && name == "live-csma") {
        std::string start = "(!P1.send && (P1.send U(0,inf) true))";
        std::string collision = "G(0,52] (P1.send && (P1.send U[0,inf) (P1.send && P2.send)))";
        return "G[0,inf) (" + start + " -> !(" + collision + "))";
    }
    if (f == family::token_ring && name == "live-token") {
        auto busy = [](const std::string& st) { return any_of(st, {"zsync", "zasync", "ysync", "yasync"}); };
        return "G(0,inf) !(" + busy("ST1") + " && " + busy("ST2") + ")";
    }
    throw std::invalid_argument("property '" + name + "' is not defined for " + to_string(f));
}

instance generate(const spec& s) {
    int lo = s.fam == family::fischer ? 1 : 2;
    if (s.n < lo) throw std::invalid_argument(to_string(s.fam) + " needs n >= " + std::to_string(lo));
    instance r;
    r.property_text = property_text(s.fam, s.n, s.property);
    r.model_text = model_text(s.fam, s.n);
    r.net = parse_network(r.model_text, to_string(s.fam) + std::to_string(s.n));
    r.property = parse_mitl(r.property_text);
    r.cfg = default_config();
    return r;
}

}  // namespace tamitl::bench
