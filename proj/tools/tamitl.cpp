#include "tamitl/bench.hpp"
#include "tamitl/bmc.hpp"
#include "tamitl/textio.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <future>
#include <iostream>

using namespace tamitl;

namespace {

// exit codes: 0 holds, 1 violated, 2 inconclusive, above that errors
constexpr int exit_usage = 64;
constexpr int exit_input = 65;
constexpr int exit_internal = 70;

struct config_flags {
    std::vector<std::string> liveness{"weak-transition"};
    std::string edges = "closed-open";
    std::string variant = "lorc";
    bool non_zeno = false;
    std::string solver = bmc::solver_options{}.command;
    double timeout = 0;
    std::int64_t horizon = menc::options{}.horizon;
    int max_timers = menc::options{}.max_timers;

    void add(CLI::App* app) {
        app->add_option("--liveness", liveness, "strong-transition, weak-transition, strong-guard, weak-guard")
            ->delimiter(',');
        app->add_option("--edges", edges, "closed-open, open-closed or unrestricted")->capture_default_str();
        app->add_option("--variant", variant, "general or lorc")->capture_default_str();
        app->add_flag("--non-zeno", non_zeno, "add an automaton forcing time to diverge");
        app->add_option("--solver", solver, "SMT-LIB2 solver reading standard input")->capture_default_str();
        app->add_option("--timeout", timeout, "solver timeout in seconds, 0 for none");
        app->add_option("--horizon", horizon, "largest interval endpoint accepted")->capture_default_str();
        app->add_option("--max-timers", max_timers, "timers per shifted subformula")->capture_default_str();
    }

    semantics_config semantics() const {
        semantics_config c;
        for (const auto& l : liveness) {
            if (l.empty() || l == "none") continue;
            auto p = parse_liveness(l);
            if (!p) throw CLI::ValidationError("--liveness", "unknown liveness '" + l + "'");
            c.live.insert(*p);
        }
        auto e = parse_edges(edges);
        if (!e) throw CLI::ValidationError("--edges", "unknown edge restriction '" + edges + "'");
        c.edges = *e;
        auto v = parse_variant(variant);
        if (!v) throw CLI::ValidationError("--variant", "unknown variant '" + variant + "'");
        c.variant = *v;
        c.non_zeno_guard = non_zeno;
        return c;
    }
    menc::options mitl() const { return {horizon, max_timers}; }
    bmc::solver_options solver_opts() const { return {solver, timeout}; }
};

int code_of(bmc::outcome o) {
    switch (o) {
        case bmc::outcome::holds: return 0;
        case bmc::outcome::violated: return 1;
        case bmc::outcome::inconclusive: return 2;
    }
    return exit_internal;
}

nlohmann::json stats(const bmc::verdict& v) {
    return {{"verdict", bmc::to_string(v.result)},
            {"bound", v.bound},
            {"wall_ms", v.wall_ms},
            {"conjuncts", v.conjuncts},
            {"smt_bytes", v.smt_bytes}};
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write " + path);
    f << text;
}

void report(std::ostream& o, const bmc::problem& p, const bmc::verdict& v) {
    o << bmc::to_string(v.result) << " at bound " << v.bound;
    if (!v.reason.empty()) o << " (" << v.reason << ")";
    o << '\n';
    if (v.result == bmc::outcome::violated && v.witness && v.signal) {
        o << oracle::dump_trace(p.net, *v.witness);
        o << oracle::dump_signal(*v.signal);
    }
}

struct check_cmd {
    std::string model, property_file, formula, emit_smt, emit_cltloc, stats_file;
    int bound = 0;
    config_flags cf;

    int run() const {
        if (property_file.empty() && formula.empty())
            throw CLI::ValidationError("check", "one of --property or --formula is required");
        auto net = parse_network(read_file(model), model);
        auto psi = property_file.empty() ? parse_mitl(formula, "<formula>")
                                         : parse_mitl(read_file(property_file), property_file);
        auto p = bmc::prepare(net, psi, cf.semantics(), cf.mitl());
        if (!emit_cltloc.empty())
            write_file(emit_cltloc, "; system\n" + cltloc::print(p.system.formula) + "\n; negated property\n" +
                                        cltloc::print(p.negated.formula) + "\n");
        auto script = bmc::unroll(p, bound);
        if (!emit_smt.empty()) write_file(emit_smt, script.text);
        auto t0 = std::chrono::steady_clock::now();
        auto v = bmc::check(p, script, cf.solver_opts());
        v.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
        report(std::cout, p, v);
        if (!stats_file.empty()) write_file(stats_file, stats(v).dump(2) + "\n");
        return code_of(v.result);
    }
};

struct bench_cmd {
    std::string fam;
    std::vector<int> ns{2};
    std::vector<std::string> props;
    std::vector<int> bounds{10, 15, 20, 25, 30};
    int jobs = 1;
    std::string json_file;
    config_flags cf;
    bool pin_defaults = true;

    int run() const {
        auto f = bench::parse_family(fam);
        if (!f) throw CLI::ValidationError("--family", "unknown family '" + fam + "'");
        auto ps = props.empty() ? bench::properties(*f) : props;
        struct cell {
            int n, k;
            std::string prop;
        };
        std::vector<cell> cells;
        for (int n : ns)
            for (const auto& pr : ps)
                for (int k : bounds) cells.push_back({n, k, pr});

        auto solve = [&](const cell& c) {
            auto in = bench::generate({*f, c.n, c.prop});
            auto cfg = pin_defaults ? in.cfg : cf.semantics();
            return bmc::verify(in.net, in.property, cfg, c.k, cf.solver_opts(), cf.mitl());
        };
        std::vector<bmc::verdict> out(cells.size());
        std::size_t next = 0;
        while (next < cells.size()) {
            std::vector<std::future<bmc::verdict>> batch;
            std::size_t start = next;
            for (int j = 0; j < std::max(jobs, 1) && next < cells.size(); ++j, ++next)
                batch.push_back(std::async(std::launch::async, solve, cells[next]));
            for (std::size_t j = 0; j < batch.size(); ++j) {
                out[start + j] = batch[j].get();
                const auto& c = cells[start + j];
                const auto& v = out[start + j];
                std::cout << fam << " n=" << c.n << " " << c.prop << " k=" << c.k << " " << bmc::to_string(v.result)
                          << " " << static_cast<long>(v.wall_ms) << "ms";
                if (!v.reason.empty()) std::cout << " (" << v.reason << ")";
                std::cout << std::endl;
            }
        }
        int worst = 0;
        nlohmann::json all = nlohmann::json::array();
        for (std::size_t i = 0; i < cells.size(); ++i) {
            auto j = stats(out[i]);
            j["family"] = fam;
            j["n"] = cells[i].n;
            j["property"] = cells[i].prop;
            all.push_back(j);
            if (out[i].result == bmc::outcome::inconclusive) worst = 2;
        }
        if (!json_file.empty()) write_file(json_file, all.dump(2) + "\n");
        return worst;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Bounded model checking of timed automata networks against MITL"};
    app.require_subcommand(1);

    check_cmd chk;
    auto* c = app.add_subcommand("check", "check one property at one bound");
    c->add_option("--model", chk.model, "network file")->required()->check(CLI::ExistingFile);
    auto* pf = c->add_option("--property", chk.property_file, "MITL property file")->check(CLI::ExistingFile);
    auto* ff = c->add_option("--formula", chk.formula, "MITL property text");
    pf->excludes(ff);
    c->add_option("--bound", chk.bound, "unrolling bound k")->required()->check(CLI::Range(2, 100000));
    c->add_option("--emit-smt", chk.emit_smt, "write the SMT-LIB2 script");
    c->add_option("--emit-cltloc", chk.emit_cltloc, "write the CLTLoc formulas");
    c->add_option("--stats", chk.stats_file, "write statistics as JSON");
    chk.cf.add(c);

    bench_cmd bn;
    auto* b = app.add_subcommand("bench", "run a benchmark family over bounds");
    b->add_option("--family", bn.fam, "fischer, csma or token-ring")->required();
    b->add_option("--n", bn.ns, "participants (comma separated)")->delimiter(',');
    b->add_option("--property", bn.props, "properties (comma separated, default all)")->delimiter(',');
    b->add_option("--bounds", bn.bounds, "bounds (comma separated)")->delimiter(',')->check(CLI::Range(2, 100000));
    b->add_option("--jobs", bn.jobs, "cells solved in parallel");
    b->add_option("--json", bn.json_file, "write per-cell statistics");
    bn.cf.add(b);

    std::string gen_family, gen_property;
    int gen_n = 2;
    auto* g = app.add_subcommand("gen", "print a generated benchmark model or property");
    g->add_option("--family", gen_family, "fischer, csma or token-ring")->required();
    g->add_option("--n", gen_n, "participants");
    g->add_option("--property", gen_property, "print this property instead of the model");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int r = app.exit(e);
        return r == 0 ? 0 : exit_usage;
    }

    try {
        if (*c) return chk.run();
        if (*b) {
            bn.pin_defaults = b->count("--liveness") + b->count("--edges") + b->count("--variant") +
                                  b->count("--non-zeno") == 0;
            return bn.run();
        }
        if (*g) {
            auto f = bench::parse_family(gen_family);
            if (!f) throw CLI::ValidationError("--family", "unknown family '" + gen_family + "'");
            if (gen_property.empty())
                std::cout << bench::model_text(*f, gen_n);
            else
                std::cout << bench::property_text(*f, gen_n, gen_property) << '\n';
            return 0;
        }
    } catch (const CLI::Error& e) {
        std::cerr << e.what() << '\n';
        return exit_usage;
    } catch (const parse_error& e) {
        for (const auto& m : e.messages()) std::cerr << to_string(m.span) << ": " << m.message << '\n';
        return exit_input;
    } catch (const declaration_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const menc::encoding_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_input;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return exit_internal;
    }
    return exit_internal;
}
