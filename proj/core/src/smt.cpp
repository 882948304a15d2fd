#include "tamitl/smt.hpp"

#include <algorithm>
#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstring>
#include <functional>
#include <sstream>
#include <unordered_map>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace tamitl::smt {

using cltloc::formula;
using cltloc::op;

std::string script::symbol(const std::string& name, int pos) {
    return "|" + name + "@" + std::to_string(pos) + "|";
}
std::string script::delay_symbol(int pos) { return "|$delta@" + std::to_string(pos) + "|"; }
std::string script::loop_symbol(int pos) { return "|$loop@" + std::to_string(pos) + "|"; }

namespace {

std::string int_lit(std::int64_t v) {
    return v < 0 ? "(- " + std::to_string(-v) + ")" : std::to_string(v);
}

std::string real_lit(std::int64_t v) {
    return v < 0 ? "(- " + std::to_string(-v) + ".0)" : std::to_string(v) + ".0";
}

const char* rel_op(cmp c) {
    switch (c) {
        case cmp::lt: return "<";
        case cmp::eq: return "=";
        case cmp::gt: return ">";
    }
    return "=";
}

class unroller {
public:
    unroller(formula phi, const cltloc::signature& sig, int k, const unroll_options& opt)
        : phi_(phi), sig_(sig), k_(k), opt_(opt) {}

    script run() {
        if (k_ < 2) throw std::invalid_argument("bound must be at least 2");
        check_declared();
        number(phi_);
        script s;
        s.k = k_;
        o_ << "(set-logic QF_LIRA)\n";
        declare(s);
        frame();
        loop_constraints();
        definitions();
        o_ << "(assert " << at(phi_, 0) << ")\n";
        o_ << "(check-sat)\n";
        o_ << "(get-value (";
        for (std::size_t i = 0; i < s.value_symbols.size(); ++i) o_ << (i ? " " : "") << s.value_symbols[i];
        o_ << "))\n";
        s.text = o_.str();
        s.subformulas = order_.size();
        return s;
    }

private:
    void check_declared() {
        auto inv = cltloc::atoms_of(phi_);
        for (const auto& p : inv.props)
            if (!sig_.has_prop(p)) throw cltloc::undeclared_symbol("undeclared proposition '" + p + "'");
        for (const auto& c : inv.clocks)
            if (!sig_.has_clock(c)) throw cltloc::undeclared_symbol("undeclared clock '" + c + "'");
        for (const auto& v : inv.vars)
            if (!sig_.find_int(v)) throw cltloc::undeclared_symbol("undeclared variable '" + v + "'");
        for (auto* a : inv.clock_atoms) maxc_[a->name] = std::max(maxc_[a->name], a->value);
    }

    // post-order numbering of non-atomic nodes, deterministic in the formula structure
    void number(formula f) {
        if (ids_.count(f)) return;
        for (auto* k : f->kids) number(k);
        if (!inline_atom(f)) {
            ids_[f] = order_.size();
            order_.push_back(f);
        }
    }

    static bool inline_atom(formula f) {
        switch (f->kind) {
            case op::truth:
            case op::falsity:
            case op::prop:
            case op::clock_atom:
            case op::arith_atom: return true;
            default: return false;
        }
    }

    std::string expr(const int_expr& e, int pos) const {
        using K = int_expr::kind;
        switch (e.k) {
            case K::constant: return int_lit(e.value);
            case K::variable: return script::symbol(e.var, pos);
            case K::add: return "(+ " + expr(e.kids[0], pos) + " " + expr(e.kids[1], pos) + ")";
            case K::sub: return "(- " + expr(e.kids[0], pos) + " " + expr(e.kids[1], pos) + ")";
            case K::mul: return "(* " + expr(e.kids[0], pos) + " " + expr(e.kids[1], pos) + ")";
            case K::neg: return "(- " + expr(e.kids[0], pos) + ")";
        }
        return "0";
    }

    std::string at(formula f, int i) const {
        switch (f->kind) {
            case op::truth: return "true";
            case op::falsity: return "false";
            case op::prop: return script::symbol(f->name, i);
            case op::clock_atom:
                return std::string("(") + rel_op(f->rel) + " " + script::symbol(f->name, i) + " " +
                       real_lit(f->value) + ")";
            case op::arith_atom:
                return std::string("(") + rel_op(f->rel) + " " + expr(f->lhs, i) + " " + expr(f->rhs, i) + ")";
            default: return "|$f" + std::to_string(ids_.at(f)) + "@" + std::to_string(i) + "|";
        }
    }

    void declare(script& s) {
        for (int i = 0; i <= k_; ++i) {
            for (const auto& p : sig_.props) {
                o_ << "(declare-const " << script::symbol(p, i) << " Bool)\n";
                s.value_symbols.push_back(script::symbol(p, i));
            }
            for (const auto& c : sig_.clocks) {
                o_ << "(declare-const " << script::symbol(c, i) << " Real)\n";
                o_ << "(assert (>= " << script::symbol(c, i) << " 0.0))\n";
                s.value_symbols.push_back(script::symbol(c, i));
            }
            for (const auto& v : sig_.ints) {
                auto n = script::symbol(v.name, i);
                o_ << "(declare-const " << n << " Int)\n";
                o_ << "(assert (and (<= " << int_lit(v.lo) << " " << n << ") (<= " << n << " " << int_lit(v.hi)
                   << ")))\n";
                s.value_symbols.push_back(n);
            }
        }
        for (int i = 0; i < k_; ++i) {
            o_ << "(declare-const " << script::delay_symbol(i) << " Real)\n";
            o_ << "(assert (> " << script::delay_symbol(i) << " 0.0))\n";
            s.value_symbols.push_back(script::delay_symbol(i));
        }
        for (int j = 1; j < k_; ++j) {
            o_ << "(declare-const " << script::loop_symbol(j) << " Bool)\n";
            s.value_symbols.push_back(script::loop_symbol(j));
        }
        o_ << "(assert (= (+";
        for (int j = 1; j < k_; ++j) o_ << " (ite " << script::loop_symbol(j) << " 1 0)";
        o_ << (k_ == 2 ? " 0" : "") << ") 1))\n";
        for (std::size_t n = 0; n < order_.size(); ++n)
            for (int i = 0; i <= k_; ++i) o_ << "(declare-const |$f" << n << "@" << i << "| Bool)\n";
    }

    void frame() {
        for (int i = 0; i < k_; ++i)
            for (const auto& c : sig_.clocks) {
                auto a = script::symbol(c, i), b = script::symbol(c, i + 1);
                o_ << "(assert (or (= " << b << " (+ " << a << " " << script::delay_symbol(i) << ")) (= " << b
                   << " 0.0)))\n";
            }
    }

    // loop < j
    std::string loop_before(int j) const {
        std::string s = "(or false";
        for (int l = 1; l < j && l < k_; ++l) s += " " + script::loop_symbol(l);
        return s + ")";
    }

    void loop_constraints() {
        for (int j = 1; j < k_; ++j) {
            std::string eqs = "(and true";
            for (const auto& p : sig_.props) eqs += " (= " + script::symbol(p, j) + " " + script::symbol(p, k_) + ")";
            for (const auto& v : sig_.ints)
                eqs += " (= " + script::symbol(v.name, j) + " " + script::symbol(v.name, k_) + ")";
            eqs += ")";
            o_ << "(assert (=> " << script::loop_symbol(j) << " " << eqs << "))\n";
        }
        for (const auto& c : sig_.clocks) {
            bool free = std::find(opt_.free_clocks.begin(), opt_.free_clocks.end(), c) != opt_.free_clocks.end();
            auto it = maxc_.find(c);
            std::int64_t m = it == maxc_.end() ? 0 : it->second;
            if (!opt_.periodic_clocks || free) continue;
            std::string reset = "(or false";
            for (int j = 2; j <= k_; ++j)
                reset += " (and " + loop_before(j) + " (= " + script::symbol(c, j) + " 0.0))";
            reset += ")";
            std::string rname = "|$reset_in_loop:" + c + "|";
            o_ << "(declare-const " << rname << " Bool)\n";
            o_ << "(assert (= " << rname << " " << reset << "))\n";
            for (int j = 1; j < k_; ++j) {
                auto cj = script::symbol(c, j), ck = script::symbol(c, k_);
                o_ << "(assert (=> " << script::loop_symbol(j) << " (ite " << rname << " (= " << cj << " " << ck
                   << ") (and (> " << cj << " " << real_lit(m) << ") (> " << ck << " " << real_lit(m) << ")))))\n";
            }
        }
    }

    void loop_copy(formula f) {
        for (int j = 1; j < k_; ++j)
            o_ << "(assert (=> " << script::loop_symbol(j) << " (= " << at(f, k_) << " " << at(f, j) << ")))\n";
    }

    void definitions() {
        for (formula f : order_) {
            switch (f->kind) {
                case op::neg:
                case op::conj:
                case op::disj:
                case op::iff: {
                    const char* name = f->kind == op::neg ? "not" : f->kind == op::conj ? "and"
                                                                  : f->kind == op::disj ? "or" : "=";
                    for (int i = 0; i <= k_; ++i) {
                        o_ << "(assert (= " << at(f, i) << " (" << name;
                        for (auto* c : f->kids) o_ << " " << at(c, i);
                        o_ << ")))\n";
                    }
                    break;
                }
                case op::next_arith:
                    for (int i = 0; i < k_; ++i)
                        o_ << "(assert (= " << at(f, i) << " (" << rel_op(f->rel) << " "
                           << script::symbol(f->name, i + 1) << " " << expr(f->rhs, i) << ")))\n";
                    loop_copy(f);
                    break;
                case op::next:
                    for (int i = 0; i < k_; ++i)
                        o_ << "(assert (= " << at(f, i) << " " << at(f->kids[0], i + 1) << "))\n";
                    loop_copy(f);
                    break;
                case op::until:
                case op::release: {
                    bool u = f->kind == op::until;
                    auto* a = f->kids[0];
                    auto* b = f->kids[1];
                    for (int i = 0; i < k_; ++i) {
                        if (u)
                            o_ << "(assert (= " << at(f, i) << " (or " << at(b, i) << " (and " << at(a, i) << " "
                               << at(f, i + 1) << "))))\n";
                        else
                            o_ << "(assert (= " << at(f, i) << " (and " << at(b, i) << " (or " << at(a, i) << " "
                               << at(f, i + 1) << "))))\n";
                    }
                    loop_copy(f);
                    // eventuality: a pending until needs its right side somewhere on the loop
                    o_ << "(assert (=> " << (u ? at(f, k_) : "(not " + at(f, k_) + ")") << " (or false";
                    for (int j = 1; j < k_; ++j)
                        o_ << " (and " << loop_before(j + 1) << " " << (u ? at(b, j) : "(not " + at(b, j) + ")")
                           << ")";
                    o_ << ")))\n";
                    break;
                }
                default: break;
            }
        }
    }

    formula phi_;
    const cltloc::signature& sig_;
    int k_;
    unroll_options opt_;
    std::ostringstream o_;
    std::unordered_map<formula, std::size_t> ids_;
    std::vector<formula> order_;
    std::map<std::string, std::int64_t> maxc_;
};

}  // namespace

script unroll_bmc(formula phi, const cltloc::signature& sig, int k, const unroll_options& opt) {
    return unroller(phi, sig, k, opt).run();
}

std::string to_string(solver_result::status s) {
    switch (s) {
        case solver_result::status::sat: return "sat";
        case solver_result::status::unsat: return "unsat";
        case solver_result::status::unknown: return "unknown";
        case solver_result::status::timeout: return "timeout";
        case solver_result::status::error: return "error";
    }
    return "?";
}

namespace {

struct sexpr {
    std::string atom;
    std::vector<sexpr> list;
    bool is_list = false;
};

class sexpr_reader {
public:
    explicit sexpr_reader(const std::string& s) : s_(s) {}

    bool done() {
        skip();
        return i_ >= s_.size();
    }

    sexpr read() {
        skip();
        if (i_ >= s_.size()) throw std::runtime_error("unexpected end of solver output");
        sexpr e;
        if (s_[i_] == '(') {
            e.is_list = true;
            ++i_;
            for (;;) {
                skip();
                if (i_ >= s_.size()) throw std::runtime_error("unbalanced solver output");
                if (s_[i_] == ')') {
                    ++i_;
                    return e;
                }
                e.list.push_back(read());
            }
        }
        if (s_[i_] == '|') {
            std::size_t j = s_.find('|', i_ + 1);
            if (j == std::string::npos) throw std::runtime_error("unterminated symbol in solver output");
            e.atom = s_.substr(i_, j - i_ + 1);
            i_ = j + 1;
            return e;
        }
        if (s_[i_] == '"') {
            std::size_t j = i_ + 1;
            while (j < s_.size() && !(s_[j] == '"' && (j + 1 >= s_.size() || s_[j + 1] != '"'))) j += s_[j] == '"' ? 2 : 1;
            e.atom = s_.substr(i_, j - i_ + 1);
            i_ = j + 1;
            return e;
        }
        std::size_t j = i_;
        while (j < s_.size() && !std::isspace(static_cast<unsigned char>(s_[j])) && s_[j] != '(' && s_[j] != ')') ++j;
        e.atom = s_.substr(i_, j - i_);
        i_ = j;
        return e;
    }

private:
    void skip() {
        while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
    }
    const std::string& s_;
    std::size_t i_ = 0;
};

std::string render(const sexpr& e) {
    if (!e.is_list) return e.atom;
    std::string s = "(";
    for (std::size_t i = 0; i < e.list.size(); ++i) s += (i ? " " : "") + render(e.list[i]);
    return s + ")";
}

rational number_of(const sexpr& e) {
    if (!e.is_list) {
        const auto& a = e.atom;
        auto dot = a.find('.');
        if (dot == std::string::npos) return rational(mpz_class(a, 10));
        std::string digits = a.substr(0, dot) + a.substr(dot + 1);
        mpz_class den = 1;
        for (std::size_t i = dot + 1; i < a.size(); ++i) den *= 10;
        rational r(mpz_class(digits, 10), den);
        r.canonicalize();
        return r;
    }
    if (e.list.size() == 2 && e.list[0].atom == "-") return -number_of(e.list[1]);
    if (e.list.size() == 3 && e.list[0].atom == "/") return number_of(e.list[1]) / number_of(e.list[2]);
    throw std::runtime_error("unsupported numeral '" + render(e) + "'");
}

std::vector<std::string> split_command(const std::string& cmd) {
    std::istringstream in(cmd);
    std::vector<std::string> out;
    std::string w;
    while (in >> w) out.push_back(w);
    return out;
}

}  // namespace

rational parse_number(const std::string& text) {
    sexpr_reader r(text);
    return number_of(r.read());
}

solver_result run_solver(const std::string& script_text, const std::string& cmd, double timeout_s) {
    solver_result res;
    auto argv_s = split_command(cmd);
    if (argv_s.empty()) {
        res.reason = "empty solver command";
        return res;
    }
    int in_pipe[2], out_pipe[2];
    if (pipe(in_pipe) != 0 || pipe(out_pipe) != 0) {
        res.reason = std::string("pipe: ") + std::strerror(errno);
        return res;
    }
    auto start = std::chrono::steady_clock::now();
    pid_t pid = fork();
    if (pid < 0) {
        res.reason = std::string("fork: ") + std::strerror(errno);
        return res;
    }
    if (pid == 0) {
        dup2(in_pipe[0], 0);
        dup2(out_pipe[1], 1);
        dup2(out_pipe[1], 2);
        close(in_pipe[0]);
        close(in_pipe[1]);
        close(out_pipe[0]);
        close(out_pipe[1]);
        std::vector<char*> argv;
        for (auto& a : argv_s) argv.push_back(a.data());
        argv.push_back(nullptr);
        execvp(argv[0], argv.data());
        _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);
    std::signal(SIGPIPE, SIG_IGN);
    fcntl(in_pipe[1], F_SETFL, O_NONBLOCK);
    fcntl(out_pipe[0], F_SETFL, O_NONBLOCK);

    std::string output;
    std::size_t written = 0;
    bool in_open = true, timed_out = false;
    char buf[65536];
    for (;;) {
        double elapsed =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (timeout_s > 0 && elapsed > timeout_s) {
            timed_out = true;
            break;
        }
        pollfd fds[2];
        int nf = 0;
        fds[nf++] = {out_pipe[0], POLLIN, 0};
        if (in_open) fds[nf++] = {in_pipe[1], POLLOUT, 0};
        int wait_ms = 100;
        poll(fds, static_cast<nfds_t>(nf), wait_ms);
        if (in_open && (fds[1].revents & (POLLOUT | POLLERR | POLLHUP))) {
            ssize_t w = write(in_pipe[1], script_text.data() + written, script_text.size() - written);
            if (w > 0) written += static_cast<std::size_t>(w);
            if (w < 0 && errno != EAGAIN) written = script_text.size();
            if (written >= script_text.size()) {
                close(in_pipe[1]);
                in_open = false;
            }
        }
        if (fds[0].revents & (POLLIN | POLLHUP | POLLERR)) {
            ssize_t r = read(out_pipe[0], buf, sizeof buf);
            if (r > 0) output.append(buf, static_cast<std::size_t>(r));
            else if (r == 0) break;
        }
    }
    if (in_open) close(in_pipe[1]);
    close(out_pipe[0]);
    if (timed_out) kill(pid, SIGKILL);
    int status = 0;
    waitpid(pid, &status, 0);
    res.wall_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    if (timed_out) {
        res.st = solver_result::status::timeout;
        res.reason = "solver timeout";
        return res;
    }
    if (WIFEXITED(status) && WEXITSTATUS(status) == 127) {
        res.reason = "cannot launch solver '" + argv_s[0] + "'";
        return res;
    }
    try {
        sexpr_reader rd(output);
        if (rd.done()) {
            res.reason = "no solver output";
            return res;
        }
        auto first = rd.read();
        if (first.is_list) {
            res.reason = "solver error: " + render(first);
            return res;
        }
        if (first.atom == "unsat") {
            res.st = solver_result::status::unsat;
            return res;
        }
        if (first.atom == "unknown") {
            res.st = solver_result::status::unknown;
            res.reason = "solver returned unknown";
            return res;
        }
        if (first.atom == "timeout") {
            res.st = solver_result::status::timeout;
            res.reason = "solver timeout";
            return res;
        }
        if (first.atom != "sat") {
            res.reason = "unexpected solver output: " + output.substr(0, 200);
            return res;
        }
        auto vals = rd.read();
        if (!vals.is_list) {
            res.reason = "malformed get-value response";
            return res;
        }
        for (const auto& pair : vals.list) {
            if (!pair.is_list || pair.list.size() != 2) {
                res.reason = "malformed get-value entry: " + render(pair);
                return res;
            }
            res.values[render(pair.list[0])] = render(pair.list[1]);
        }
        res.st = solver_result::status::sat;
    } catch (const std::exception& e) {
        res.st = solver_result::status::error;
        res.reason = std::string("malformed solver output: ") + e.what();
    }
    return res;
}

cltloc::lasso decode_lasso(const solver_result& r, const script& s, const cltloc::signature& sig) {
    auto get = [&](const std::string& sym) -> const std::string& {
        auto it = r.values.find(sym);
        if (it == r.values.end()) throw std::runtime_error("model lacks value for " + sym);
        return it->second;
    };
    cltloc::lasso m;
    m.k = s.k;
    m.loop = 0;
    for (int j = 1; j < s.k; ++j)
        if (get(script::loop_symbol(j)) == "true") m.loop = j;
    if (m.loop == 0) throw std::runtime_error("model selects no loop position");
    m.props.resize(static_cast<std::size_t>(s.k + 1));
    m.clocks.resize(static_cast<std::size_t>(s.k + 1));
    m.ints.resize(static_cast<std::size_t>(s.k + 1));
    for (int i = 0; i <= s.k; ++i) {
        auto ui = static_cast<std::size_t>(i);
        for (const auto& p : sig.props)
            if (get(script::symbol(p, i)) == "true") m.props[ui].insert(p);
        for (const auto& c : sig.clocks) m.clocks[ui][c] = parse_number(get(script::symbol(c, i)));
        for (const auto& v : sig.ints) {
            rational q = parse_number(get(script::symbol(v.name, i)));
            m.ints[ui][v.name] = q.get_num().get_si();
        }
    }
    for (int i = 0; i < s.k; ++i) m.delays.push_back(parse_number(get(script::delay_symbol(i))));
    return m;
}

}  // namespace tamitl::smt
