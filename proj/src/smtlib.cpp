#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <regex>
#include <sstream>

#include "jumprl/sat.hpp"

namespace jumprl {

namespace {

class Emitter {
  public:
    explicit Emitter(Width w) : w_(w) {}

    std::string zero() const { return literal(Word{0}); }
    std::string one() const { return literal(Word{1}); }

    std::string literal(Word v) const {
        const std::uint64_t mask = w_.bits() == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << w_.bits()) - 1);
        return "(_ bv" + std::to_string(static_cast<std::uint64_t>(v.value()) & mask) + " " +
               std::to_string(w_.bits()) + ")";
    }

    static std::string name(const std::string& n) { return "|" + n + "|"; }

    // Bit-vector term.
    std::string bv(const Expr& e) const {
        switch (e.kind()) {
        case ExprKind::Literal: return literal(e.value());
        case ExprKind::Var: return name(e.name());
        case ExprKind::Deref: return "(select mem " + bv(e.operand()) + ")";
        case ExprKind::Not: break;
        case ExprKind::Binary:
            switch (e.op()) {
            case BinaryOp::Add: return app("bvadd", e);
            case BinaryOp::Sub: return app("bvsub", e);
            case BinaryOp::Mul: return app("bvmul", e);
            case BinaryOp::Div: return app("bvsdiv", e);
            case BinaryOp::Mod: return app("bvsrem", e);
            default: break;
            }
        }
        return "(ite " + formula(e) + " " + one() + " " + zero() + ")";
    }

    // Truthiness as an SMT Bool.
    std::string formula(const Expr& e) const {
        switch (e.kind()) {
        case ExprKind::Literal: return e.value().truthy() ? "true" : "false";
        case ExprKind::Not: return "(not " + formula(e.operand()) + ")";
        case ExprKind::Binary:
            switch (e.op()) {
            case BinaryOp::Lt: return app("bvslt", e);
            case BinaryOp::Le: return app("bvsle", e);
            case BinaryOp::Gt: return app("bvsgt", e);
            case BinaryOp::Ge: return app("bvsge", e);
            case BinaryOp::Eq:
            case BinaryOp::Alias: return app("=", e);
            case BinaryOp::Ne:
            case BinaryOp::Sep: return "(not " + app("=", e) + ")";
            case BinaryOp::And: return "(and " + formula(e.lhs()) + " " + formula(e.rhs()) + ")";
            case BinaryOp::Or: return "(or " + formula(e.lhs()) + " " + formula(e.rhs()) + ")";
            default: break;
            }
            break;
        default: break;
        }
        return "(not (= " + bv(e) + " " + zero() + "))";
    }

    // Evaluation of `e` does not fault (short-circuit aware).
    std::string defined(const Expr& e) const {
        if (!e.can_fault()) {
            return "true";
        }
        switch (e.kind()) {
        case ExprKind::Deref:
        case ExprKind::Not: return defined(e.operand());
        case ExprKind::Binary: {
            const auto l = defined(e.lhs());
            const auto r = defined(e.rhs());
            switch (e.op()) {
            case BinaryOp::And: return "(and " + l + " (=> " + formula(e.lhs()) + " " + r + "))";
            case BinaryOp::Or: return "(and " + l + " (=> (not " + formula(e.lhs()) + ") " + r + "))";
            case BinaryOp::Div:
            case BinaryOp::Mod: return "(and " + l + " " + r + " (not (= " + bv(e.rhs()) + " " + zero() + ")))";
            default: return "(and " + l + " " + r + ")";
            }
        }
        default: return "true";
        }
    }

    std::string holds(const Expr& e) const {
        return e.can_fault() ? "(and " + defined(e) + " " + formula(e) + ")" : formula(e);
    }

  private:
    Width w_;

    std::string app(const std::string& f, const Expr& e) const {
        return "(" + f + " " + bv(e.lhs()) + " " + bv(e.rhs()) + ")";
    }
};

bool predicate_has_deref(const Predicate& p) {
    if (p.matrix().has_deref()) {
        return true;
    }
    for (const auto& q : p.prefix()) {
        if (q.bound.has_deref()) {
            return true;
        }
    }
    return false;
}

} // namespace

std::string emit_smtlib(const Predicate& p, Width width) {
    Emitter em(width);
    const std::string sort = "(_ BitVec " + std::to_string(width.bits()) + ")";
    std::ostringstream out;
    out << "(set-logic ALL)\n";
    for (const auto& v : free_vars(p)) {
        out << "(declare-const " << Emitter::name(v) << ' ' << sort << ")\n";
    }
    if (predicate_has_deref(p)) {
        out << "(declare-const mem (Array " << sort << ' ' << sort << "))\n";
    }
    std::string body = em.holds(p.matrix());
    for (auto it = p.prefix().rbegin(); it != p.prefix().rend(); ++it) {
        body = "(exists ((" + Emitter::name(it->var) + ' ' + sort + ")) (and " + em.holds(it->bound) + ' ' + body +
               "))";
    }
    out << "(assert " << body << ")\n";
    out << "(check-sat)\n(get-model)\n";
    return out.str();
}

Verdict parse_solver_reply(const std::string& reply, Width width) {
    Verdict v;
    v.tier = 3;
    std::istringstream in(reply);
    std::string first;
    in >> first;
    if (first == "sat") {
        v.kind = VerdictKind::Sat;
    } else if (first == "unsat") {
        v.kind = VerdictKind::Unsat;
        return v;
    } else {
        v.kind = VerdictKind::Unknown;
        v.diagnostic = first == "unknown" ? "solver returned unknown" : "unrecognized solver reply";
        return v;
    }
    static const std::regex def(
        R"(\(define-fun\s+\|?([^\s|()]+)\|?\s+\(\)\s+\(_\s+BitVec\s+\d+\)\s+(#x[0-9a-fA-F]+|#b[01]+|\(_\s+bv(\d+)\s+\d+\))\s*\))");
    Model m;
    for (std::sregex_iterator it(reply.begin(), reply.end(), def), end; it != end; ++it) {
        const std::string value = (*it)[2];
        std::uint64_t raw = 0;
        if (value.rfind("#x", 0) == 0) {
            raw = std::stoull(value.substr(2), nullptr, 16);
        } else if (value.rfind("#b", 0) == 0) {
            raw = std::stoull(value.substr(2), nullptr, 2);
        } else {
            raw = std::stoull((*it)[3]);
        }
        m.vars[(*it)[1]] = width.wrap(raw);
    }
    v.model = std::move(m);
    return v;
}

Verdict run_solver(const std::string& command, const std::string& script, Width width,
                   std::chrono::milliseconds timeout) {
    Verdict fail;
    fail.tier = 3;
    int in_pipe[2];
    int out_pipe[2];
    if (pipe(in_pipe) != 0) {
        fail.diagnostic = "pipe failed";
        return fail;
    }
    if (pipe(out_pipe) != 0) {
        close(in_pipe[0]);
        close(in_pipe[1]);
        fail.diagnostic = "pipe failed";
        return fail;
    }
    const pid_t pid = fork();
    if (pid < 0) {
        fail.diagnostic = "fork failed";
        return fail;
    }
    if (pid == 0) {
        dup2(in_pipe[0], STDIN_FILENO);
        dup2(out_pipe[1], STDOUT_FILENO);
        close(in_pipe[0]);
        close(in_pipe[1]);
        close(out_pipe[0]);
        close(out_pipe[1]);
        execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
        _exit(127);
    }
    close(in_pipe[0]);
    close(out_pipe[1]);

    // A solver that exits early must not kill us with SIGPIPE.
    struct sigaction ignore {};
    struct sigaction previous {};
    ignore.sa_handler = SIG_IGN;
    sigaction(SIGPIPE, &ignore, &previous);
    std::size_t written = 0;
    while (written < script.size()) {
        const ssize_t n = write(in_pipe[1], script.data() + written, script.size() - written);
        if (n <= 0) {
            break;
        }
        written += static_cast<std::size_t>(n);
    }
    close(in_pipe[1]);
    sigaction(SIGPIPE, &previous, nullptr);

    std::string reply;
    const auto deadline = std::chrono::steady_clock::now() + timeout;
    bool timed_out = false;
    char buf[4096];
    while (true) {
        const auto left =
            std::chrono::duration_cast<std::chrono::milliseconds>(deadline - std::chrono::steady_clock::now());
        if (left.count() <= 0) {
            timed_out = true;
            break;
        }
        pollfd pfd{out_pipe[0], POLLIN, 0};
        const int r = poll(&pfd, 1, static_cast<int>(left.count()));
        if (r < 0 && errno == EINTR) {
            continue;
        }
        if (r <= 0) {
            timed_out = r == 0;
            break;
        }
        const ssize_t n = read(out_pipe[0], buf, sizeof buf);
        if (n <= 0) {
            break;
        }
        reply.append(buf, static_cast<std::size_t>(n));
    }
    close(out_pipe[0]);
    if (timed_out) {
        kill(pid, SIGKILL);
    }
    int status = 0;
    waitpid(pid, &status, 0);
    if (timed_out) {
        fail.diagnostic = "solver timed out";
        return fail;
    }
    if (reply.empty()) {
        fail.diagnostic = "solver produced no output";
        return fail;
    }
    return parse_solver_reply(reply, width);
}

} // namespace jumprl
