#pragma once

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "jumprl/harness.hpp"
#include "jumprl/parser.hpp"

namespace testing {

using namespace jumprl;

inline std::string slurp(const std::filesystem::path& f) {
    std::ifstream in(f, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

inline std::filesystem::path corpus_dir() { return default_corpus_dir(); }

inline Program corpus_program(const std::string& name) {
    return parse_program(slurp(corpus_dir() / name / "program.jmp"));
}

inline State state(const std::string& text) { return parse_state(text); }

// Random expressions for property tests. Division and memory optional.
struct ExprGen {
    std::mt19937_64 rng;
    bool division{true};
    bool memory{true};
    std::vector<std::string> vars{"x", "y", "z"};

    explicit ExprGen(std::uint64_t seed) : rng(seed) {}

    std::size_t pick(std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
    std::int64_t lit() { return std::uniform_int_distribution<std::int64_t>(-3, 3)(rng); }

    Expr atom() {
        switch (pick(memory ? 3 : 2)) {
        case 0: return Expr::var(vars[pick(vars.size())]);
        case 1: return Expr::literal(lit());
        default: return Expr::deref(Expr::var(vars[pick(vars.size())]));
        }
    }

    Expr term(int depth) {
        if (depth <= 0 || pick(3) == 0) {
            return atom();
        }
        static const std::vector<BinaryOp> arith{BinaryOp::Add, BinaryOp::Sub, BinaryOp::Mul, BinaryOp::Div,
                                                 BinaryOp::Mod};
        const BinaryOp op = arith[pick(division ? arith.size() : 3)];
        return Expr::binary(op, term(depth - 1), term(depth - 1));
    }

    Expr formula(int depth) {
        static const std::vector<BinaryOp> cmp{BinaryOp::Lt, BinaryOp::Le, BinaryOp::Eq, BinaryOp::Ne,
                                               BinaryOp::Gt, BinaryOp::Ge, BinaryOp::Sep, BinaryOp::Alias};
        if (depth <= 0 || pick(3) == 0) {
            return Expr::binary(cmp[pick(memory ? cmp.size() : 6)], term(1), term(1));
        }
        switch (pick(4)) {
        case 0: return Expr::binary(BinaryOp::And, formula(depth - 1), formula(depth - 1));
        case 1: return Expr::binary(BinaryOp::Or, formula(depth - 1), formula(depth - 1));
        case 2: return Expr::negate(formula(depth - 1));
        default: return term(depth);
        }
    }

    Predicate predicate(int depth) {
        Predicate body(formula(depth));
        if (pick(3) == 0) {
            const std::string v = "$" + std::to_string(1 + pick(2));
            const Expr bound = Expr::binary(BinaryOp::Lt, Expr::var(v), term(1));
            body = Predicate::exists(v, bound, subst(body, vars[pick(vars.size())], Expr::var(v)));
        }
        return body;
    }

    State random_state(const Domain& d) {
        State s;
        std::uniform_int_distribution<std::int64_t> val(d.lo, d.hi - 1);
        for (const auto& v : vars) {
            s.bind(v, Word{val(rng)});
        }
        for (std::int64_t a = d.lo; a < d.hi; ++a) {
            if (pick(2)) {
                s.mem.write_in_place(Word{a}, Word{val(rng)});
            }
        }
        return s;
    }
};

} // namespace testing
