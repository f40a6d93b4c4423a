#pragma once

#include "jumprl/expr.hpp"
#include "jumprl/state.hpp"

namespace jumprl {

/// Evaluate `e` against an environment providing
///   Word variable(const std::string&)   -- may throw (e.g. UnboundVariable)
///   Word load(Word address)
/// `&&` and `||` short-circuit. Division by zero throws ArithmeticFault.
template <typename Env>
Word evaluate(const Expr& e, Env& env, Width width) {
    switch (e.kind()) {
    case ExprKind::Literal: return width.wrap(e.value().value());
    case ExprKind::Var: return env.variable(e.name());
    case ExprKind::Deref: return env.load(evaluate(e.operand(), env, width));
    case ExprKind::Not: return word_not(evaluate(e.operand(), env, width));
    case ExprKind::Binary: {
        const auto op = e.op();
        const Word lhs = evaluate(e.lhs(), env, width);
        if (op == BinaryOp::And && !lhs.truthy()) {
            return Word{0};
        }
        if (op == BinaryOp::Or && lhs.truthy()) {
            return Word{1};
        }
        return word_op(op, lhs, evaluate(e.rhs(), env, width), width);
    }
    }
    return Word{0};
}

/// Environment over a concrete State.
struct StateEnv {
    const State& state;
    Word variable(const std::string& name) const { return state.var(name); }
    Word load(Word a) const { return state.mem.read(a); }
};

inline Word eval_expr(const State& s, const Expr& e, Width width = {}) {
    StateEnv env{s};
    return evaluate(e, env, width);
}

} // namespace jumprl
