#include <sstream>

#include "jumprl/parser.hpp"

namespace jumprl {

namespace {

constexpr int kUnaryPrec = 7;
constexpr int kAtomPrec = 8;

int binary_prec(BinaryOp op) {
    switch (op) {
    case BinaryOp::Or: return 1;
    case BinaryOp::And: return 2;
    case BinaryOp::Eq:
    case BinaryOp::Ne: return 3;
    case BinaryOp::Lt:
    case BinaryOp::Le:
    case BinaryOp::Gt:
    case BinaryOp::Ge: return 4;
    case BinaryOp::Add:
    case BinaryOp::Sub: return 5;
    case BinaryOp::Mul:
    case BinaryOp::Div:
    case BinaryOp::Mod: return 6;
    case BinaryOp::Sep:
    case BinaryOp::Alias: return kAtomPrec;
    }
    return 0;
}

int prec(const Expr& e) {
    switch (e.kind()) {
    case ExprKind::Literal: return e.value().value() < 0 ? kUnaryPrec : kAtomPrec;
    case ExprKind::Var:
    case ExprKind::Deref: return kAtomPrec;
    case ExprKind::Not: return kUnaryPrec;
    case ExprKind::Binary: return binary_prec(e.op());
    }
    return 0;
}

void print(std::ostream& out, const Expr& e);

void print_at(std::ostream& out, const Expr& e, bool parens) {
    if (parens) {
        out << '(';
    }
    print(out, e);
    if (parens) {
        out << ')';
    }
}

void print(std::ostream& out, const Expr& e) {
    switch (e.kind()) {
    case ExprKind::Literal: out << e.value().value(); return;
    case ExprKind::Var: out << e.name(); return;
    case ExprKind::Deref:
        out << '[';
        print(out, e.operand());
        out << ']';
        return;
    case ExprKind::Not:
        out << '!';
        print_at(out, e.operand(), prec(e.operand()) < kUnaryPrec);
        return;
    case ExprKind::Binary: {
        const auto op = e.op();
        if (op == BinaryOp::Sep || op == BinaryOp::Alias) {
            out << symbol(op) << '(';
            print(out, e.lhs());
            out << ", ";
            print(out, e.rhs());
            out << ')';
            return;
        }
        const int p = binary_prec(op);
        print_at(out, e.lhs(), prec(e.lhs()) < p);
        out << ' ' << symbol(op) << ' ';
        print_at(out, e.rhs(), prec(e.rhs()) <= p);
        return;
    }
    }
}

} // namespace

std::string to_string(const Expr& e) {
    std::ostringstream out;
    print(out, e);
    return out.str();
}

std::string to_string(const Predicate& p) {
    std::ostringstream out;
    for (const auto& q : p.prefix()) {
        out << "E " << q.var << " in ";
        print_at(out, q.bound, prec(q.bound) < kAtomPrec);
        out << " . ";
    }
    print(out, p.matrix());
    return out.str();
}

std::string to_string(const Stmt& s) {
    std::ostringstream out;
    if (const auto* a = std::get_if<Assign>(&s)) {
        out << a->var << " := ";
        print(out, a->value);
    } else if (const auto* n = std::get_if<NondetAssign>(&s)) {
        out << n->var << " <- some ";
        print(out, n->cond);
    } else {
        const auto& st = std::get<Store>(s);
        out << '[';
        print(out, st.address);
        out << "] := ";
        print(out, st.value);
    }
    return out.str();
}

std::string to_string(const Terminator& t) {
    std::ostringstream out;
    if (const auto* j = std::get_if<Jump>(&t)) {
        out << "jump ";
        print_at(out, j->cond, prec(j->cond) < kUnaryPrec);
        out << ' ' << j->then_target.value() << ' ' << j->else_target.value();
    } else if (const auto* ij = std::get_if<IJump>(&t)) {
        out << "ijump ";
        print(out, ij->target);
    } else {
        out << "exit";
    }
    return out.str();
}

std::string print_program(const Program& p) {
    std::ostringstream out;
    out << "entry " << p.entry().value() << '\n';
    for (const auto& [a, b] : p.blocks()) {
        out << "block " << a.value() << ": ";
        for (const auto& s : b.stmts) {
            out << to_string(s) << "; ";
        }
        out << to_string(b.terminator) << '\n';
    }
    return out.str();
}

} // namespace jumprl
