#include "jumprl/expr.hpp"

#include <functional>

namespace jumprl {

struct Expr::Node {
    ExprKind kind{ExprKind::Literal};
    Word value{};
    std::string name;
    BinaryOp op{BinaryOp::Add};
    Expr a;  // Deref/Not operand, Binary lhs
    Expr b;  // Binary rhs
    std::size_t hash{0};
    std::size_t size{1};
    bool can_fault{false};
    bool has_deref{false};

    // Leaf constructor; Expr() needs a node that does not recurse into Expr().
    Node(ExprKind k, Word v, std::string n) : kind(k), value(v), name(std::move(n)), a(nullptr), b(nullptr) {}
    Node(ExprKind k, BinaryOp o, Expr lhs, Expr rhs)
        : kind(k), op(o), a(std::move(lhs)), b(std::move(rhs)) {}
};

namespace {

std::size_t mix(std::size_t seed, std::size_t v) {
    return seed ^ (v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2));
}

const std::shared_ptr<const Expr::Node>& zero_node();

} // namespace

Expr::Expr() : node_(zero_node()) {}

namespace {
const std::shared_ptr<const Expr::Node>& zero_node() {
    static const auto node = [] {
        auto n = std::make_shared<Expr::Node>(ExprKind::Literal, Word{0}, std::string{});
        n->hash = mix(1, 0);
        return std::shared_ptr<const Expr::Node>(std::move(n));
    }();
    return node;
}
} // namespace

Expr Expr::literal(Word w) {
    if (w.value() == 0) {
        return Expr{zero_node()};
    }
    auto n = std::make_shared<Node>(ExprKind::Literal, w, std::string{});
    n->hash = mix(1, static_cast<std::size_t>(w.value()));
    return Expr{std::move(n)};
}

Expr Expr::var(std::string name) {
    const auto h = std::hash<std::string>{}(name);
    auto n = std::make_shared<Node>(ExprKind::Var, Word{}, std::move(name));
    n->hash = mix(2, h);
    return Expr{std::move(n)};
}

Expr Expr::deref(Expr address) {
    auto n = std::make_shared<Node>(ExprKind::Deref, BinaryOp::Add, std::move(address), Expr{zero_node()});
    n->hash = mix(3, n->a.hash());
    n->size = 1 + n->a.size();
    n->can_fault = n->a.can_fault();
    n->has_deref = true;
    return Expr{std::move(n)};
}

Expr Expr::binary(BinaryOp op, Expr lhs, Expr rhs) {
    auto n = std::make_shared<Node>(ExprKind::Binary, op, std::move(lhs), std::move(rhs));
    n->hash = mix(mix(mix(4, static_cast<std::size_t>(op)), n->a.hash()), n->b.hash());
    n->size = 1 + n->a.size() + n->b.size();
    const bool divides = op == BinaryOp::Div || op == BinaryOp::Mod;
    const bool safe_divisor = n->b.is_literal() && n->b.value().value() != 0;
    n->can_fault = n->a.can_fault() || n->b.can_fault() || (divides && !safe_divisor);
    n->has_deref = n->a.has_deref() || n->b.has_deref();
    return Expr{std::move(n)};
}

Expr Expr::negate(Expr operand) {
    auto n = std::make_shared<Node>(ExprKind::Not, BinaryOp::Add, std::move(operand), Expr{zero_node()});
    n->hash = mix(5, n->a.hash());
    n->size = 1 + n->a.size();
    n->can_fault = n->a.can_fault();
    n->has_deref = n->a.has_deref();
    return Expr{std::move(n)};
}

ExprKind Expr::kind() const { return node_->kind; }
Word Expr::value() const { return node_->value; }
const std::string& Expr::name() const { return node_->name; }
BinaryOp Expr::op() const { return node_->op; }
const Expr& Expr::operand() const { return node_->a; }
const Expr& Expr::lhs() const { return node_->a; }
const Expr& Expr::rhs() const { return node_->b; }
bool Expr::can_fault() const { return node_->can_fault; }
bool Expr::has_deref() const { return node_->has_deref; }
std::size_t Expr::hash() const { return node_->hash; }
std::size_t Expr::size() const { return node_->size; }

bool Expr::is_boolean() const {
    switch (kind()) {
    case ExprKind::Literal: return value().value() == 0 || value().value() == 1;
    case ExprKind::Not: return true;
    case ExprKind::Binary: return yields_truth(op());
    default: return false;
    }
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) {
        return true;
    }
    if (a.hash() != b.hash() || a.kind() != b.kind()) {
        return false;
    }
    switch (a.kind()) {
    case ExprKind::Literal: return a.value() == b.value();
    case ExprKind::Var: return a.name() == b.name();
    case ExprKind::Deref:
    case ExprKind::Not: return a.operand() == b.operand();
    case ExprKind::Binary: return a.op() == b.op() && a.lhs() == b.lhs() && a.rhs() == b.rhs();
    }
    return false;
}

std::strong_ordering operator<=>(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) {
        return std::strong_ordering::equal;
    }
    if (auto c = a.kind() <=> b.kind(); c != 0) {
        return c;
    }
    switch (a.kind()) {
    case ExprKind::Literal: return a.value() <=> b.value();
    case ExprKind::Var: return a.name() <=> b.name();
    case ExprKind::Deref:
    case ExprKind::Not: return a.operand() <=> b.operand();
    case ExprKind::Binary:
        if (auto c = a.op() <=> b.op(); c != 0) {
            return c;
        }
        if (auto c = a.lhs() <=> b.lhs(); c != 0) {
            return c;
        }
        return a.rhs() <=> b.rhs();
    }
    return std::strong_ordering::equal;
}

Expr operator&&(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::And, a, b); }
Expr operator||(const Expr& a, const Expr& b) { return Expr::binary(BinaryOp::Or, a, b); }
Expr operator!(const Expr& a) { return Expr::negate(a); }

Expr conjoin(const Expr& a, const Expr& b) {
    if (a.is_literal(1)) {
        return b;
    }
    if (b.is_literal(1)) {
        return a;
    }
    return a && b;
}

Expr substitute(const Expr& target, std::string_view v, const Expr& e) {
    switch (target.kind()) {
    case ExprKind::Literal: return target;
    case ExprKind::Var: return target.name() == v ? e : target;
    case ExprKind::Deref: {
        auto inner = substitute(target.operand(), v, e);
        return inner.same_node(target.operand()) ? target : Expr::deref(std::move(inner));
    }
    case ExprKind::Not: {
        auto inner = substitute(target.operand(), v, e);
        return inner.same_node(target.operand()) ? target : Expr::negate(std::move(inner));
    }
    case ExprKind::Binary: {
        auto l = substitute(target.lhs(), v, e);
        auto r = substitute(target.rhs(), v, e);
        if (l.same_node(target.lhs()) && r.same_node(target.rhs())) {
            return target;
        }
        return Expr::binary(target.op(), std::move(l), std::move(r));
    }
    }
    return target;
}

bool mentions(const Expr& e, std::string_view v) {
    switch (e.kind()) {
    case ExprKind::Literal: return false;
    case ExprKind::Var: return e.name() == v;
    case ExprKind::Deref:
    case ExprKind::Not: return mentions(e.operand(), v);
    case ExprKind::Binary: return mentions(e.lhs(), v) || mentions(e.rhs(), v);
    }
    return false;
}

void collect_vars(const Expr& e, std::set<std::string>& out) {
    switch (e.kind()) {
    case ExprKind::Literal: return;
    case ExprKind::Var: out.insert(e.name()); return;
    case ExprKind::Deref:
    case ExprKind::Not: collect_vars(e.operand(), out); return;
    case ExprKind::Binary:
        collect_vars(e.lhs(), out);
        collect_vars(e.rhs(), out);
        return;
    }
}

} // namespace jumprl
