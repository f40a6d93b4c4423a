#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <string_view>

#include "jumprl/word.hpp"

namespace jumprl {

enum class ExprKind { Literal, Var, Deref, Binary, Not };

/// Immutable expression tree with shared structure. Copies are cheap.
class Expr {
  public:
    Expr();  // literal 0

    static Expr literal(Word w);
    static Expr literal(std::int64_t v) { return literal(Word{v}); }
    static Expr var(std::string name);
    static Expr deref(Expr address);
    static Expr binary(BinaryOp op, Expr lhs, Expr rhs);
    static Expr negate(Expr operand);

    static Expr truth() { return literal(1); }
    static Expr falsity() { return literal(0); }

    [[nodiscard]] ExprKind kind() const;
    [[nodiscard]] Word value() const;                 // Literal
    [[nodiscard]] const std::string& name() const;    // Var
    [[nodiscard]] BinaryOp op() const;                // Binary
    [[nodiscard]] const Expr& operand() const;        // Deref, Not
    [[nodiscard]] const Expr& lhs() const;            // Binary
    [[nodiscard]] const Expr& rhs() const;            // Binary

    [[nodiscard]] bool is_literal() const { return kind() == ExprKind::Literal; }
    [[nodiscard]] bool is_literal(std::int64_t v) const { return is_literal() && value().value() == v; }
    [[nodiscard]] bool is_var() const { return kind() == ExprKind::Var; }
    [[nodiscard]] bool is_binary(BinaryOp op) const { return kind() == ExprKind::Binary && this->op() == op; }

    /// Contains a `/` or `%` whose divisor is not a non-zero literal.
    [[nodiscard]] bool can_fault() const;
    [[nodiscard]] bool has_deref() const;
    /// Evaluates to 0 or 1 for every state in which it does not fault.
    [[nodiscard]] bool is_boolean() const;
    [[nodiscard]] std::size_t hash() const;
    [[nodiscard]] std::size_t size() const;

    [[nodiscard]] bool same_node(const Expr& other) const { return node_ == other.node_; }

    friend bool operator==(const Expr& a, const Expr& b);
    friend std::strong_ordering operator<=>(const Expr& a, const Expr& b);

    struct Node;  // opaque

  private:
    explicit Expr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

Expr operator&&(const Expr& a, const Expr& b);
Expr operator||(const Expr& a, const Expr& b);
Expr operator!(const Expr& a);

/// Conjunction that drops literal-true operands.
Expr conjoin(const Expr& a, const Expr& b);

/// Replace free occurrences of variable `v` by `e`.
Expr substitute(const Expr& target, std::string_view v, const Expr& e);

bool mentions(const Expr& e, std::string_view v);
void collect_vars(const Expr& e, std::set<std::string>& out);

/// Text form accepted by the parser (minimal parentheses).
std::string to_string(const Expr& e);

} // namespace jumprl
