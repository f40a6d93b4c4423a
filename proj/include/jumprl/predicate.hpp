#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "jumprl/expr.hpp"
#include "jumprl/state.hpp"

namespace jumprl {

/// One `E var in bound .` binder of a quantifier prefix.
struct Quantifier {
    std::string var;
    Expr bound;

    friend bool operator==(const Quantifier&, const Quantifier&) = default;
    friend auto operator<=>(const Quantifier&, const Quantifier&) = default;
};

/// A predicate is an expression under a (possibly empty) prefix of
/// existential quantifiers: `E i1 in e1 . ... E ik in ek . matrix`.
/// `E i in e . P` holds iff some w makes both e[i := w] and P[i := w] hold.
class Predicate {
  public:
    Predicate() : matrix_(Expr::truth()) {}
    explicit Predicate(Expr matrix) : matrix_(std::move(matrix)) {}
    Predicate(std::vector<Quantifier> prefix, Expr matrix)
        : prefix_(std::move(prefix)), matrix_(std::move(matrix)) {}

    static Predicate leaf(Expr e) { return Predicate(std::move(e)); }
    static Predicate exists(std::string var, Expr bound, Predicate body);

    [[nodiscard]] const std::vector<Quantifier>& prefix() const { return prefix_; }
    [[nodiscard]] const Expr& matrix() const { return matrix_; }
    [[nodiscard]] bool is_leaf() const { return prefix_.empty(); }

    /// Literal false matrix with no binders.
    [[nodiscard]] bool is_false() const { return prefix_.empty() && matrix_.is_literal(0); }

    friend bool operator==(const Predicate&, const Predicate&) = default;
    friend auto operator<=>(const Predicate&, const Predicate&) = default;

  private:
    std::vector<Quantifier> prefix_;
    Expr matrix_;
};

/// Concrete valuation of the initial state a predicate talks about.
struct Model {
    VarMap vars;
    std::map<Addr, Word> cells;

    [[nodiscard]] State to_state() const;
    friend auto operator<=>(const Model&, const Model&) = default;
    friend bool operator==(const Model&, const Model&) = default;
};

std::string to_string(const Model& m);

/// Allocates bound-variable names `$1`, `$2`, ... strictly increasing.
class NameSupply {
  public:
    explicit NameSupply(std::size_t next = 1) : next_(next) {}
    std::string fresh();
    [[nodiscard]] std::size_t peek() const { return next_; }

    /// A supply whose names do not clash with any `$k` already used in `names`.
    static NameSupply above(const std::set<std::string>& names);

  private:
    std::size_t next_;
};

/// Conjoin `e` into the matrix (inside the quantifier prefix).
Predicate conjoin(const Predicate& p, const Expr& e);
/// Conjoin two predicates; binders are concatenated (names must be disjoint).
Predicate conjoin(const Predicate& p, const Predicate& q);

/// Replace free occurrences of `v`, including inside binder bounds.
Predicate subst(const Predicate& p, std::string_view v, const Expr& e);

/// `E $k in bound[v := $k] . q[v := $k]` with a fresh `$k`.
Predicate fresh_exists(const Expr& bound, const Predicate& q, std::string_view v, NameSupply& names);

std::set<std::string> free_vars(const Predicate& p);
/// Bound and free names together.
std::set<std::string> all_names(const Predicate& p);

/// Rename every binder to a fresh name from `names`.
Predicate alpha_rename(const Predicate& p, NameSupply& names);

/// Bound names of every predicate in `preds` are pairwise distinct.
bool binders_unique(const std::vector<Predicate>& preds);

struct HoldsReport {
    std::size_t faulting_witnesses{0};
    bool faulted{false};
};

/// Bounded truth: Exists ranges over `witnesses`; cells absent from the
/// model read as 0; evaluation faults count as not holding.
bool holds(const Predicate& p, const Model& model, const Domain& witnesses, Width width = {},
           HoldsReport* report = nullptr);

/// Same, over a full state (memory and variables).
bool holds(const Predicate& p, const State& state, const Domain& witnesses, Width width = {},
           HoldsReport* report = nullptr);

std::string to_string(const Predicate& p);

} // namespace jumprl
