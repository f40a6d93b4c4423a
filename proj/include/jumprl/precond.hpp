#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "jumprl/predicate.hpp"
#include "jumprl/program.hpp"

namespace jumprl {

/// One case of the store analysis: `pred` holds before `[addr] := value`
/// provided `constraint` (a conjunction of sep/alias atoms) also holds.
struct CasePredicate {
    Predicate pred;
    Expr constraint;
    std::vector<std::string> tags;  // one per split, e.g. "sep(b, e)"
};

/// Cases for a store in front of `q`. Every dereference in `q` splits into
/// a "separate" case (cell untouched) and an "aliased" case (cell replaced
/// by `value`); other constructs map over their parts and combine by cross
/// product. The address inside a dereference is left as is.
std::vector<CasePredicate> pre_store(const Expr& address, const Expr& value, const Predicate& q);

/// Predicate with its accumulated case tags.
struct Derived {
    Predicate pred;
    std::vector<std::string> tags;
};

/// Simplified preconditions of one statement.
std::vector<Derived> tau_stmt_cases(const Stmt& s, const Derived& q, NameSupply& names, Width width = {});
std::vector<Predicate> tau_stmt(const Stmt& s, const Predicate& q, NameSupply& names, Width width = {});

enum class EdgeKind { Then, Else, Indirect, Exit };
std::string_view to_string(EdgeKind k);

/// Precondition at the end of a block for reaching `target` through its
/// terminator along `kind`. Throws std::invalid_argument for a successor the
/// terminator cannot take.
Predicate tau_edge(const Terminator& t, EdgeKind kind, Addr target, const Predicate& q);

/// Statement-by-statement record of a backward pass through a block.
/// levels[0] holds the input; levels[k] the cases after the last k
/// statements; `parent` indexes into the previous level.
struct BlockStep {
    Derived value;
    std::size_t parent{0};
};
struct BlockTrace {
    std::vector<std::vector<BlockStep>> levels;
    [[nodiscard]] const std::vector<BlockStep>& result() const { return levels.back(); }
};

BlockTrace tau_block_traced(const std::vector<Stmt>& stmts, const Derived& q, NameSupply& names, Width width = {});

/// Right-to-left fold of tau_stmt over `stmts`, deduplicated.
std::vector<Predicate> tau_block_stmts(const std::vector<Stmt>& stmts, const Predicate& q, NameSupply& names,
                                       Width width = {});

} // namespace jumprl
