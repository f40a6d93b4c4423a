#pragma once

#include <chrono>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>

#include "jumprl/predicate.hpp"

namespace jumprl {

/// Equivalence-preserving rewrite (for models binding every free variable).
/// Folds constants, absorbs true/false, rewrites <=, >, >=, != into < / ==
/// plus negation, puts +, -, * by constants into a linear normal form, and
/// collapses conjunctions with complementary literals, contradicting
/// sep/alias atoms or one term equal to two distinct constants to false.
Predicate simplify(const Predicate& p, Width width = {});
Expr simplify(const Expr& e, Width width = {});

/// Syntactic unsatisfiability: simplify yields literal false.
bool tier1_unsat(const Predicate& p, Width width = {});

enum class VerdictKind { Unsat, Sat, Unknown };
std::string_view to_string(VerdictKind k);

struct Verdict {
    VerdictKind kind{VerdictKind::Unknown};
    std::optional<Model> model;
    int tier{0};  // tier that decided it
    std::string diagnostic;
};

struct SatConfig {
    bool bounded{true};  // Tier 2 enabled
    Domain domain;
    Width width;
    std::size_t budget{200000};  // Tier 2 predicate evaluations
    std::optional<std::string> solver;
    std::chrono::milliseconds solver_timeout{10000};
};

Verdict check_sat(const Predicate& p, const SatConfig& cfg);

/// Tier 2 alone: enumerate assignments to free variables and dereferenced
/// cells over the domain, branching only on what evaluation actually reads.
Verdict bounded_sat(const Predicate& p, const SatConfig& cfg);

/// Every partial model under which `p` holds; variables and cells not in a
/// reported model were never read and may take any value. Returns false if
/// the budget ran out.
bool for_each_model(const Predicate& p, const SatConfig& cfg, const std::function<void(const Model&)>& visit);

/// SMT-LIB v2 script over W-bit vectors. Faulting division is excluded by
/// explicit definedness guards.
std::string emit_smtlib(const Predicate& p, Width width = {});

/// Run the solver command (via /bin/sh) on `script`. Returns its verdict
/// with any constant assignments it printed.
Verdict run_solver(const std::string& command, const std::string& script, Width width,
                   std::chrono::milliseconds timeout);

/// Parse a solver reply (`sat`/`unsat`/`unknown`, optional model).
Verdict parse_solver_reply(const std::string& reply, Width width);

} // namespace jumprl
