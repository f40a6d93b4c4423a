#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

#include "jumprl/predicate.hpp"
#include "jumprl/program.hpp"
#include "jumprl/state.hpp"

namespace jumprl {

enum class FaultKind { DivZero, Unbound, BadIJumpTarget, NoChoice };

std::string_view to_string(FaultKind k);

using Trace = std::vector<Addr>;

/// An NDAssign with no acceptable choice.
class NoChoice : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

struct Exited {
    State state;
    Trace trace;
    friend auto operator<=>(const Exited&, const Exited&) = default;
    friend bool operator==(const Exited&, const Exited&) = default;
};

struct Faulted {
    FaultKind kind;
    Addr location;
    std::string detail;
};

struct OutOfFuel {
    Trace trace;
};

using Outcome = std::variant<Exited, Faulted, OutOfFuel>;

/// Resolves `v <- some e` choices.
class ChoiceOracle {
  public:
    /// Uniform among the candidates of `domain` that satisfy the condition.
    static ChoiceOracle seeded(std::uint64_t seed, Domain domain = {});
    /// Consumes values in order; a value failing the condition, or running
    /// out of values, is a fault.
    static ChoiceOracle scripted(std::vector<Word> values);
    /// Smallest satisfying candidate of `domain`.
    static ChoiceOracle exhaustive(Domain domain = {});

    /// `ok(w)` tells whether candidate w satisfies the condition.
    std::optional<Word> choose(const std::function<bool(Word)>& ok);

  private:
    enum class Strategy { Seeded, Scripted, Exhaustive };
    ChoiceOracle(Strategy s, Domain d) : strategy_(s), domain_(d) {}

    Strategy strategy_;
    Domain domain_;
    std::mt19937_64 rng_;
    std::vector<Word> script_;
    std::size_t next_{0};
};

/// Evaluation of an NDAssign condition with `var` bound to `candidate`.
/// Faults count as "not satisfied".
bool nd_accepts(const State& s, const NondetAssign& nd, Word candidate, Width width);

/// Candidates from `domain` that satisfy the NDAssign condition in `s`.
std::vector<Word> nd_candidates(const State& s, const NondetAssign& nd, const Domain& domain, Width width);

/// Execute one statement in place. Throws ArithmeticFault, UnboundVariable
/// or NoChoice.
void step_stmt(State& s, const Stmt& stmt, ChoiceOracle& oracle, Width width = {});

/// Fuel is the number of blocks that may be executed; fuel 0 never runs.
Outcome run(const Program& p, State s, ChoiceOracle& oracle, std::size_t fuel, Width width = {});

/// Depth-first over every resolution of every NDAssign drawn from `nd_domain`.
/// The visitor returns false to stop early.
void for_each_run(const Program& p, const State& s0, std::size_t fuel, const Domain& nd_domain, Width width,
                  const std::function<bool(const Outcome&)>& visit);

struct RunSet {
    std::set<Exited> exited;
    std::size_t faulted{0};
    std::size_t out_of_fuel{0};
};

RunSet enumerate_runs(const Program& p, const State& s0, std::size_t fuel, const Domain& nd_domain,
                      Width width = {});

/// Some run from `s0` exits in a state satisfying `q`; `trace_out` receives
/// the first such trace.
bool reaches(const Program& p, const State& s0, const Predicate& q, std::size_t fuel, const Domain& domain,
             Width width = {}, Trace* trace_out = nullptr);

std::string to_string(const Trace& t);

} // namespace jumprl
