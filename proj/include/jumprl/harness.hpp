#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "jumprl/interpreter.hpp"
#include "jumprl/run_config.hpp"
#include "jumprl/search.hpp"

namespace jumprl {

// ---------------------------------------------------------------- state spaces

/// A finite set of initial states: each variable over its own interval,
/// each listed cell over `cell_values`, every other cell 0. `choices`
/// resolves `<- some` and existential witnesses.
struct StateSpace {
    std::map<std::string, Domain> vars;
    std::vector<Addr> cells;
    Domain cell_values;
    Domain choices;

    [[nodiscard]] std::size_t size() const;
};

void for_each_state(const StateSpace& space, const std::function<void(const State&)>& visit);

/// Variables that may be read before being assigned on some path, counting
/// the postcondition as a read at every Exit.
std::set<std::string> input_variables(const Program& p, const Predicate& q);

struct OracleReport {
    std::map<State, std::size_t> exploits;  // initial state -> blocks in the shortest run ending in q
    std::size_t states{0};
    std::size_t nonterminating{0};  // states with some run out of fuel
    std::set<State> stuck;          // those states
    bool exhausted{false};  // run budget hit; the report is incomplete
};

/// Brute force: every state of the space from which some run exits in q.
/// A nonzero `run_budget` caps the runs explored per state.
OracleReport oracle_exploit_set(const Program& p, const Predicate& q, const StateSpace& space, std::size_t fuel,
                                Width width = {}, std::size_t run_budget = 0);

/// States of the space satisfying at least one witness precondition.
std::set<State> witness_model_union(const std::vector<Witness>& ws, const StateSpace& space, Width width = {});

// ---------------------------------------------------------------- corpus

struct CorpusCase {
    std::string name;
    std::filesystem::path dir;
    std::string kind;  // "litmus", "study" or "smoke"
    std::string program_text;
    Program program{Word{0}, {{Word{0}, Block{}}}};
    Predicate post;
    RunConfig config;
    std::optional<StateSpace> space;  // explicit oracle space, if given
    nlohmann::json expect;
};

std::filesystem::path default_corpus_dir();
CorpusCase load_case(const std::filesystem::path& dir);
std::vector<CorpusCase> load_corpus(const std::filesystem::path& root);

/// The oracle space of a case: explicit, or every input variable over the
/// configured domain.
StateSpace space_for(const CorpusCase& c);

nlohmann::ordered_json witness_json(const Witness& w);
nlohmann::ordered_json report_json(const ExploreReport& r, const std::vector<Witness>& ws);

struct GenOutput {
    Exploration exploration;
    nlohmann::ordered_json json;  // {config, witnesses, report}
    bool found_sat{false};
};

GenOutput generate(const Program& p, const Predicate& q, const RunConfig& cfg, bool record_tree = false);

/// Exact contents expected in the case's expect.json.
std::string golden_text(const CorpusCase& c);

// ---------------------------------------------------------------- suites

struct SuiteReport {
    std::string name;
    std::size_t cases{0};
    std::size_t passed{0};
    std::size_t failed{0};
    std::size_t skipped{0};
    std::vector<std::string> failures;
    std::vector<std::string> notes;

    [[nodiscard]] bool ok() const { return failed == 0; }
    [[nodiscard]] nlohmann::ordered_json to_json() const;
};

/// Compare (or with `regen`, rewrite) the golden output of every litmus case.
SuiteReport litmus_suite(const std::vector<CorpusCase>& corpus, bool regen);

struct GenOptions {
    std::size_t max_blocks{4};
    std::size_t max_stmts{3};
    bool memory{true};
    bool nondet{true};
};

Program random_program(std::mt19937_64& rng, const GenOptions& opt = {});
Predicate random_post(std::mt19937_64& rng, const GenOptions& opt = {});

/// Greedily delete statements while `still_fails` keeps holding.
Program minimize(const Program& p, const std::function<bool(const Program&)>& still_fails);

struct SoundnessOptions {
    std::size_t slack{4};
    std::size_t completion_cap{64};
    std::size_t leaf_budget{400000};
};

struct Violation {
    Witness witness;
    State state;
};

/// Every bounded model of every witness must have a run exiting in q within
/// the witness's trace length plus slack.
std::optional<Violation> check_soundness(const Program& p, const Predicate& q, const std::vector<Witness>& ws,
                                         const Domain& domain, Width width, const SoundnessOptions& opt = {});

struct SoundnessConfig {
    std::size_t programs{200};
    std::uint64_t seed{7};
    Domain domain{-4, 4};
    std::size_t fuel{32};
    std::size_t max_depth{4};
    bool mutate{false};
};

SuiteReport soundness_suite(const std::vector<CorpusCase>& corpus, const SoundnessConfig& cfg);

struct CompletenessConfig {
    std::size_t programs{100};
    std::uint64_t seed{11};
    std::size_t fuel{24};
    std::size_t max_depth{6};
    std::size_t max_nodes{20000};
    std::size_t max_attempts{2000};
};

SuiteReport completeness_suite(const std::vector<CorpusCase>& corpus, const CompletenessConfig& cfg);

/// Randomized read-after-write and frame instances of the memory model.
SuiteReport axioms_suite(std::size_t instances = 10000, std::uint64_t seed = 1);

struct StudyReport {
    std::set<State> oracle;
    std::set<State> witness_models;
    std::size_t witnesses{0};
    std::size_t depth{0};
    bool equal{false};
    bool characterized{false};  // oracle set == arrays whose a[0] is above the minimum
    std::string detail;
};

/// Out-of-bounds study over the array cells of the partition case.
StudyReport quicksort_study(const CorpusCase& c);

} // namespace jumprl
