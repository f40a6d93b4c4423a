#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "jumprl/precond.hpp"
#include "jumprl/sat.hpp"

namespace jumprl {

struct Predecessor {
    Addr from;
    EdgeKind kind;
    friend bool operator==(const Predecessor&, const Predecessor&) = default;
};

/// Sorted by address, then-edge before else-edge before ijump. Every block
/// ending in an indirect jump is a predecessor of every block.
std::vector<Predecessor> predecessors(const Program& p, Addr a);

/// One block on a path to Exit: the edge it leaves by, and the store cases
/// chosen inside it.
struct TraceStep {
    Addr block;
    EdgeKind edge;
    std::vector<std::string> tags;
};

struct SearchNode {
    Addr at;
    Predicate pred;  // holds on entry to `at`
    std::vector<TraceStep> trace;  // from `at` to an Exit block
    std::size_t depth{0};
    Verdict verdict;  // from pruning, when computed
    std::size_t tree_id{0};
};

struct Witness {
    Predicate precondition;
    std::vector<TraceStep> trace;
    std::size_t depth{0};
    Verdict verdict;

    [[nodiscard]] std::vector<Addr> blocks() const;
    [[nodiscard]] std::vector<std::string> case_tags() const;
};

enum class PruneTier { None, Syntactic, Bounded };
std::string_view to_string(PruneTier t);

struct SearchConfig {
    std::size_t max_depth{8};
    std::size_t max_witnesses{64};
    std::size_t max_nodes{20000};  // expansions
    PruneTier prune{PruneTier::Bounded};
    SatConfig sat;
    bool record_tree{false};
    // Fault injection for sanity-checking the test suites.
    bool swap_jump_polarity{false};
};

struct ExploreReport {
    std::size_t generated{0};
    std::size_t pruned{0};
    std::size_t expanded{0};
    std::size_t emitted{0};
    std::string stop_reason;  // "frontier-empty", "max-witnesses", "max-nodes"
};

struct SearchTree {
    struct Node {
        std::string id;
        std::string label;
        bool pruned{false};
        bool witness{false};
    };
    struct Edge {
        std::size_t from;
        std::size_t to;
        std::string label;
    };
    std::vector<Node> nodes;
    std::vector<Edge> edges;
};

struct Exploration {
    std::vector<Witness> witnesses;
    ExploreReport report;
    SearchTree tree;
};

/// A name supply clear of every name in `p` and `q`.
NameSupply search_names(const Program& p, const Predicate& q);

/// `q` pulled back through the statements of every Exit block; pruned
/// candidates are dropped.
std::vector<SearchNode> roots(const Program& p, const Predicate& q, const SearchConfig& cfg, NameSupply& names);

/// Children of `node` along every predecessor edge, pruned per `cfg`.
std::vector<SearchNode> expand(const SearchNode& node, const Program& p, const SearchConfig& cfg,
                               NameSupply& names);

/// Breadth-first backward search from the Exit blocks to the entry. The
/// visitor sees witnesses in canonical order and returns false to stop.
ExploreReport explore(const Program& p, const Predicate& q, const SearchConfig& cfg,
                      const std::function<bool(const Witness&)>& on_witness, SearchTree* tree = nullptr);

Exploration explore(const Program& p, const Predicate& q, const SearchConfig& cfg);

std::string to_dot(const SearchTree& tree);

} // namespace jumprl
