#include "jumprl/search.hpp"

#include <deque>
#include <map>
#include <sstream>

#include "jumprl/parser.hpp"

namespace jumprl {

std::vector<Predecessor> predecessors(const Program& p, Addr a) {
    std::vector<Predecessor> out;
    for (const auto& [addr, block] : p.blocks()) {
        if (const auto* j = std::get_if<Jump>(&block.terminator)) {
            if (j->then_target == a) {
                out.push_back({addr, EdgeKind::Then});
            }
            if (j->else_target == a) {
                out.push_back({addr, EdgeKind::Else});
            }
        } else if (std::holds_alternative<IJump>(block.terminator)) {
            out.push_back({addr, EdgeKind::Indirect});
        }
    }
    return out;
}

std::vector<Addr> Witness::blocks() const {
    std::vector<Addr> out;
    out.reserve(trace.size());
    for (const auto& s : trace) {
        out.push_back(s.block);
    }
    return out;
}

std::vector<std::string> Witness::case_tags() const {
    std::vector<std::string> out;
    for (const auto& s : trace) {
        out.insert(out.end(), s.tags.begin(), s.tags.end());
    }
    return out;
}

std::string_view to_string(PruneTier t) {
    switch (t) {
    case PruneTier::None: return "none";
    case PruneTier::Syntactic: return "syntactic";
    case PruneTier::Bounded: return "bounded";
    }
    return "?";
}

namespace {

class TreeRecorder {
  public:
    explicit TreeRecorder(SearchTree* tree) : tree_(tree) {}

    std::size_t add(std::optional<std::size_t> parent, const Predicate& pred, const std::string& edge_label) {
        if (!tree_) {
            return 0;
        }
        const std::size_t level = parent ? levels_[*parent] + 1 : 0;
        const std::size_t index = per_level_[level]++;
        const std::size_t id = tree_->nodes.size();
        tree_->nodes.push_back({"n" + std::to_string(level) + "_" + std::to_string(index), to_string(pred),
                                pred.is_false(), false});
        levels_.push_back(level);
        if (parent) {
            tree_->edges.push_back({*parent, id, edge_label});
        }
        return id;
    }

    void mark_pruned(std::size_t id) {
        if (tree_) {
            tree_->nodes[id].pruned = true;
        }
    }
    void mark_witness(std::size_t id) {
        if (tree_) {
            tree_->nodes[id].witness = true;
        }
    }

  private:
    SearchTree* tree_;
    std::vector<std::size_t> levels_;
    std::map<std::size_t, std::size_t> per_level_;
};

class Searcher {
  public:
    Searcher(const Program& p, const SearchConfig& cfg, SearchTree* tree, NameSupply& names)
        : p_(p), cfg_(cfg), rec_(tree), names_(names) {}

    ExploreReport run(const Predicate& q, const std::function<bool(const Witness&)>& on_witness) {
        push_roots(alpha_rename(q, names_));

        report_.stop_reason = "frontier-empty";
        while (!frontier_.empty()) {
            SearchNode node = std::move(frontier_.front());
            frontier_.pop_front();
            if (node.at == p_.entry()) {
                Witness w{node.pred, node.trace, node.depth, node.verdict};
                if (w.verdict.tier == 0) {
                    w.verdict = check_sat(node.pred, cfg_.sat);
                }
                rec_.mark_witness(node.tree_id);
                ++report_.emitted;
                const bool more = on_witness(w);
                if (!more || report_.emitted >= cfg_.max_witnesses) {
                    report_.stop_reason = "max-witnesses";
                    break;
                }
            }
            if (node.depth >= cfg_.max_depth) {
                continue;
            }
            if (report_.expanded >= cfg_.max_nodes) {
                report_.stop_reason = "max-nodes";
                break;
            }
            ++report_.expanded;
            expand(node);
        }
        return report_;
    }

    void push_roots(const Predicate& q) {
        const Predicate post = simplify(q, cfg_.sat.width);
        const std::size_t q_node = rec_.add(std::nullopt, post, "");
        for (const auto& [addr, block] : p_.blocks()) {
            if (std::holds_alternative<Exit>(block.terminator)) {
                push_block(addr, EdgeKind::Exit, block, post, {}, q_node, 0);
            }
        }
    }

    std::vector<SearchNode> take_frontier() {
        std::vector<SearchNode> out(std::make_move_iterator(frontier_.begin()),
                                    std::make_move_iterator(frontier_.end()));
        frontier_.clear();
        return out;
    }

    void expand(const SearchNode& node) {
        for (const auto& pre : predecessors(p_, node.at)) {
            const Block& b = p_.block(pre.from);
            EdgeKind kind = pre.kind;
            if (cfg_.swap_jump_polarity && kind != EdgeKind::Indirect) {
                kind = kind == EdgeKind::Then ? EdgeKind::Else : EdgeKind::Then;
            }
            Predicate at_end;
            if (kind == pre.kind) {
                at_end = tau_edge(b.terminator, kind, node.at, node.pred);
            } else {
                // Mutant: take the edge with the opposite branch condition.
                const auto& j = std::get<Jump>(b.terminator);
                at_end = conjoin(node.pred, kind == EdgeKind::Then ? j.cond : Expr::negate(j.cond));
            }
            at_end = simplify(at_end, cfg_.sat.width);
            std::string label = std::to_string(pre.from.value()) + " " + std::string(to_string(pre.kind)) + " -> " +
                                std::to_string(node.at.value());
            const std::size_t edge_node = rec_.add(node.tree_id, at_end, label);
            push_block(pre.from, pre.kind, b, at_end, node.trace, edge_node, node.depth + 1);
        }
    }

  private:
    const Program& p_;
    const SearchConfig& cfg_;
    TreeRecorder rec_;
    NameSupply& names_;
    std::deque<SearchNode> frontier_;
    ExploreReport report_;

    // Decide whether `pred` is dead; fills `verdict` when a check ran.
    bool prune(const Predicate& pred, Verdict& verdict) const {
        switch (cfg_.prune) {
        case PruneTier::None: return false;
        case PruneTier::Syntactic: return pred.is_false();
        case PruneTier::Bounded: {
            if (pred.is_false()) {
                return true;
            }
            SatConfig sc = cfg_.sat;
            sc.bounded = true;
            verdict = check_sat(pred, sc);
            return verdict.kind == VerdictKind::Unsat;
        }
        }
        return false;
    }

    void push_block(Addr addr, EdgeKind kind, const Block& block, const Predicate& at_end,
                    const std::vector<TraceStep>& rest, std::size_t tree_parent, std::size_t depth) {
        const BlockTrace bt = tau_block_traced(block.stmts, {at_end, {}}, names_, cfg_.sat.width);
        // Tree nodes for every statement level (level 0 is the parent itself).
        std::vector<std::size_t> ids{tree_parent};
        for (std::size_t lvl = 1; lvl < bt.levels.size(); ++lvl) {
            const auto& stmt = block.stmts[block.stmts.size() - lvl];
            std::vector<std::size_t> next;
            for (const auto& step : bt.levels[lvl]) {
                next.push_back(rec_.add(ids[step.parent], step.value.pred, to_string(stmt)));
            }
            ids = std::move(next);
        }
        const auto& result = bt.result();
        for (std::size_t i = 0; i < result.size(); ++i) {
            ++report_.generated;
            SearchNode child;
            child.at = addr;
            child.pred = result[i].value.pred;
            child.depth = depth;
            child.tree_id = ids[i];
            if (prune(child.pred, child.verdict)) {
                ++report_.pruned;
                rec_.mark_pruned(ids[i]);
                continue;
            }
            child.trace.reserve(rest.size() + 1);
            child.trace.push_back({addr, kind, result[i].value.tags});
            child.trace.insert(child.trace.end(), rest.begin(), rest.end());
            frontier_.push_back(std::move(child));
        }
    }
};

std::string dot_escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out;
}

} // namespace

NameSupply search_names(const Program& p, const Predicate& q) {
    std::set<std::string> used = all_names(q);
    for (const auto& v : p.variables()) {
        used.insert(v);
    }
    return NameSupply::above(used);
}

std::vector<SearchNode> roots(const Program& p, const Predicate& q, const SearchConfig& cfg, NameSupply& names) {
    Searcher s(p, cfg, nullptr, names);
    s.push_roots(q);
    return s.take_frontier();
}

std::vector<SearchNode> expand(const SearchNode& node, const Program& p, const SearchConfig& cfg,
                               NameSupply& names) {
    Searcher s(p, cfg, nullptr, names);
    s.expand(node);
    return s.take_frontier();
}

ExploreReport explore(const Program& p, const Predicate& q, const SearchConfig& cfg,
                      const std::function<bool(const Witness&)>& on_witness, SearchTree* tree) {
    NameSupply names = search_names(p, q);
    Searcher s(p, cfg, tree, names);
    return s.run(q, on_witness);
}

Exploration explore(const Program& p, const Predicate& q, const SearchConfig& cfg) {
    Exploration out;
    out.report = explore(
        p, q, cfg,
        [&](const Witness& w) {
            out.witnesses.push_back(w);
            return true;
        },
        cfg.record_tree ? &out.tree : nullptr);
    return out;
}

std::string to_dot(const SearchTree& tree) {
    std::ostringstream out;
    out << "digraph search {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n";
    for (const auto& n : tree.nodes) {
        out << "  " << n.id << " [label=\"" << dot_escape(n.label) << "\"";
        if (n.pruned) {
            out << ", color=red, style=dashed, xlabel=\"pruned\"";
        }
        if (n.witness) {
            out << ", peripheries=2";
        }
        out << "];\n";
    }
    for (const auto& e : tree.edges) {
        out << "  " << tree.nodes[e.from].id << " -> " << tree.nodes[e.to].id << " [label=\"" << dot_escape(e.label)
            << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

} // namespace jumprl
