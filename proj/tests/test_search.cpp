#include <doctest.h>

#include "support.hpp"

using namespace jumprl;

namespace {

SearchConfig config(PruneTier prune, std::size_t depth, Domain d = {-8, 8}) {
    SearchConfig cfg;
    cfg.prune = prune;
    cfg.max_depth = depth;
    cfg.sat.domain = d;
    return cfg;
}

std::vector<Predecessor> preds(std::initializer_list<std::pair<int, EdgeKind>> xs) {
    std::vector<Predecessor> out;
    for (auto [a, k] : xs) {
        out.push_back({Word{a}, k});
    }
    return out;
}

std::string text(const Witness& w) { return to_string(w.precondition) + " @" + to_string(w.blocks()); }

std::vector<std::string> texts(const std::vector<Witness>& ws) {
    std::vector<std::string> out;
    for (const auto& w : ws) {
        out.push_back(text(w));
    }
    return out;
}

// Binder numbering depends on how many nodes were expanded before.
std::string canonical(const Witness& w) {
    NameSupply names(1000);
    return to_string(alpha_rename(w.precondition, names)) + " @" + to_string(w.blocks());
}

} // namespace

TEST_CASE("predecessors") {
    const Program ind = testing::corpus_program("indirect");
    CHECK(predecessors(ind, Word{9}) == preds({{0, EdgeKind::Then},
                                              {1, EdgeKind::Indirect},
                                              {3, EdgeKind::Then},
                                              {3, EdgeKind::Else},
                                              {4, EdgeKind::Then},
                                              {4, EdgeKind::Else}}));
    CHECK(predecessors(ind, Word{0}) == preds({{1, EdgeKind::Indirect}}));

    const Program div = testing::corpus_program("division");
    CHECK(predecessors(div, Word{2}) == preds({{1, EdgeKind::Then}, {2, EdgeKind::Then}}));
    CHECK(predecessors(div, Word{0}).empty());
}

TEST_CASE("roots pull the postcondition through exit blocks") {
    const Program div = testing::corpus_program("division");
    const Predicate q = parse_predicate("x >= y");
    NameSupply names = search_names(div, q);
    const auto rs = roots(div, q, config(PruneTier::Syntactic, 4), names);
    REQUIRE(rs.size() == 1);
    CHECK(rs[0].at == Word{3});
    CHECK(rs[0].depth == 0);
    CHECK(rs[0].pred == simplify(q));
    REQUIRE(rs[0].trace.size() == 1);
    CHECK(rs[0].trace[0].edge == EdgeKind::Exit);

    const Program dead = parse_program("entry 0\nblock 0: y := 0; exit");
    NameSupply n2 = search_names(dead, parse_predicate("y > 0"));
    CHECK(roots(dead, parse_predicate("y > 0"), config(PruneTier::Syntactic, 4), n2).empty());
    CHECK(roots(dead, parse_predicate("y > 0"), config(PruneTier::None, 4), n2).size() == 1);

    const Program none = parse_program("entry 0\nblock 0: jump true 0 0");
    CHECK(roots(none, Predicate{}, config(PruneTier::None, 4), n2).empty());
}

TEST_CASE("expand one node") {
    const Program div = testing::corpus_program("division");
    const Predicate q = parse_predicate("x >= y");
    NameSupply names = search_names(div, q);
    const SearchNode root = roots(div, q, config(PruneTier::None, 4), names).at(0);

    // Entering from block 0 needs x < y; leaving block 1 by its else edge
    // needs x - y < y after x - y >= y. Only the loop exit survives.
    const auto pruned = expand(root, div, config(PruneTier::Syntactic, 4), names);
    REQUIRE(pruned.size() == 1);
    CHECK(pruned[0].at == Word{2});
    CHECK(pruned[0].trace[0].edge == EdgeKind::Else);
    const auto all = expand(root, div, config(PruneTier::None, 4), names);
    CHECK(all.size() == 3);
    const auto via0 = std::find_if(all.begin(), all.end(), [](const SearchNode& c) { return c.at == Word{0}; });
    REQUIRE(via0 != all.end());
    CHECK(via0->pred.is_false());
    CHECK(via0->depth == 1);
    CHECK(via0->trace.size() == 2);
    CHECK(via0->trace[0].edge == EdgeKind::Then);

    const Program ind = testing::corpus_program("indirect");
    SearchNode at4;
    at4.at = Word{4};
    at4.trace = {{Word{4}, EdgeKind::Then, {}}};
    NameSupply n2;
    const auto kids = expand(at4, ind, config(PruneTier::Syntactic, 4), n2);
    const auto via1 = std::find_if(kids.begin(), kids.end(), [](const SearchNode& c) { return c.at == Word{1}; });
    REQUIRE(via1 != kids.end());
    CHECK(via1->pred == simplify(parse_predicate("x == 4")));
    CHECK(via1->trace[0].edge == EdgeKind::Indirect);

    // The entry has predecessors here, so a node there still grows.
    SearchNode at0;
    at0.at = Word{0};
    CHECK(!expand(at0, ind, config(PruneTier::Syntactic, 4), n2).empty());
}

TEST_CASE("double store yields one witness per alias case") {
    const Program ds = testing::corpus_program("doublestore");
    const auto ex = explore(ds, parse_predicate("[e] == z"), config(PruneTier::Bounded, 8));
    CHECK(texts(ex.witnesses) == std::vector<std::string>{
                                     "[e] == z && sep(d, e) && sep(b, e) @[0]",
                                     "[a] == z && sep(d, e) && alias(b, e) @[0]",
                                     "[c] == z && alias(d, e) && sep(b, c) @[0]",
                                     "[a] == z && alias(d, e) && alias(b, c) @[0]",
                                 });
    for (const auto& w : ex.witnesses) {
        CHECK(w.case_tags().size() == 2);
        CHECK(w.verdict.kind == VerdictKind::Sat);
    }
}

TEST_CASE("division witnesses cover exactly the reaching states") {
    const Program div = testing::corpus_program("division");
    const Predicate q = parse_predicate("x >= y");
    const auto ex = explore(div, q, config(PruneTier::Bounded, 12, {0, 8}));
    StateSpace space;
    space.vars = {{"x", {0, 8}}, {"y", {1, 8}}};
    space.choices = {0, 8};
    const auto oracle = oracle_exploit_set(div, q, space, 40);
    std::set<State> expected;
    for (const auto& [s, _] : oracle.exploits) {
        expected.insert(s);
    }
    CHECK(witness_model_union(ex.witnesses, space) == expected);
}

TEST_CASE("syntactic pruning loses no witness") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 60; ++i) {
        const Program p = random_program(rng);
        const Predicate q = random_post(rng);
        const auto none = explore(p, q, config(PruneTier::None, 4, {-2, 2}));
        const auto syn = explore(p, q, config(PruneTier::Syntactic, 4, {-2, 2}));
        std::set<std::string> kept;
        for (const auto& w : syn.witnesses) {
            kept.insert(canonical(w));
        }
        for (const auto& w : none.witnesses) {
            if (!tier1_unsat(w.precondition)) {
                CHECK_MESSAGE(kept.contains(canonical(w)), print_program(p));
            }
        }
    }
}

TEST_CASE("search is deterministic") {
    const Program ind = testing::corpus_program("indirect");
    const Predicate q = parse_predicate("y > 0");
    const auto a = explore(ind, q, config(PruneTier::Bounded, 8));
    const auto b = explore(ind, q, config(PruneTier::Bounded, 8));
    CHECK(texts(a.witnesses) == texts(b.witnesses));
    CHECK(a.report.generated == b.report.generated);
    CHECK(a.report.expanded == b.report.expanded);
}

TEST_CASE("breadth first: witnesses arrive in depth order") {
    const Program nd = testing::corpus_program("ndloop");
    const auto ex = explore(nd, parse_predicate("1"), config(PruneTier::Bounded, 5, {0, 8}));
    REQUIRE(ex.witnesses.size() >= 2);
    for (std::size_t i = 1; i < ex.witnesses.size(); ++i) {
        CHECK(ex.witnesses[i - 1].depth <= ex.witnesses[i].depth);
    }
    CHECK(ex.witnesses.back().depth == 5);

    auto capped = config(PruneTier::Bounded, 50, {0, 8});
    capped.max_witnesses = 3;
    const auto few = explore(nd, parse_predicate("1"), capped);
    CHECK(few.witnesses.size() == 3);
    CHECK(few.report.stop_reason == "max-witnesses");

    auto small = config(PruneTier::Bounded, 50, {0, 8});
    small.max_nodes = 4;
    const auto cut = explore(nd, parse_predicate("1"), small);
    CHECK(cut.report.expanded == 4);
    CHECK(cut.report.stop_reason == "max-nodes");
}

TEST_CASE("search tree as dot") {
    auto cfg = config(PruneTier::Bounded, 8);
    cfg.record_tree = true;
    const auto ds = explore(testing::corpus_program("doublestore"), parse_predicate("[e] == z"), cfg);
    CHECK(ds.tree.nodes.size() == 7);
    CHECK(ds.tree.edges.size() == 6);
    const std::string dot = to_dot(ds.tree);
    CHECK(dot.find("rankdir=BT") != std::string::npos);
    CHECK(std::count(dot.begin(), dot.end(), '\n') > 7);

    const auto loop = explore(parse_program("entry 0\nblock 0: jump true 0 0"), Predicate{}, cfg);
    CHECK(loop.tree.nodes.size() == 1);
    CHECK(loop.tree.edges.empty());

    cfg.max_depth = 3;
    cfg.sat.domain = {0, 16};
    const auto div = explore(testing::corpus_program("division"), parse_predicate("x >= y"), cfg);
    CHECK(std::any_of(div.tree.nodes.begin(), div.tree.nodes.end(), [](const auto& n) { return n.pruned; }));
    CHECK(to_dot(div.tree).find("pruned") != std::string::npos);
}
