#include <doctest.h>

#include "support.hpp"

using namespace jumprl;

namespace {

std::set<std::string> texts(const std::vector<Predicate>& ps) {
    std::set<std::string> out;
    for (const auto& p : ps) {
        out.insert(to_string(p));
    }
    return out;
}

std::set<std::string> simplified(std::initializer_list<const char*> ps) {
    std::set<std::string> out;
    for (const char* p : ps) {
        out.insert(to_string(simplify(parse_predicate(p))));
    }
    return out;
}

Stmt stmt(const std::string& text) {
    return parse_program("entry 0\nblock 0: " + text + "; exit").block(Word{0}).stmts.at(0);
}

} // namespace

TEST_CASE("statement transformers") {
    NameSupply names;
    CHECK(texts(tau_stmt(stmt("v := w"), parse_predicate("v > 42"), names)) == simplified({"w > 42"}));
    CHECK(texts(tau_stmt(stmt("d <- some (1 < d && d < n)"), parse_predicate("n % d == 0"), names)) ==
          simplified({"E $1 in (1 < $1 && $1 < n) . n % $1 == 0"}));
    CHECK(texts(tau_stmt(stmt("[a1] := v"), parse_predicate("[a2] == 42"), names)) ==
          simplified({"[a2] == 42 && sep(a1, a2)", "v == 42 && alias(a1, a2)"}));
}

TEST_CASE("store case analysis") {
    const auto constant = pre_store(parse_expr("a"), parse_expr("v"), parse_predicate("42"));
    REQUIRE(constant.size() == 1);
    CHECK(constant[0].pred == parse_predicate("42"));
    CHECK(constant[0].constraint == Expr::truth());

    const auto deref = pre_store(parse_expr("a1"), parse_expr("v"), parse_predicate("[a2]"));
    REQUIRE(deref.size() == 2);
    CHECK(deref[0].pred == parse_predicate("[a2]"));
    CHECK(deref[0].constraint == parse_expr("sep(a1, a2)"));
    CHECK(deref[1].pred == parse_predicate("v"));
    CHECK(deref[1].constraint == parse_expr("alias(a1, a2)"));
    CHECK(deref[1].tags == std::vector<std::string>{"alias(a1, a2)"});

    const auto copy = pre_store(parse_expr("b"), parse_expr("[a]"), parse_predicate("[e] == z"));
    REQUIRE(copy.size() == 2);
    CHECK(copy[0].pred == parse_predicate("[e] == z"));
    CHECK(copy[0].constraint == parse_expr("sep(b, e)"));
    CHECK(copy[1].pred == parse_predicate("[a] == z"));
    CHECK(copy[1].constraint == parse_expr("alias(b, e)"));
}

TEST_CASE("store cases cover every address assignment") {
    const auto cases = pre_store(parse_expr("p"), parse_expr("v"), parse_predicate("[q] + [r] == [p + 1]"));
    CHECK(cases.size() == 8);
    for (std::int64_t p = -2; p < 2; ++p) {
        for (std::int64_t q = -2; q < 2; ++q) {
            for (std::int64_t r = -2; r < 2; ++r) {
                const State s = testing::state("p=" + std::to_string(p) + ",q=" + std::to_string(q) +
                                               ",r=" + std::to_string(r));
                int matching = 0;
                for (const auto& c : cases) {
                    matching += holds(Predicate(c.constraint), s, Domain{-2, 2});
                }
                CHECK(matching == 1);
            }
        }
    }
}

TEST_CASE("edge transformers") {
    const Program div = testing::corpus_program("division");
    const Predicate q = parse_predicate("x >= y");
    CHECK(tau_edge(div.block(Word{0}).terminator, EdgeKind::Then, Word{3}, q) ==
          parse_predicate("x >= y && x < y"));
    CHECK(tau_edge(div.block(Word{0}).terminator, EdgeKind::Else, Word{1}, q) ==
          parse_predicate("x >= y && !(x < y)"));
    CHECK_THROWS_AS(tau_edge(div.block(Word{0}).terminator, EdgeKind::Then, Word{1}, q), std::invalid_argument);
    CHECK_THROWS_AS(tau_edge(div.block(Word{3}).terminator, EdgeKind::Then, Word{1}, q), std::invalid_argument);

    CHECK(tau_edge(IJump{parse_expr("x")}, EdgeKind::Indirect, Word{2}, q) == parse_predicate("x >= y && x == 2"));

    const Jump same{parse_expr("c"), Word{4}, Word{4}};
    CHECK(tau_edge(same, EdgeKind::Then, Word{4}, q) == parse_predicate("x >= y && c"));
    CHECK(tau_edge(same, EdgeKind::Else, Word{4}, q) == parse_predicate("x >= y && !c"));
}

TEST_CASE("block transformers") {
    NameSupply names;
    const auto zero = tau_block_stmts({stmt("y := 0")}, parse_predicate("y > 0"), names);
    CHECK(std::all_of(zero.begin(), zero.end(), [](const Predicate& p) { return p.is_false(); }));

    const Program div = testing::corpus_program("division");
    CHECK(texts(tau_block_stmts(div.block(Word{1}).stmts, parse_predicate("x >= y"), names)) ==
          simplified({"x - y >= y"}));

    const Program ds = testing::corpus_program("doublestore");
    CHECK(tau_block_stmts(ds.block(Word{0}).stmts, parse_predicate("[e] == z"), names).size() == 4);

    const auto two = tau_block_stmts({stmt("d <- some (d < n)"), stmt("e <- some (e < d)")},
                                     parse_predicate("e == 1"), names);
    CHECK(binders_unique(two));
}

TEST_CASE("every model of a statement precondition has a step into the postcondition") {
    std::mt19937_64 rng(51);
    GenOptions opt;
    const Domain d{-4, 4};
    SatConfig sc;
    sc.domain = d;
    int checked = 0;
    for (int i = 0; i < 400; ++i) {
        const Program p = random_program(rng, opt);
        const Predicate q = random_post(rng, opt);
        for (const auto& [addr, block] : p.blocks()) {
            for (const auto& s : block.stmts) {
                NameSupply names = NameSupply::above(all_names(q));
                for (const auto& pre : tau_stmt(s, q, names)) {
                    for_each_model(pre, sc, [&](const Model& m) {
                        State s0 = m.to_state();
                        for (const char* v : {"x", "y", "z", "p", "q"}) {
                            if (!s0.vars.contains(v)) {
                                s0.bind(v, Word{0});
                            }
                        }
                        bool ok = false;
                        if (const auto* nd = std::get_if<NondetAssign>(&s)) {
                            for (Word w : nd_candidates(s0, *nd, d, Width{})) {
                                State s1 = s0;
                                auto pick = ChoiceOracle::scripted({w});
                                step_stmt(s1, s, pick);
                                ok = ok || holds(q, s1, d);
                            }
                        } else {
                            State s1 = s0;
                            auto none = ChoiceOracle::exhaustive(d);
                            step_stmt(s1, s, none);
                            ok = holds(q, s1, d);
                        }
                        ++checked;
                        CHECK_MESSAGE(ok, to_string(s) << " from " << to_string(s0) << " pre " << to_string(pre)
                                                       << " post " << to_string(q));
                    });
                }
            }
        }
    }
    CHECK(checked > 1000);
}
