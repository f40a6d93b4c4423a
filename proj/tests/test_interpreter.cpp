#include <doctest.h>

#include "jumprl/eval.hpp"
#include "support.hpp"

using namespace jumprl;
using testing::corpus_program;
using testing::state;

TEST_CASE("expressions evaluate against a state") {
    CHECK(eval_expr(state("x=4,y=1"), parse_expr("x - 3 * y >= y")) == Word{1});
    CHECK(eval_expr(state("[7]=42"), parse_expr("[3 + 4]")) == Word{42});
    CHECK_THROWS_AS(eval_expr(state("x=1"), parse_expr("x / 0")), ArithmeticFault);
    CHECK_THROWS_AS(eval_expr(state("x=1"), parse_expr("y")), UnboundVariable);
    // Short-circuit: the faulting right operand is never evaluated.
    CHECK(eval_expr(state("x=0"), parse_expr("x != 0 && 1 / x == 1")) == Word{0});
}

TEST_CASE("statements update the state") {
    const auto nd = std::get<NondetAssign>(
        parse_program("entry 0\nblock 0: d <- some (1 < d && d < n); exit").block(Word{0}).stmts[0]);
    State s = state("n=4");
    auto scripted = ChoiceOracle::scripted({Word{2}});
    step_stmt(s, nd, scripted);
    CHECK(s.var("d") == Word{2});

    State bad = state("n=4");
    auto wrong = ChoiceOracle::scripted({Word{7}});
    CHECK_THROWS_AS(step_stmt(bad, nd, wrong), NoChoice);

    CHECK(nd_candidates(state("n=3"), nd, Domain{0, 8}, Width{}) == std::vector<Word>{Word{2}});

    State copy = state("a=1,b=2,[1]=9");
    auto none = ChoiceOracle::exhaustive();
    step_stmt(copy, Store{parse_expr("b"), parse_expr("[a]")}, none);
    CHECK(copy.mem.read(Word{1}) == Word{9});
    CHECK(copy.mem.read(Word{2}) == Word{9});
}

TEST_CASE("whole programs run to exit, fault, or run out of fuel") {
    auto oracle = ChoiceOracle::exhaustive();
    const Outcome div = run(corpus_program("division"), state("x=4,y=1"), oracle, 100);
    REQUIRE(std::holds_alternative<Exited>(div));
    const auto& e = std::get<Exited>(div);
    CHECK(e.state.var("x") == Word{1});
    CHECK(e.state.var("i") == Word{3});
    CHECK(to_string(e.trace) == "[0,1,2,2,3]");

    const Outcome ind = run(corpus_program("indirect"), state("x=2"), oracle, 100);
    REQUIRE(std::holds_alternative<Exited>(ind));
    CHECK(std::get<Exited>(ind).state.var("y") == Word{5});

    CHECK(std::holds_alternative<OutOfFuel>(run(corpus_program("division"), state("x=4,y=1"), oracle, 0)));
    CHECK(std::holds_alternative<OutOfFuel>(run(corpus_program("division"), state("x=4,y=1"), oracle, 4)));
    CHECK(std::holds_alternative<Exited>(run(corpus_program("division"), state("x=4,y=1"), oracle, 5)));

    auto fault_of = [&](const std::string& text, const std::string& init) {
        const Outcome o = run(parse_program(text), state(init), oracle, 10);
        REQUIRE(std::holds_alternative<Faulted>(o));
        return std::get<Faulted>(o).kind;
    };
    CHECK(fault_of("entry 0\nblock 0: x := 1 / y; exit", "y=0") == FaultKind::DivZero);
    CHECK(fault_of("entry 0\nblock 0: x := y; exit", "") == FaultKind::Unbound);
    CHECK(fault_of("entry 0\nblock 0: ijump 5", "") == FaultKind::BadIJumpTarget);
    CHECK(fault_of("entry 0\nblock 0: d <- some (d != d); exit", "") == FaultKind::NoChoice);
}

TEST_CASE("seeded runs are reproducible") {
    const Program p = corpus_program("ndloop");
    for (std::uint64_t seed : {1, 2, 99}) {
        auto a = ChoiceOracle::seeded(seed, Domain{0, 16});
        auto b = ChoiceOracle::seeded(seed, Domain{0, 16});
        const Outcome x = run(p, state("n=12"), a, 10);
        const Outcome y = run(p, state("n=12"), b, 10);
        REQUIRE(x.index() == y.index());
        if (const auto* ex = std::get_if<Exited>(&x)) {
            CHECK(*ex == std::get<Exited>(y));
        }
    }
    auto one = ChoiceOracle::seeded(1, Domain{-8, 8});
    CHECK(std::holds_alternative<OutOfFuel>(run(p, state("n=5"), one, 10)));
}

TEST_CASE("enumerating runs covers every choice") {
    const Program p = corpus_program("ndloop");
    CHECK_FALSE(enumerate_runs(p, state("n=4"), 10, Domain{0, 8}).exited.empty());
    CHECK(enumerate_runs(p, state("n=5"), 10, Domain{0, 8}).exited.empty());
    CHECK(enumerate_runs(p, state("n=5"), 10, Domain{0, 8}).out_of_fuel > 0);
}

TEST_CASE("deterministic programs have exactly the run's outcome") {
    std::mt19937_64 rng(21);
    GenOptions opt;
    opt.nondet = false;
    int compared = 0;
    for (int i = 0; i < 300; ++i) {
        const Program p = random_program(rng, opt);
        testing::ExprGen g(i);
        State s0 = g.random_state(Domain{-2, 2});
        s0.bind("p", Word{0});
        s0.bind("q", Word{1});
        auto oracle = ChoiceOracle::exhaustive();
        const Outcome o = run(p, s0, oracle, 12);
        const RunSet all = enumerate_runs(p, s0, 12, Domain{-2, 2});
        if (const auto* e = std::get_if<Exited>(&o)) {
            ++compared;
            CHECK(all.exited == std::set<Exited>{*e});
        } else {
            CHECK(all.exited.empty());
        }
    }
    CHECK(compared > 50);
}

TEST_CASE("the exited set grows with fuel") {
    std::mt19937_64 rng(23);
    for (int i = 0; i < 150; ++i) {
        const Program p = random_program(rng);
        testing::ExprGen g(100 + i);
        State s0 = g.random_state(Domain{-2, 2});
        s0.bind("p", Word{0});
        s0.bind("q", Word{1});
        const auto small = enumerate_runs(p, s0, 3, Domain{-2, 2}).exited;
        const auto large = enumerate_runs(p, s0, 8, Domain{-2, 2}).exited;
        CHECK(std::includes(large.begin(), large.end(), small.begin(), small.end()));
    }
}

TEST_CASE("reaches reports the trace of a run ending in the postcondition") {
    Trace t;
    CHECK(reaches(corpus_program("indirect"), state("x=2"), parse_predicate("y > 0"), 10, Domain{-8, 8}, {}, &t));
    CHECK(to_string(t) == "[0,1,2,4,9]");
    CHECK_FALSE(reaches(corpus_program("indirect"), state("x=3"), parse_predicate("y > 0"), 10, Domain{-8, 8}));
}
