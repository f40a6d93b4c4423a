// One PASS/FAIL line per acceptance criterion. Exit status is nonzero if any fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>

#include "jumprl/cli.hpp"
#include "jumprl/harness.hpp"
#include "jumprl/parser.hpp"

using namespace jumprl;

namespace {

using Clock = std::chrono::steady_clock;

struct Check {
    bool ok{true};
    std::string detail;
};

void require(Check& o, bool cond, const std::string& what) {
    if (!cond && o.ok) {
        o.ok = false;
        o.detail = what;
    }
}

const CorpusCase& find(const std::vector<CorpusCase>& corpus, const std::string& name) {
    for (const auto& c : corpus) {
        if (c.name == name) {
            return c;
        }
    }
    throw std::runtime_error("corpus case '" + name + "' missing");
}

void flatten(const Expr& e, std::vector<Expr>& out) {
    if (e.is_binary(BinaryOp::And)) {
        flatten(e.lhs(), out);
        flatten(e.rhs(), out);
    } else {
        out.push_back(e);
    }
}

// Conjuncts as text, with sep/alias arguments in a fixed order.
std::set<std::string> conjuncts(const Expr& matrix) {
    std::vector<Expr> parts;
    flatten(matrix, parts);
    std::set<std::string> out;
    for (const auto& e : parts) {
        if (e.is_binary(BinaryOp::Sep) || e.is_binary(BinaryOp::Alias)) {
            Expr a = e.lhs(), b = e.rhs();
            if (to_string(b) < to_string(a)) {
                std::swap(a, b);
            }
            out.insert(to_string(Expr::binary(e.op(), a, b)));
        } else {
            out.insert(to_string(e));
        }
    }
    return out;
}

std::set<std::string> expected_conjuncts(const std::vector<std::string>& parts) {
    Expr all = Expr::truth();
    for (const auto& p : parts) {
        all = conjoin(all, parse_expr(p));
    }
    return conjuncts(simplify(all));
}

Check double_store(const std::vector<CorpusCase>& corpus) {
    Check o;
    const auto& c = find(corpus, "doublestore");
    const auto g = generate(c.program, c.post, c.config);
    const auto& ws = g.exploration.witnesses;
    require(o, ws.size() == 4, "expected 4 witnesses, got " + std::to_string(ws.size()));
    std::set<std::set<std::string>> got;
    for (const auto& w : ws) {
        got.insert(conjuncts(w.precondition.matrix()));
    }
    const std::set<std::set<std::string>> want{
        expected_conjuncts({"[e] == z", "sep(e, b)", "sep(e, d)"}),
        expected_conjuncts({"[a] == z", "alias(e, b)", "sep(e, d)"}),
        expected_conjuncts({"[c] == z", "sep(c, b)", "alias(e, d)"}),
        expected_conjuncts({"[a] == z", "alias(c, b)", "alias(e, d)"}),
    };
    require(o, got == want, "witness conjunct sets differ from the four expected cases");
    return o;
}

Check long_division(const std::vector<CorpusCase>& corpus) {
    Check o;
    const auto& c = find(corpus, "division");
    const StateSpace space = space_for(c);
    require(o, space.vars.size() == 2 && space.vars.at("x") == Domain{0, 16} && space.vars.at("y") == Domain{0, 16},
            "division space must be x,y in [0,16)");
    require(o, c.config.fuel == 64 && c.config.max_depth == 6, "division config must use fuel 64 and depth 6");

    const auto oracle = oracle_exploit_set(c.program, c.post, space, c.config.fuel);
    std::set<State> short_exploits;
    for (const auto& [s, blocks] : oracle.exploits) {
        if (blocks <= 7) {
            short_exploits.insert(s);
        }
    }
    const auto g = generate(c.program, c.post, c.config);
    std::vector<Witness> sat;
    for (const auto& w : g.exploration.witnesses) {
        if (w.verdict.kind == VerdictKind::Sat) {
            sat.push_back(w);
        }
    }
    const auto models = witness_model_union(sat, space);
    require(o, models == short_exploits,
            "model union (" + std::to_string(models.size()) + ") differs from the oracle set (" +
                std::to_string(short_exploits.size()) + ")");

    const auto want = expected_conjuncts({"x - 3 * y >= y", "!(x - 3 * y > y)", "x - 2 * y > y", "x - y >= y",
                                          "!(x < y)"});
    const Witness* top = nullptr;
    for (const auto& w : g.exploration.witnesses) {
        if (w.precondition.is_leaf() && conjuncts(w.precondition.matrix()) == want) {
            top = &w;
        }
    }
    require(o, top != nullptr, "the three-iteration witness is missing");
    if (top) {
        const Model expect_model{{{"x", Word{4}}, {"y", Word{1}}}, {}};
        require(o, top->verdict.kind == VerdictKind::Sat && top->verdict.model == expect_model,
                "the three-iteration witness is not Sat with model x=4, y=1");
        const std::string program = (c.dir / "program.jmp").string();
        const std::string pre = to_string(top->precondition);
        const char* argv[] = {"jumprl", "check", program.c_str(), "--post", "x >= y", "--pre", pre.c_str(),
                              "--domain", "0..16", "--fuel", "64"};
        std::ostringstream out, err;
        require(o, run_cli(11, argv, out, err) == 0, "check did not confirm the triple: " + out.str() + err.str());
    }
    if (o.ok) {
        o.detail = std::to_string(models.size()) + " states";
    }
    return o;
}

Check nd_loop(const std::vector<CorpusCase>& corpus) {
    Check o;
    const auto& c = find(corpus, "ndloop");
    const auto g = generate(c.program, c.post, c.config);
    const Witness* w1 = nullptr;
    for (const auto& w : g.exploration.witnesses) {
        if (w.depth == 1 && !w1) {
            w1 = &w;
        }
    }
    require(o, w1 != nullptr, "no depth-1 witness");
    if (!w1) {
        return o;
    }
    const Predicate want = simplify(parse_predicate("E $1 in (1 < $1 && $1 < n) . n % $1 == 0"));
    require(o, w1->precondition == want, "depth-1 witness is " + to_string(w1->precondition));
    SatConfig sc;
    sc.domain = {0, 8};
    const Verdict v = check_sat(w1->precondition, sc);
    require(o, v.kind == VerdictKind::Sat && v.model, "check_sat is not Sat");
    if (v.model) {
        const auto n = v.model->vars.at("n").value();
        require(o, n == 4 || n == 6, "model n=" + std::to_string(n) + " is not composite");
    }
    for (std::int64_t n : {5, 7}) {
        require(o, !holds(w1->precondition, Model{{{"n", Word{n}}}, {}}, sc.domain),
                "holds for prime n=" + std::to_string(n));
    }
    return o;
}

Check indirect_jump(const std::vector<CorpusCase>& corpus) {
    Check o;
    const auto& c = find(corpus, "indirect");
    require(o, c.config.max_depth == 8, "indirect config must use depth 8");
    const auto g = generate(c.program, c.post, c.config);
    std::vector<Witness> sat;
    for (const auto& w : g.exploration.witnesses) {
        if (w.verdict.kind == VerdictKind::Sat) {
            sat.push_back(w);
        }
    }
    require(o, sat.size() == 1, "expected one satisfiable witness, got " + std::to_string(sat.size()));
    StateSpace space;
    space.vars["x"] = {-8, 8};
    space.choices = {-8, 8};
    const auto models = witness_model_union(sat, space);
    const auto oracle = oracle_exploit_set(c.program, c.post, space, c.config.fuel);
    std::set<State> oracle_set;
    for (const auto& [s, _] : oracle.exploits) {
        oracle_set.insert(s);
    }
    State x2;
    x2.bind("x", Word{2});
    require(o, models == std::set<State>{x2}, "witness models are not exactly {x=2}");
    require(o, oracle_set == models, "oracle set differs from the witness models");
    return o;
}

Check axioms() {
    Check o;
    const auto r = axioms_suite(10000, 1);
    require(o, r.cases == 10000 && r.failed == 0, std::to_string(r.failed) + " failing instances");
    return o;
}

Check soundness(const std::vector<CorpusCase>& corpus) {
    Check o;
    SoundnessConfig cfg;
    cfg.programs = 200;
    cfg.seed = 7;
    cfg.domain = {-4, 4};
    cfg.fuel = 32;
    const auto r = soundness_suite(corpus, cfg);
    require(o, r.cases >= 204 && r.failed == 0,
            r.failures.empty() ? "too few cases" : r.failures.front());
    cfg.mutate = true;
    const auto m = soundness_suite(corpus, cfg);
    require(o, m.failed > 0, "the polarity mutation went undetected");
    if (o.ok) {
        o.detail = std::to_string(r.cases) + " cases, mutation caught";
    }
    return o;
}

Check completeness(const std::vector<CorpusCase>& corpus) {
    Check o;
    CompletenessConfig cfg;
    cfg.programs = 100;
    const auto r = completeness_suite(corpus, cfg);
    require(o, r.ok(), r.failures.empty() ? "suite failed" : r.failures.front());
    if (o.ok) {
        o.detail = std::to_string(r.passed) + " covered, " + std::to_string(r.skipped) + " skipped";
    }
    return o;
}

Check quicksort(const std::vector<CorpusCase>& corpus) {
    Check o;
    const auto r = quicksort_study(find(corpus, "quicksort"));
    require(o, r.detail.rfind("64 arrays", 0) == 0, "expected 64 arrays: " + r.detail);
    require(o, r.equal, "witness models differ from the oracle: " + r.detail);
    require(o, r.characterized, "oracle set is not 'a[0] not minimal': " + r.detail);
    auto array = [](std::int64_t a, std::int64_t b, std::int64_t c) {
        State s;
        s.mem.write_in_place(Word{100}, Word{a});
        s.mem.write_in_place(Word{101}, Word{b});
        s.mem.write_in_place(Word{102}, Word{c});
        return s;
    };
    require(o, r.oracle.contains(array(2, 1, 3)), "(2,1,3) should go out of bounds");
    require(o, !r.oracle.contains(array(0, 1, 2)), "(0,1,2) should stay in bounds");
    if (o.ok) {
        o.detail = r.detail;
    }
    return o;
}

Check determinism(const std::vector<CorpusCase>& corpus) {
    Check o;
    for (const auto& c : corpus) {
        if (c.kind != "litmus") {
            continue;
        }
        const std::string a = golden_text(c), b = golden_text(c);
        require(o, a == b, c.name + ": reruns differ");
    }
    const auto r = litmus_suite(corpus, false);
    require(o, r.cases == 4 && r.ok(), r.failures.empty() ? "expected 4 litmus cases" : r.failures.front());
    return o;
}

} // namespace

int main() {
    std::vector<CorpusCase> corpus;
    try {
        corpus = load_corpus(default_corpus_dir());
    } catch (const std::exception& e) {
        std::cout << "FAIL corpus: " << e.what() << "\n";
        return 1;
    }

    struct Criterion {
        int id;
        std::string name;
        double limit_s;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "double-store litmus", 1, [&] { return double_store(corpus); }},
        {2, "long-division litmus", 10, [&] { return long_division(corpus); }},
        {3, "nondeterministic-loop litmus", 1, [&] { return nd_loop(corpus); }},
        {4, "indirect-jump litmus", 5, [&] { return indirect_jump(corpus); }},
        {5, "memory axioms", 1, [] { return axioms(); }},
        {6, "soundness suite", 120, [&] { return soundness(corpus); }},
        {7, "completeness suite", 120, [&] { return completeness(corpus); }},
        {8, "partition out-of-bounds study", 300, [&] { return quicksort(corpus); }},
        {9, "determinism", 30, [&] { return determinism(corpus); }},
    };

    int failed = 0;
    for (const auto& c : criteria) {
        const auto t0 = Clock::now();
        Check o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
        if (o.ok && secs >= c.limit_s) {
            o = {false, "too slow"};
        }
        std::ostringstream time;
        time.precision(2);
        time << std::fixed << secs << " s, limit " << c.limit_s << " s";
        std::cout << (o.ok ? "PASS " : "FAIL ") << c.id << " " << c.name << " (" << time.str() << ")"
                  << (o.detail.empty() ? "" : ": " + o.detail) << std::endl;
        failed += !o.ok;
    }
    return failed ? 1 : 0;
}
