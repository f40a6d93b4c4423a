#include <algorithm>
#include <sstream>

#include "jumprl/harness.hpp"
#include "jumprl/parser.hpp"

namespace jumprl {

namespace {

using Rng = std::mt19937_64;

std::size_t pick(Rng& rng, std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); }
bool chance(Rng& rng, double p) { return std::bernoulli_distribution(p)(rng); }
std::int64_t small(Rng& rng) { return std::uniform_int_distribution<std::int64_t>(-2, 2)(rng); }

const std::vector<std::string> kData{"x", "y", "z"};
const std::vector<std::string> kPtr{"p", "q"};

Expr random_atom(Rng& rng, const GenOptions& opt, const std::string& avoid = "") {
    const std::size_t kinds = opt.memory ? 3 : 2;
    switch (pick(rng, kinds)) {
    case 0: {
        std::string v;
        do {
            v = kData[pick(rng, kData.size())];
        } while (v == avoid);
        return Expr::var(v);
    }
    case 1: return Expr::literal(small(rng));
    default: return Expr::deref(Expr::var(kPtr[pick(rng, kPtr.size())]));
    }
}

Expr random_expr(Rng& rng, const GenOptions& opt, int depth, const std::string& avoid = "") {
    if (depth == 0 || chance(rng, 0.5)) {
        return random_atom(rng, opt, avoid);
    }
    switch (pick(rng, 3)) {
    case 0: return Expr::binary(BinaryOp::Add, random_expr(rng, opt, depth - 1, avoid), random_atom(rng, opt, avoid));
    case 1: return Expr::binary(BinaryOp::Sub, random_expr(rng, opt, depth - 1, avoid), random_atom(rng, opt, avoid));
    default: return Expr::binary(BinaryOp::Mul, random_atom(rng, opt, avoid), Expr::literal(small(rng)));
    }
}

const std::vector<BinaryOp> kCompare{BinaryOp::Lt, BinaryOp::Le, BinaryOp::Eq,
                                     BinaryOp::Ne, BinaryOp::Gt, BinaryOp::Ge};

Expr random_cond(Rng& rng, const GenOptions& opt, int depth) {
    Expr c = Expr::binary(kCompare[pick(rng, kCompare.size())], random_expr(rng, opt, 1), random_expr(rng, opt, 1));
    if (depth > 0 && chance(rng, 0.25)) {
        c = Expr::binary(chance(rng, 0.5) ? BinaryOp::And : BinaryOp::Or, c, random_cond(rng, opt, depth - 1));
    }
    if (chance(rng, 0.1)) {
        c = Expr::negate(c);
    }
    return c;
}

// A condition admitting few candidates, so nondeterminism stays enumerable.
Expr random_choice(Rng& rng, const GenOptions& opt, const std::string& v) {
    const Expr var = Expr::var(v);
    const Expr lo = random_expr(rng, opt, 1, v);
    switch (pick(rng, 3)) {
    case 0: return Expr::binary(BinaryOp::Eq, var, lo);
    case 1:
        return Expr::binary(BinaryOp::And, Expr::binary(BinaryOp::Le, lo, var),
                            Expr::binary(BinaryOp::Lt, var,
                                         Expr::binary(BinaryOp::Add, lo, Expr::literal(1 + static_cast<std::int64_t>(pick(rng, 2))))));
    default:
        return Expr::binary(BinaryOp::And, Expr::binary(BinaryOp::Ne, var, lo),
                            Expr::binary(BinaryOp::Le, Expr::literal(-1), var) &&
                                Expr::binary(BinaryOp::Le, var, Expr::literal(1)));
    }
}

Stmt random_stmt(Rng& rng, const GenOptions& opt) {
    const double r = std::uniform_real_distribution<double>(0, 1)(rng);
    if (opt.memory && r < 0.3) {
        return Store{Expr::var(kPtr[pick(rng, kPtr.size())]), random_expr(rng, opt, 1)};
    }
    const std::string v = kData[pick(rng, kData.size())];
    if (opt.nondet && r < 0.45) {
        return NondetAssign{v, random_choice(rng, opt, v)};
    }
    return Assign{v, random_expr(rng, opt, 2)};
}

} // namespace

Program random_program(std::mt19937_64& rng, const GenOptions& opt) {
    const std::size_t n = 1 + pick(rng, opt.max_blocks);
    std::map<Addr, Block> blocks;
    for (std::size_t i = 0; i < n; ++i) {
        Block b;
        const std::size_t k = pick(rng, opt.max_stmts + 1);
        for (std::size_t s = 0; s < k; ++s) {
            b.stmts.push_back(random_stmt(rng, opt));
        }
        if (i + 1 == n || chance(rng, 0.2)) {
            b.terminator = Exit{};
        } else {
            const auto t = static_cast<std::int64_t>(pick(rng, n));
            const auto e = static_cast<std::int64_t>(pick(rng, n));
            b.terminator = Jump{random_cond(rng, opt, 1), Word{t}, Word{e}};
        }
        blocks.emplace(Word{static_cast<std::int64_t>(i)}, std::move(b));
    }
    return Program(Word{0}, std::move(blocks));
}

Predicate random_post(std::mt19937_64& rng, const GenOptions& opt) {
    return Predicate(random_cond(rng, opt, 1));
}

Program minimize(const Program& p, const std::function<bool(const Program&)>& still_fails) {
    Program cur = p;
    bool progress = true;
    while (progress) {
        progress = false;
        for (const auto& [addr, block] : cur.blocks()) {
            for (std::size_t i = 0; i < block.stmts.size(); ++i) {
                auto blocks = cur.blocks();
                blocks[addr].stmts.erase(blocks[addr].stmts.begin() + static_cast<std::ptrdiff_t>(i));
                Program cand(cur.entry(), std::move(blocks));
                if (still_fails(cand)) {
                    cur = std::move(cand);
                    progress = true;
                    break;
                }
            }
            if (progress) {
                break;
            }
        }
    }
    return cur;
}

std::optional<Violation> check_soundness(const Program& p, const Predicate& q, const std::vector<Witness>& ws,
                                         const Domain& domain, Width width, const SoundnessOptions& opt) {
    const auto inputs = input_variables(p, q);
    SatConfig sc;
    sc.domain = domain;
    sc.width = width;
    sc.budget = opt.leaf_budget;
    Rng rng(0x5eed);
    for (const auto& w : ws) {
        const std::size_t fuel = w.trace.size() + opt.slack;
        std::optional<Violation> bad;
        for_each_model(w.precondition, sc, [&](const Model& m) {
            if (bad) {
                return;
            }
            std::vector<std::string> open;
            for (const auto& v : inputs) {
                if (!m.vars.contains(v)) {
                    open.push_back(v);
                }
            }
            const State base = m.to_state();
            auto check = [&](const State& s) {
                if (!bad && !reaches(p, s, q, fuel, domain, width)) {
                    bad = Violation{w, s};
                }
            };
            double count = 1;
            for (std::size_t i = 0; i < open.size(); ++i) {
                count *= static_cast<double>(domain.size());
            }
            if (count <= static_cast<double>(opt.completion_cap)) {
                StateSpace rest;
                for (const auto& v : open) {
                    rest.vars[v] = domain;
                }
                for_each_state(rest, [&](const State& extra) {
                    State s = base;
                    for (const auto& [v, val] : extra.vars) {
                        s.bind(v, val);
                    }
                    check(s);
                });
                return;
            }
            State zeros = base;
            for (const auto& v : open) {
                zeros.bind(v, Word{std::clamp<std::int64_t>(0, domain.lo, domain.hi - 1)});
            }
            check(zeros);
            std::uniform_int_distribution<std::int64_t> val(domain.lo, domain.hi - 1);
            for (std::size_t i = 0; i < opt.completion_cap && !bad; ++i) {
                State s = base;
                for (const auto& v : open) {
                    s.bind(v, Word{val(rng)});
                }
                check(s);
            }
        });
        if (bad) {
            return bad;
        }
    }
    return std::nullopt;
}

namespace {

std::string describe(const Program& p, const Predicate& q, const Violation& v) {
    std::ostringstream out;
    out << "witness " << to_string(v.witness.precondition) << " (trace " << to_string(v.witness.blocks())
        << ") fails from " << to_string(v.state) << " for post " << to_string(q) << "\n"
        << print_program(p);
    return out.str();
}

RunConfig random_run_config(const Domain& d, std::size_t depth) {
    RunConfig rc;
    rc.domain = d;
    rc.max_depth = depth;
    rc.max_witnesses = 64;
    rc.max_nodes = 2000;
    return rc;
}

} // namespace

SuiteReport soundness_suite(const std::vector<CorpusCase>& corpus, const SoundnessConfig& cfg) {
    SuiteReport r;
    r.name = cfg.mutate ? "soundness (mutated)" : "soundness";
    const SoundnessOptions opt{4, 16, 400000};

    auto run_case = [&](const std::string& name, const Program& p, const Predicate& q, RunConfig rc) {
        ++r.cases;
        SearchConfig sc = rc.search_config();
        sc.swap_jump_polarity = cfg.mutate;
        const Width width(rc.width);
        auto witnesses_of = [&](const Program& prog) { return explore(prog, q, sc).witnesses; };
        const auto v = check_soundness(p, q, witnesses_of(p), rc.domain, width, opt);
        if (!v) {
            ++r.passed;
            return;
        }
        ++r.failed;
        const Program small_p = minimize(p, [&](const Program& cand) {
            return check_soundness(cand, q, witnesses_of(cand), rc.domain, width, opt).has_value();
        });
        const auto v2 = check_soundness(small_p, q, witnesses_of(small_p), rc.domain, width, opt);
        r.failures.push_back(name + ": " + describe(small_p, q, v2 ? *v2 : *v));
    };

    for (const auto& c : corpus) {
        if (c.kind != "litmus") {
            continue;
        }
        RunConfig rc = c.config;
        rc.domain = cfg.domain;
        run_case(c.name, c.program, c.post, rc);
        if (cfg.mutate && r.failed) {
            return r;
        }
    }
    Rng rng(cfg.seed);
    for (std::size_t i = 0; i < cfg.programs; ++i) {
        const Program p = random_program(rng);
        const Predicate q = random_post(rng);
        RunConfig rc = random_run_config(cfg.domain, cfg.max_depth);
        rc.fuel = cfg.fuel;
        run_case("random #" + std::to_string(i), p, q, rc);
        if (cfg.mutate && r.failed) {
            break;
        }
    }
    return r;
}

namespace {

bool has_ijump(const Program& p) {
    return std::any_of(p.blocks().begin(), p.blocks().end(),
                       [](const auto& kv) { return std::holds_alternative<IJump>(kv.second.terminator); });
}

enum class Coverage { Covered, Missed, Nonterminating, OverBudget };

struct CoverageResult {
    Coverage kind;
    std::string detail;
};

CoverageResult check_coverage(const Program& p, const Predicate& q, const StateSpace& space, std::size_t fuel,
                              RunConfig rc, std::size_t depth_cap, std::size_t run_budget, bool drop_stuck) {
    const Width width(rc.width);
    const OracleReport oracle = oracle_exploit_set(p, q, space, fuel, width, run_budget);
    if (oracle.exhausted) {
        return {Coverage::OverBudget, "oracle run budget"};
    }
    if (oracle.nonterminating && !drop_stuck) {
        return {Coverage::Nonterminating, std::to_string(oracle.nonterminating) + " states run out of fuel"};
    }
    // Only terminating states fall under the completeness premise.
    std::map<State, std::size_t> exploits;
    for (const auto& [s, blocks] : oracle.exploits) {
        if (!oracle.stuck.contains(s)) {
            exploits.emplace(s, blocks);
        }
    }
    std::size_t longest = 0;
    for (const auto& [s, blocks] : exploits) {
        longest = std::max(longest, blocks);
    }
    const std::size_t depth = longest ? longest - 1 : 0;
    if (depth > depth_cap) {
        return {Coverage::OverBudget, "covering depth " + std::to_string(depth)};
    }
    rc.max_depth = depth;
    rc.max_witnesses = std::size_t{1} << 30;
    const Exploration ex = explore(p, q, rc.search_config());
    if (ex.report.stop_reason == "max-nodes") {
        return {Coverage::OverBudget, "search node budget"};
    }
    const auto models = witness_model_union(ex.witnesses, space, width);
    for (const auto& [s, blocks] : exploits) {
        if (!models.contains(s)) {
            return {Coverage::Missed, "state " + to_string(s) + " reaches the post in " + std::to_string(blocks) +
                                          " blocks but satisfies none of " + std::to_string(ex.witnesses.size()) +
                                          " witnesses at depth " + std::to_string(depth)};
        }
    }
    std::string detail = std::to_string(exploits.size()) + "/" + std::to_string(oracle.states) +
                         " states covered at depth " + std::to_string(depth);
    if (oracle.nonterminating) {
        detail += ", " + std::to_string(oracle.nonterminating) + " nonterminating states excluded";
    }
    return {Coverage::Covered, detail};
}

} // namespace

SuiteReport completeness_suite(const std::vector<CorpusCase>& corpus, const CompletenessConfig& cfg) {
    SuiteReport r;
    r.name = "completeness";
    auto record = [&](const std::string& name, const CoverageResult& res, const Program& p, const Predicate& q) {
        switch (res.kind) {
        case Coverage::Covered: ++r.passed; break;
        case Coverage::Missed:
            ++r.failed;
            r.failures.push_back(name + ": " + res.detail + "\npost " + to_string(q) + "\n" + print_program(p));
            break;
        default: ++r.skipped; r.notes.push_back(name + ": skipped, " + res.detail); break;
        }
    };

    for (const auto& c : corpus) {
        if (c.kind == "smoke" || has_ijump(c.program)) {
            continue;
        }
        ++r.cases;
        const auto res = check_coverage(c.program, c.post, space_for(c), c.config.fuel, c.config, 64, 0, true);
        record(c.name, res, c.program, c.post);
        if (res.kind == Coverage::Covered) {
            r.notes.push_back(c.name + ": " + res.detail);
        }
    }

    // Memory programs dereference only p and q, so two cells cover every address.
    StateSpace base;
    base.cells = {Word{0}, Word{1}};
    base.cell_values = {-2, 2};
    base.choices = {-2, 2};
    Rng rng(cfg.seed);
    std::size_t evaluated = 0;
    for (std::size_t attempt = 0; attempt < cfg.max_attempts && evaluated < cfg.programs; ++attempt) {
        const Program p = random_program(rng);
        const Predicate q = random_post(rng);
        StateSpace space = base;
        for (const auto& v : input_variables(p, q)) {
            space.vars[v] = (v == "p" || v == "q") ? Domain{0, 2} : Domain{-2, 2};
        }
        RunConfig rc = random_run_config(Domain{-2, 2}, cfg.max_depth);
        rc.prune = PruneTier::Syntactic;
        rc.max_nodes = cfg.max_nodes;
        ++r.cases;
        const auto res = check_coverage(p, q, space, cfg.fuel, rc, cfg.max_depth, 5000, false);
        if (res.kind == Coverage::Covered || res.kind == Coverage::Missed) {
            ++evaluated;
        }
        if (res.kind == Coverage::Missed) {
            record("random #" + std::to_string(attempt), res, p, q);
        } else if (res.kind == Coverage::Covered) {
            ++r.passed;
        } else {
            ++r.skipped;
        }
    }
    r.notes.push_back(std::to_string(evaluated) + " random programs evaluated");
    if (evaluated < cfg.programs) {
        ++r.failed;
        r.failures.push_back("only " + std::to_string(evaluated) + " of " + std::to_string(cfg.programs) +
                             " random programs could be evaluated");
    }
    return r;
}

SuiteReport axioms_suite(std::size_t instances, std::uint64_t seed) {
    SuiteReport r;
    r.name = "axioms";
    Rng rng(seed);
    std::uniform_int_distribution<std::int64_t> addr(-4, 3), val(-8, 7);
    for (std::size_t i = 0; i < instances; ++i) {
        ++r.cases;
        Memory m;
        const std::size_t writes = pick(rng, 6);
        for (std::size_t k = 0; k < writes; ++k) {
            m = m.write(Word{addr(rng)}, Word{val(rng)});
        }
        const Addr a{addr(rng)}, b{addr(rng)};
        const Word w{val(rng)};
        const Memory m2 = mem_write(a, w, m);
        bool ok = mem_read(a, m2) == w;
        if (a != b) {
            ok = ok && mem_read(b, m2) == mem_read(b, m);
        }
        if (ok) {
            ++r.passed;
        } else {
            ++r.failed;
            r.failures.push_back("instance " + std::to_string(i) + ": write [" + std::to_string(a.value()) +
                                 "] := " + std::to_string(w.value()) + ", read [" + std::to_string(b.value()) + "]");
        }
    }
    return r;
}

StudyReport quicksort_study(const CorpusCase& c) {
    StudyReport out;
    const StateSpace space = space_for(c);
    const Width width(c.config.width);
    const OracleReport oracle = oracle_exploit_set(c.program, c.post, space, c.config.fuel, width);
    std::size_t longest = 0;
    for (const auto& [s, blocks] : oracle.exploits) {
        out.oracle.insert(s);
        longest = std::max(longest, blocks);
    }
    RunConfig rc = c.config;
    rc.max_depth = std::max(rc.max_depth, longest ? longest - 1 : 0);
    rc.max_witnesses = std::size_t{1} << 30;
    const Exploration ex = explore(c.program, c.post, rc.search_config());
    out.depth = rc.max_depth;
    out.witnesses = ex.witnesses.size();
    out.witness_models = witness_model_union(ex.witnesses, space, width);
    out.equal = out.witness_models == out.oracle;

    // a[0] not minimal, over exactly the enumerated arrays.
    std::set<State> not_minimal;
    for_each_state(space, [&](const State& s) {
        const Word a0 = s.mem.read(space.cells.front());
        for (Addr cell : space.cells) {
            if (s.mem.read(cell) < a0) {
                not_minimal.insert(s);
                return;
            }
        }
    });
    out.characterized = not_minimal == out.oracle;
    std::ostringstream d;
    d << space.size() << " arrays, oracle " << out.oracle.size() << ", witness models " << out.witness_models.size()
      << ", a[0] not minimal " << not_minimal.size() << ", " << out.witnesses << " witnesses at depth " << out.depth
      << ", nonterminating " << oracle.nonterminating;
    out.detail = d.str();
    return out;
}

} // namespace jumprl
