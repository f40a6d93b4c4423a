#include "jumprl/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "jumprl/harness.hpp"
#include "jumprl/parser.hpp"

namespace jumprl {

namespace {

constexpr int kOk = 0;
constexpr int kInputError = 1;
constexpr int kNoResult = 3;

class InputError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& file) {
    std::ifstream in(file, std::ios::binary);
    if (!in) {
        throw InputError("cannot read '" + file + "'");
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

// Raw flag values; turned into a RunConfig once parsing succeeded.
struct Flags {
    std::string program;
    std::string post;
    std::string post_file;
    std::string init;
    std::string pre;
    std::string domain;
    unsigned width{64};
    std::size_t max_depth{8};
    std::size_t max_witnesses{64};
    std::size_t max_nodes{20000};
    std::size_t fuel{100};
    std::string format{"text"};
    std::string solver;
    std::uint64_t seed{1};
    std::string prune{"bounded"};
    std::string dot_file;
    std::string suite;
    std::string corpus;
    bool regen{false};
    std::size_t programs{0};
    bool mutate{false};
};

void add_common(CLI::App& sub, Flags& f) {
    sub.add_option("--domain", f.domain, "Enumeration domain lo..hi (half-open)");
    sub.add_option("--width", f.width, "Word width in bits (1..64)");
    sub.add_option("--max-depth", f.max_depth, "Search depth in block edges");
    sub.add_option("--max-witnesses", f.max_witnesses, "Stop after this many witnesses");
    sub.add_option("--max-nodes", f.max_nodes, "Stop after this many node expansions");
    sub.add_option("--fuel", f.fuel, "Blocks a concrete run may execute");
    sub.add_option("--format", f.format, "Output format")->check(CLI::IsMember({"text", "json", "dot"}));
    sub.add_option("--solver", f.solver, "SMT-LIB solver command, run through /bin/sh");
    sub.add_option("--seed", f.seed, "Seed for choices and random programs");
    sub.add_option("--prune", f.prune, "Pruning tier")->check(CLI::IsMember({"none", "syntactic", "bounded"}));
}

RunConfig to_config(const Flags& f) {
    RunConfig c;
    c.width = f.width;
    (void)Width(f.width);
    if (!f.domain.empty()) {
        c.domain = parse_domain(f.domain);
    }
    c.max_depth = f.max_depth;
    c.max_witnesses = f.max_witnesses;
    c.max_nodes = f.max_nodes;
    c.fuel = f.fuel;
    c.format = f.format;
    if (!f.solver.empty()) {
        c.solver = f.solver;
    }
    c.seed = f.seed;
    c.prune = parse_prune_tier(f.prune);
    return c;
}

Program load_program(const std::string& file) {
    const std::string text = slurp(file);
    try {
        return parse_program(text);
    } catch (const SourceError& e) {
        throw InputError(file + ":" + e.what());
    }
}

Predicate load_predicate(const std::string& text, const std::string& what) {
    try {
        return parse_predicate(text);
    } catch (const SourceError& e) {
        throw InputError(what + ":" + e.what());
    }
}

Predicate post_of(const Flags& f) {
    if (!f.post_file.empty()) {
        return load_predicate(slurp(f.post_file), f.post_file);
    }
    if (f.post.empty()) {
        throw InputError("a postcondition is required (--post or --post-file)");
    }
    return load_predicate(f.post, "--post");
}

std::string trace_text(const std::vector<Addr>& t) { return to_string(t); }

int cmd_gen(const Flags& f, std::ostream& out) {
    const Program p = load_program(f.program);
    const Predicate q = post_of(f);
    const RunConfig cfg = to_config(f);
    const GenOutput g = generate(p, q, cfg, cfg.format == "dot" || !f.dot_file.empty());
    if (!f.dot_file.empty()) {
        std::ofstream dot(f.dot_file);
        if (!dot) {
            throw InputError("cannot write '" + f.dot_file + "'");
        }
        dot << to_dot(g.exploration.tree);
    }
    if (cfg.format == "json") {
        out << nlohmann::ordered_json{{"config", g.json["config"]}}.dump() << "\n";
        for (const auto& w : g.json["witnesses"]) {
            out << w.dump() << "\n";
        }
        out << nlohmann::ordered_json{{"report", g.json["report"]}}.dump() << "\n";
    } else if (cfg.format == "dot") {
        out << to_dot(g.exploration.tree);
    } else {
        std::size_t i = 0;
        for (const auto& w : g.exploration.witnesses) {
            out << "witness " << ++i << " depth " << w.depth << " trace " << trace_text(w.blocks()) << " "
                << to_string(w.verdict.kind);
            if (w.verdict.model) {
                out << " model " << to_string(*w.verdict.model);
            }
            out << "\n  " << to_string(w.precondition) << "\n";
            const auto tags = w.case_tags();
            if (!tags.empty()) {
                out << "  cases:";
                for (const auto& t : tags) {
                    out << " " << t;
                }
                out << "\n";
            }
        }
        const auto& r = g.exploration.report;
        out << r.emitted << " witnesses (" << g.json["report"]["satisfiable"].get<std::size_t>()
            << " satisfiable), " << r.generated << " generated, " << r.pruned << " pruned, " << r.expanded
            << " expanded, stop: " << r.stop_reason << "\n";
    }
    return g.found_sat ? kOk : kNoResult;
}

int cmd_run(const Flags& f, std::ostream& out) {
    const Program p = load_program(f.program);
    const RunConfig cfg = to_config(f);
    State s0;
    try {
        s0 = parse_state(f.init);
    } catch (const std::exception& e) {
        throw InputError(std::string("--init: ") + e.what());
    }
    auto oracle = ChoiceOracle::seeded(cfg.seed, cfg.domain);
    const Outcome o = run(p, s0, oracle, cfg.fuel, Width(cfg.width));
    nlohmann::ordered_json j;
    j["config"] = to_json(cfg);
    int code = kNoResult;
    if (const auto* e = std::get_if<Exited>(&o)) {
        j["outcome"] = "exited";
        j["state"] = to_string(e->state);
        j["trace"] = nlohmann::ordered_json::array();
        for (Addr a : e->trace) {
            j["trace"].push_back(a.value());
        }
        code = kOk;
    } else if (const auto* fl = std::get_if<Faulted>(&o)) {
        j["outcome"] = "fault";
        j["fault"] = std::string(to_string(fl->kind));
        j["block"] = fl->location.value();
        j["detail"] = fl->detail;
    } else {
        const auto& oof = std::get<OutOfFuel>(o);
        j["outcome"] = "out-of-fuel";
        j["trace"] = nlohmann::ordered_json::array();
        for (Addr a : oof.trace) {
            j["trace"].push_back(a.value());
        }
    }
    if (cfg.format == "json") {
        out << j.dump() << "\n";
        return code;
    }
    const std::string outcome = j["outcome"];
    if (outcome == "exited") {
        out << "exited\nstate " << j["state"].get<std::string>() << "\ntrace "
            << trace_text(std::get<Exited>(o).trace) << "\n";
    } else if (outcome == "fault") {
        out << "fault " << j["fault"].get<std::string>() << " in block " << j["block"].get<std::int64_t>() << ": "
            << j["detail"].get<std::string>() << "\n";
    } else {
        out << "out of fuel after " << cfg.fuel << " blocks\ntrace " << trace_text(std::get<OutOfFuel>(o).trace)
            << "\n";
    }
    return code;
}

int cmd_check(const Flags& f, std::ostream& out) {
    const Program p = load_program(f.program);
    const Predicate q = post_of(f);
    if (f.pre.empty()) {
        throw InputError("a precondition is required (--pre)");
    }
    const Predicate pre = load_predicate(f.pre, "--pre");
    const RunConfig cfg = to_config(f);
    const Width width(cfg.width);
    SatConfig sc = cfg.sat_config();
    sc.budget = std::size_t{1} << 26;
    const auto inputs = input_variables(p, q);

    std::size_t models = 0;
    std::optional<State> counterexample;
    const bool complete = for_each_model(pre, sc, [&](const Model& m) {
        if (counterexample) {
            return;
        }
        StateSpace rest;
        for (const auto& v : inputs) {
            if (!m.vars.contains(v)) {
                rest.vars[v] = cfg.domain;
            }
        }
        const State base = m.to_state();
        for_each_state(rest, [&](const State& extra) {
            if (counterexample) {
                return;
            }
            State s = base;
            for (const auto& [v, w] : extra.vars) {
                s.bind(v, w);
            }
            ++models;
            if (!reaches(p, s, q, cfg.fuel, cfg.domain, width)) {
                counterexample = s;
            }
        });
    });

    nlohmann::ordered_json j;
    j["config"] = to_json(cfg);
    j["models"] = models;
    int code = kOk;
    if (counterexample) {
        j["verdict"] = "counterexample";
        j["counterexample"] = to_string(*counterexample);
        code = kNoResult;
    } else if (!complete) {
        j["verdict"] = "inconclusive";
        code = kNoResult;
    } else {
        j["verdict"] = "confirmed";
    }
    if (cfg.format == "json") {
        out << j.dump() << "\n";
    } else if (counterexample) {
        out << "counterexample " << to_string(*counterexample) << " has no run ending in the postcondition\n";
    } else if (!complete) {
        out << "inconclusive: enumeration budget exhausted after " << models << " states\n";
    } else {
        out << "confirmed over " << models << " states in " << to_string(cfg.domain) << "\n";
    }
    return code;
}

int cmd_test(const Flags& f, const CLI::App& sub, std::ostream& out) {
    const RunConfig cfg = to_config(f);
    const auto root = f.corpus.empty() ? default_corpus_dir() : std::filesystem::path(f.corpus);
    std::vector<CorpusCase> corpus;
    if (f.suite != "axioms") {
        try {
            corpus = load_corpus(root);
        } catch (const std::exception& e) {
            throw InputError("corpus " + root.string() + ": " + e.what());
        }
    }
    const bool seeded = sub.count("--seed") > 0;
    SuiteReport r;
    if (f.suite == "litmus") {
        r = litmus_suite(corpus, f.regen);
    } else if (f.suite == "soundness") {
        SoundnessConfig sc;
        sc.programs = f.programs ? f.programs : sc.programs;
        sc.seed = seeded ? f.seed : sc.seed;
        sc.mutate = f.mutate;
        r = soundness_suite(corpus, sc);
    } else if (f.suite == "completeness") {
        CompletenessConfig cc;
        cc.programs = f.programs ? f.programs : cc.programs;
        cc.seed = seeded ? f.seed : cc.seed;
        r = completeness_suite(corpus, cc);
    } else {
        r = axioms_suite(f.programs ? f.programs : 10000, f.seed);
    }
    if (cfg.format == "json") {
        out << nlohmann::ordered_json{{"config", to_json(cfg)}, {"suite", r.to_json()}}.dump() << "\n";
    } else {
        out << r.name << ": " << r.passed << "/" << r.cases << " passed, " << r.failed << " failed, " << r.skipped
            << " skipped\n";
        for (const auto& n : r.notes) {
            out << "  " << n << "\n";
        }
        for (const auto& fail : r.failures) {
            out << "FAIL " << fail << "\n";
        }
    }
    return r.ok() ? kOk : kNoResult;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Precondition generation for JUMP programs"};
    app.name("jumprl");
    app.require_subcommand(1);
    Flags f;

    auto* gen = app.add_subcommand("gen", "Generate preconditions for reaching a postcondition");
    gen->add_option("program", f.program, "Program file (.jmp)")->required();
    gen->add_option("--post", f.post, "Postcondition");
    gen->add_option("--post-file", f.post_file, "File holding the postcondition");
    gen->add_option("--dot", f.dot_file, "Also write the search tree as DOT");
    add_common(*gen, f);

    auto* run_cmd = app.add_subcommand("run", "Execute a program from an initial state");
    run_cmd->add_option("program", f.program, "Program file (.jmp)")->required();
    run_cmd->add_option("--init", f.init, "Initial state, e.g. x=4,y=1,[7]=42");
    add_common(*run_cmd, f);

    auto* check = app.add_subcommand("check", "Check a reachability triple by bounded enumeration");
    check->add_option("program", f.program, "Program file (.jmp)")->required();
    check->add_option("--post", f.post, "Postcondition");
    check->add_option("--post-file", f.post_file, "File holding the postcondition");
    check->add_option("--pre", f.pre, "Precondition to check");
    add_common(*check, f);

    auto* test = app.add_subcommand("test", "Run a harness suite");
    test->add_option("suite", f.suite, "Suite name")
        ->required()
        ->check(CLI::IsMember({"litmus", "soundness", "completeness", "axioms"}));
    test->add_option("--corpus", f.corpus, "Corpus directory");
    test->add_flag("--regen", f.regen, "Rewrite the golden files instead of comparing");
    test->add_option("--programs", f.programs, "Random programs (instances for axioms)");
    test->add_flag("--mutate", f.mutate, "Inject a branch polarity fault (soundness)");
    add_common(*test, f);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (gen->parsed()) {
            return cmd_gen(f, out);
        }
        if (run_cmd->parsed()) {
            return cmd_run(f, out);
        }
        if (check->parsed()) {
            return cmd_check(f, out);
        }
        return cmd_test(f, *test, out);
    } catch (const std::exception& e) {
        err << "jumprl: " << e.what() << "\n";
        return kInputError;
    }
}

} // namespace jumprl
