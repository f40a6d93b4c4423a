#include <fstream>
#include <sstream>

#include "jumprl/harness.hpp"
#include "jumprl/parser.hpp"

#ifndef JUMPRL_CORPUS_DIR
#define JUMPRL_CORPUS_DIR "corpus"
#endif

namespace jumprl {

namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& f) {
    std::ifstream in(f, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + f.string());
    }
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

StateSpace space_from_json(const nlohmann::json& j, const RunConfig& cfg) {
    StateSpace s;
    s.cell_values = cfg.domain;
    s.choices = cfg.domain;
    if (j.contains("vars")) {
        for (const auto& [name, d] : j["vars"].items()) {
            s.vars[name] = parse_domain(d.get<std::string>());
        }
    }
    if (j.contains("cells")) {
        for (const auto& a : j["cells"]) {
            s.cells.push_back(Word{a.get<std::int64_t>()});
        }
    }
    if (j.contains("cellValues")) {
        s.cell_values = parse_domain(j["cellValues"].get<std::string>());
    }
    if (j.contains("choices")) {
        s.choices = parse_domain(j["choices"].get<std::string>());
    }
    return s;
}

} // namespace

fs::path default_corpus_dir() {
    if (const char* env = std::getenv("JUMPRL_CORPUS")) {
        return env;
    }
    return JUMPRL_CORPUS_DIR;
}

CorpusCase load_case(const fs::path& dir) {
    CorpusCase c;
    c.dir = dir;
    c.name = dir.filename().string();
    c.program_text = slurp(dir / "program.jmp");
    c.program = parse_program(c.program_text);
    c.post = parse_predicate(slurp(dir / "post.pred"));
    if (fs::exists(dir / "expect.json")) {
        c.expect = nlohmann::json::parse(slurp(dir / "expect.json"));
    } else {
        c.expect = nlohmann::json::object();
    }
    c.kind = c.expect.value("kind", std::string("smoke"));
    if (c.expect.contains("config")) {
        c.config = run_config_from_json(c.expect["config"]);
    }
    if (c.expect.contains("space")) {
        c.space = space_from_json(c.expect["space"], c.config);
    }
    return c;
}

std::vector<CorpusCase> load_corpus(const fs::path& root) {
    std::vector<fs::path> dirs;
    for (const auto& entry : fs::directory_iterator(root)) {
        if (entry.is_directory() && fs::exists(entry.path() / "program.jmp")) {
            dirs.push_back(entry.path());
        }
    }
    std::sort(dirs.begin(), dirs.end());
    std::vector<CorpusCase> out;
    for (const auto& d : dirs) {
        out.push_back(load_case(d));
    }
    return out;
}

StateSpace space_for(const CorpusCase& c) {
    StateSpace s = c.space.value_or(StateSpace{{}, {}, c.config.domain, c.config.domain});
    if (!c.space || !c.expect["space"].contains("vars")) {
        for (const auto& v : input_variables(c.program, c.post)) {
            s.vars[v] = c.config.domain;
        }
    }
    return s;
}

nlohmann::ordered_json witness_json(const Witness& w) {
    nlohmann::ordered_json j;
    j["precondition"] = to_string(w.precondition);
    j["trace"] = nlohmann::ordered_json::array();
    for (Addr a : w.blocks()) {
        j["trace"].push_back(a.value());
    }
    j["caseTags"] = w.case_tags();
    j["depth"] = w.depth;
    j["verdict"] = std::string(to_string(w.verdict.kind));
    if (w.verdict.model) {
        nlohmann::ordered_json m = nlohmann::ordered_json::object();
        for (const auto& [name, v] : w.verdict.model->vars) {
            m[name] = v.value();
        }
        for (const auto& [a, v] : w.verdict.model->cells) {
            m["[" + std::to_string(a.value()) + "]"] = v.value();
        }
        j["model"] = std::move(m);
    }
    return j;
}

nlohmann::ordered_json report_json(const ExploreReport& r, const std::vector<Witness>& ws) {
    std::size_t sat = 0;
    for (const auto& w : ws) {
        sat += w.verdict.kind == VerdictKind::Sat;
    }
    nlohmann::ordered_json j;
    j["generated"] = r.generated;
    j["pruned"] = r.pruned;
    j["expanded"] = r.expanded;
    j["emitted"] = r.emitted;
    j["satisfiable"] = sat;
    j["stop"] = r.stop_reason;
    return j;
}

GenOutput generate(const Program& p, const Predicate& q, const RunConfig& cfg, bool record_tree) {
    SearchConfig sc = cfg.search_config();
    sc.record_tree = record_tree;
    GenOutput out;
    out.exploration = explore(p, q, sc);
    out.json["config"] = to_json(cfg);
    out.json["witnesses"] = nlohmann::ordered_json::array();
    for (const auto& w : out.exploration.witnesses) {
        out.json["witnesses"].push_back(witness_json(w));
        out.found_sat = out.found_sat || w.verdict.kind == VerdictKind::Sat;
    }
    out.json["report"] = report_json(out.exploration.report, out.exploration.witnesses);
    return out;
}

std::string golden_text(const CorpusCase& c) {
    const GenOutput g = generate(c.program, c.post, c.config);
    nlohmann::ordered_json j;
    j["kind"] = c.kind;
    j["config"] = g.json["config"];
    if (c.expect.contains("space")) {
        j["space"] = c.expect["space"];
    }
    j["witnesses"] = g.json["witnesses"];
    j["report"] = g.json["report"];
    return j.dump(2) + "\n";
}

nlohmann::ordered_json SuiteReport::to_json() const {
    nlohmann::ordered_json j;
    j["suite"] = name;
    j["cases"] = cases;
    j["passed"] = passed;
    j["failed"] = failed;
    j["skipped"] = skipped;
    j["failures"] = failures;
    j["notes"] = notes;
    return j;
}

SuiteReport litmus_suite(const std::vector<CorpusCase>& corpus, bool regen) {
    SuiteReport r;
    r.name = "litmus";
    for (const auto& c : corpus) {
        if (c.kind != "litmus") {
            continue;
        }
        ++r.cases;
        const std::string text = golden_text(c);
        const fs::path file = c.dir / "expect.json";
        if (regen) {
            std::ofstream(file, std::ios::binary) << text;
            ++r.passed;
            r.notes.push_back(c.name + ": regenerated");
            continue;
        }
        const std::string want = slurp(file);
        if (want == text) {
            ++r.passed;
            continue;
        }
        ++r.failed;
        std::istringstream a(want), b(text);
        std::string la, lb;
        std::size_t line = 1;
        while (true) {
            const bool ga = static_cast<bool>(std::getline(a, la));
            const bool gb = static_cast<bool>(std::getline(b, lb));
            if (!ga && !gb) {
                break;
            }
            if (!ga || !gb || la != lb) {
                r.failures.push_back(c.name + ": expect.json line " + std::to_string(line) + ": expected '" + la +
                                     "', got '" + lb + "'");
                break;
            }
            ++line;
        }
    }
    return r;
}

} // namespace jumprl
