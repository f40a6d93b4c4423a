#include "jumprl/run_config.hpp"

#include <stdexcept>

namespace jumprl {

SatConfig RunConfig::sat_config() const {
    SatConfig s;
    s.domain = domain;
    s.width = Width(width);
    s.solver = solver;
    return s;
}

SearchConfig RunConfig::search_config() const {
    SearchConfig s;
    s.max_depth = max_depth;
    s.max_witnesses = max_witnesses;
    s.max_nodes = max_nodes;
    s.prune = prune;
    s.sat = sat_config();
    return s;
}

nlohmann::ordered_json to_json(const RunConfig& c) {
    nlohmann::ordered_json j;
    j["width"] = c.width;
    j["domain"] = to_string(c.domain);
    j["maxDepth"] = c.max_depth;
    j["maxWitnesses"] = c.max_witnesses;
    j["maxNodes"] = c.max_nodes;
    j["fuel"] = c.fuel;
    j["format"] = c.format;
    j["prune"] = std::string(to_string(c.prune));
    j["solver"] = c.solver ? nlohmann::ordered_json(*c.solver) : nlohmann::ordered_json(nullptr);
    j["seed"] = c.seed;
    return j;
}

PruneTier parse_prune_tier(std::string_view s) {
    if (s == "none") {
        return PruneTier::None;
    }
    if (s == "syntactic") {
        return PruneTier::Syntactic;
    }
    if (s == "bounded") {
        return PruneTier::Bounded;
    }
    throw std::invalid_argument("unknown prune tier '" + std::string(s) + "'");
}

RunConfig run_config_from_json(const nlohmann::json& j, RunConfig c) {
    if (j.contains("width")) {
        c.width = j["width"].get<unsigned>();
        (void)Width(c.width);
    }
    if (j.contains("domain")) {
        c.domain = parse_domain(j["domain"].get<std::string>());
    }
    if (j.contains("maxDepth")) {
        c.max_depth = j["maxDepth"].get<std::size_t>();
    }
    if (j.contains("maxWitnesses")) {
        c.max_witnesses = j["maxWitnesses"].get<std::size_t>();
    }
    if (j.contains("maxNodes")) {
        c.max_nodes = j["maxNodes"].get<std::size_t>();
    }
    if (j.contains("fuel")) {
        c.fuel = j["fuel"].get<std::size_t>();
    }
    if (j.contains("format")) {
        c.format = j["format"].get<std::string>();
    }
    if (j.contains("prune")) {
        c.prune = parse_prune_tier(j["prune"].get<std::string>());
    }
    if (j.contains("solver")) {
        c.solver = j["solver"].is_null() ? std::nullopt : std::optional(j["solver"].get<std::string>());
    }
    if (j.contains("seed")) {
        c.seed = j["seed"].get<std::uint64_t>();
    }
    return c;
}

} // namespace jumprl
