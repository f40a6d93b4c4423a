#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <json.hpp>

#include "jumprl/search.hpp"

namespace jumprl {

/// Everything that determines a run's output. Serialized into every JSON
/// report so a run can be reproduced from its output.
struct RunConfig {
    unsigned width{64};
    Domain domain;
    std::size_t max_depth{8};
    std::size_t max_witnesses{64};
    std::size_t max_nodes{20000};
    std::size_t fuel{100};
    std::string format{"text"};
    std::optional<std::string> solver;
    std::uint64_t seed{1};
    PruneTier prune{PruneTier::Bounded};

    [[nodiscard]] SatConfig sat_config() const;
    [[nodiscard]] SearchConfig search_config() const;
};

nlohmann::ordered_json to_json(const RunConfig& c);
/// Fields absent from `j` keep the values already in `base`.
RunConfig run_config_from_json(const nlohmann::json& j, RunConfig base = {});

PruneTier parse_prune_tier(std::string_view s);

} // namespace jumprl
