#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

namespace panopt {

struct ScenarioResult {
    // Summary printed to stdout, one JSON document.
    nlohmann::ordered_json summary;
    std::vector<std::string> files_written;
};

// Known kinds: premium_mc, payoff, margin, pool_replay, iv, dte.
// `seed` and `out` override the config fields of the same name.
ScenarioResult run_scenario(const std::string& kind, const nlohmann::json& config,
                            std::optional<std::uint64_t> seed = std::nullopt,
                            std::optional<std::string> out = std::nullopt);

}  // namespace panopt
