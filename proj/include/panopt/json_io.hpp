#pragma once

#include <string>

#include <json.hpp>

#include "panopt/instrument.hpp"
#include "panopt/premium.hpp"
#include "panopt/risk.hpp"

namespace panopt {

// Shortest decimal string that parses back to exactly the same double.
// Used for CSV output so repeated runs are byte-identical.
std::string format_double(double v);

nlohmann::ordered_json to_json(const Leg& leg);
Leg leg_from_json(const nlohmann::json& j);
nlohmann::ordered_json to_json(const Position& pos);
nlohmann::ordered_json to_json(const PremiumStats& stats);
nlohmann::ordered_json to_json(const MarginReport& rep);
nlohmann::ordered_json to_json(const SolvencyReport& rep);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace panopt
