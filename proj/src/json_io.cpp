#include "panopt/json_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "panopt/errors.hpp"

namespace panopt {

std::string format_double(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

nlohmann::ordered_json to_json(const Leg& leg) {
    nlohmann::ordered_json j;
    j["strike"] = leg.strike;
    j["range_factor"] = leg.range_factor;
    j["is_put"] = leg.is_put;
    j["is_long"] = leg.is_long;
    j["size"] = leg.size;
    return j;
}

Leg leg_from_json(const nlohmann::json& j) {
    Leg leg;
    try {
        leg.strike = j.at("strike").get<double>();
        leg.range_factor = j.value("range_factor", 1.0);
        leg.is_put = j.at("is_put").get<bool>();
        leg.is_long = j.value("is_long", false);
        leg.size = j.value("size", 1.0);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad leg: ") + e.what());
    }
    validate_leg(leg);
    return leg;
}

nlohmann::ordered_json to_json(const Position& pos) {
    nlohmann::ordered_json j;
    j["pair"] = {{"numeraire", pos.pair.numeraire}, {"asset", pos.pair.asset}};
    j["legs"] = nlohmann::ordered_json::array();
    for (const Leg& leg : pos.legs) j["legs"].push_back(to_json(leg));
    return j;
}

nlohmann::ordered_json to_json(const PremiumStats& stats) {
    nlohmann::ordered_json j;
    j["n_paths"] = stats.n_paths;
    j["mean"] = stats.mean;
    j["std_dev"] = stats.std_dev;
    j["mean_std_error"] = stats.mean_std_error;
    j["cv"] = stats.cv;
    j["frac_zero"] = stats.frac_zero;
    j["frac_ge_2bs"] = stats.frac_ge_2bs;
    j["bs_price"] = stats.bs_price;
    return j;
}

nlohmann::ordered_json to_json(const MarginReport& rep) {
    nlohmann::ordered_json j;
    j["requirement"] = rep.requirement;
    j["base_component"] = rep.base_component;
    j["itm_component"] = rep.itm_component;
    j["premium_component"] = rep.premium_component;
    j["ratio_used"] = rep.ratio_used;
    return j;
}

nlohmann::ordered_json to_json(const SolvencyReport& rep) {
    nlohmann::ordered_json j;
    j["solvent"] = rep.solvent;
    j["collateral"] = rep.collateral;
    j["required"] = rep.required;
    j["shortfall"] = rep.shortfall;
    j["books"] = nlohmann::ordered_json::array();
    for (const BookRequirement& b : rep.books) {
        nlohmann::ordered_json e;
        e["tick"] = b.tick;
        e["width"] = b.width;
        e["is_put"] = b.is_put;
        e["is_long"] = b.is_long;
        e["notional"] = b.notional;
        e["itm_value"] = b.itm_value;
        e["premium"] = b.premium;
        e["requirement"] = b.requirement;
        j["books"].push_back(std::move(e));
    }
    return j;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return buf.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << text;
    if (!f) throw IoError("failed writing " + path);
}

}  // namespace panopt
