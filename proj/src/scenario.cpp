#include "panopt/scenario.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "panopt/black_scholes.hpp"
#include "panopt/errors.hpp"
#include "panopt/gbm.hpp"
#include "panopt/instrument.hpp"
#include "panopt/json_io.hpp"
#include "panopt/pool.hpp"
#include "panopt/premium.hpp"
#include "panopt/risk.hpp"

namespace panopt {

namespace {

constexpr double kMinutesPerYear = 365.0 * 24.0 * 60.0;

double need_num(const nlohmann::json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw ConfigError("config field '" + key + "' must be a number");
    }
    return j.at(key).get<double>();
}

double opt_num(const nlohmann::json& j, const std::string& key, double def) {
    if (!j.contains(key)) return def;
    if (!j.at(key).is_number()) {
        throw ConfigError("config field '" + key + "' must be a number");
    }
    return j.at(key).get<double>();
}

std::string need_str(const nlohmann::json& j, const std::string& key) {
    if (!j.contains(key) || !j.at(key).is_string()) {
        throw ConfigError("config field '" + key + "' must be a string");
    }
    return j.at(key).get<std::string>();
}

std::string opt_str(const nlohmann::json& j, const std::string& key,
                    const std::string& def) {
    if (!j.contains(key)) return def;
    if (!j.at(key).is_string()) {
        throw ConfigError("config field '" + key + "' must be a string");
    }
    return j.at(key).get<std::string>();
}

bool opt_bool(const nlohmann::json& j, const std::string& key, bool def) {
    if (!j.contains(key)) return def;
    if (!j.at(key).is_boolean()) {
        throw ConfigError("config field '" + key + "' must be a boolean");
    }
    return j.at(key).get<bool>();
}

std::optional<std::string> pick_out(const nlohmann::json& cfg,
                                    const std::optional<std::string>& override_out) {
    if (override_out) return override_out;
    if (cfg.contains("out")) return need_str(cfg, "out");
    return std::nullopt;
}

ScenarioResult run_premium_mc(const nlohmann::json& cfg,
                              std::optional<std::uint64_t> seed,
                              std::optional<std::string> out) {
    GbmParams p;
    p.s0 = opt_num(cfg, "s0", 1.0);
    p.sigma = need_num(cfg, "sigma");
    p.drift = opt_num(cfg, "drift", 0.0);

    if (cfg.contains("dt_years") && cfg.contains("dt_minutes")) {
        throw ConfigError("give either dt_years or dt_minutes, not both");
    }
    const double dt_minutes = opt_num(cfg, "dt_minutes", 1.0);
    p.dt = cfg.contains("dt_years") ? need_num(cfg, "dt_years")
                                    : dt_minutes / kMinutesPerYear;

    if (cfg.contains("steps") == cfg.contains("days")) {
        throw ConfigError("give exactly one of steps or days");
    }
    if (cfg.contains("steps")) {
        const double s = need_num(cfg, "steps");
        if (!(s >= 1.0)) throw ConfigError("steps must be >= 1");
        p.steps = static_cast<std::uint64_t>(std::llround(s));
    } else {
        const double days = need_num(cfg, "days");
        if (!(days > 0.0)) throw ConfigError("days must be positive");
        const double s = days / 365.0 / p.dt;
        p.steps = static_cast<std::uint64_t>(std::llround(s));
        if (p.steps == 0) throw ConfigError("days shorter than one step");
    }
    p.seed = seed ? *seed
                  : static_cast<std::uint64_t>(
                        std::llround(opt_num(cfg, "seed", 0.0)));

    const double strike = need_num(cfg, "strike");
    const double n_paths_raw = opt_num(cfg, "n_paths", 10000.0);
    if (!(n_paths_raw >= 1.0)) throw ConfigError("n_paths must be >= 1");
    const auto n_paths = static_cast<std::uint64_t>(std::llround(n_paths_raw));

    McConfig mc;
    const std::string est = opt_str(cfg, "estimator", "theta");
    if (est == "theta") {
        mc.estimator = PremiumEstimator::theta;
    } else if (est == "tick") {
        mc.estimator = PremiumEstimator::tick;
    } else {
        throw ConfigError("estimator must be 'theta' or 'tick', got '" + est + "'");
    }
    mc.residual_dt = opt_num(cfg, "residual_dt_years", 0.0);
    mc.tick_spacing = opt_num(cfg, "tick_spacing", kDefaultTickSpacing);
    const std::string mode = opt_str(cfg, "mode", "parallel");
    if (mode == "parallel") {
        mc.mode = ExecutionMode::parallel;
    } else if (mode == "serial") {
        mc.mode = ExecutionMode::serial;
    } else {
        throw ConfigError("mode must be 'parallel' or 'serial', got '" + mode + "'");
    }

    const McResult res = mc_premium_distribution(p, strike, n_paths, mc);

    ScenarioResult out_res;
    nlohmann::ordered_json& s = out_res.summary;
    s["kind"] = "premium_mc";
    s["s0"] = p.s0;
    s["strike"] = strike;
    s["sigma"] = p.sigma;
    s["drift"] = p.drift;
    s["dt_years"] = p.dt;
    s["steps"] = p.steps;
    s["horizon_years"] = horizon(p);
    s["n_paths"] = n_paths;
    s["estimator"] = est;
    s["mode"] = mode;
    s["seed"] = p.seed;
    s["stats"] = to_json(res.stats);

    if (auto path = pick_out(cfg, out)) {
        write_text_file(*path, s.dump(2) + "\n");
        out_res.files_written.push_back(*path);
    }
    if (cfg.contains("paths_csv")) {
        const std::string path = need_str(cfg, "paths_csv");
        std::string csv = "path_index,premium\n";
        for (std::size_t i = 0; i < res.premiums.size(); ++i) {
            csv += std::to_string(i);
            csv += ',';
            csv += format_double(res.premiums[i]);
            csv += '\n';
        }
        write_text_file(path, csv);
        out_res.files_written.push_back(path);
    }
    return out_res;
}

ScenarioResult run_payoff(const nlohmann::json& cfg,
                          std::optional<std::string> out) {
    const double ts = opt_num(cfg, "tick_spacing", kDefaultTickSpacing);
    TokenPair pair{"DAI", "ETH"};
    if (cfg.contains("pair")) {
        pair.numeraire = need_str(cfg.at("pair"), "numeraire");
        pair.asset = need_str(cfg.at("pair"), "asset");
    }

    Position pos;
    double entry_spot = 0.0;
    if (cfg.contains("preset")) {
        const std::string name = need_str(cfg, "preset");
        const double spot = need_num(cfg, "spot");
        PresetParams pp;
        if (cfg.contains("params")) {
            const auto& pj = cfg.at("params");
            pp.otm_offset = opt_num(pj, "otm_offset", pp.otm_offset);
            pp.wing_width = opt_num(pj, "wing_width", pp.wing_width);
            pp.range_factor = opt_num(pj, "range_factor", pp.range_factor);
            pp.size = opt_num(pj, "size", pp.size);
        }
        pos = strategy_preset(name, spot, pp, pair);
        entry_spot = opt_num(cfg, "entry_spot", spot);
    } else if (cfg.contains("legs")) {
        pos.pair = pair;
        for (const auto& l : cfg.at("legs")) pos.legs.push_back(leg_from_json(l));
        entry_spot = need_num(cfg, "entry_spot");
    } else {
        throw ConfigError("payoff needs either 'preset' or 'legs'");
    }

    if (!cfg.contains("grid")) throw ConfigError("payoff needs a 'grid' object");
    const auto& g = cfg.at("grid");
    const double lo = need_num(g, "min");
    const double hi = need_num(g, "max");
    const double points_raw = need_num(g, "points");
    if (!(lo > 0.0) || !(hi > lo)) {
        throw ConfigError("grid needs 0 < min < max");
    }
    if (!(points_raw >= 2.0)) throw ConfigError("grid.points must be >= 2");
    const auto points = static_cast<std::size_t>(std::llround(points_raw));

    std::vector<double> grid(points);
    for (std::size_t i = 0; i < points; ++i) {
        grid[i] = lo + (hi - lo) * static_cast<double>(i) /
                           static_cast<double>(points - 1);
    }
    const auto curve = payoff_curve(pos, grid, entry_spot, ts);

    const auto path = pick_out(cfg, out);
    if (!path) throw ConfigError("payoff needs an output path ('out' or --out)");
    std::string csv = "price,profit\n";
    double lo_profit = curve.front().second;
    double hi_profit = lo_profit;
    for (const auto& [price, profit] : curve) {
        csv += format_double(price);
        csv += ',';
        csv += format_double(profit);
        csv += '\n';
        lo_profit = std::min(lo_profit, profit);
        hi_profit = std::max(hi_profit, profit);
    }
    write_text_file(*path, csv);

    ScenarioResult res;
    res.summary["kind"] = "payoff";
    res.summary["legs"] = pos.legs.size();
    res.summary["entry_spot"] = entry_spot;
    res.summary["grid_points"] = points;
    res.summary["min_profit"] = lo_profit;
    res.summary["max_profit"] = hi_profit;
    res.summary["out"] = *path;
    res.files_written.push_back(*path);
    return res;
}

ScenarioResult run_margin(const nlohmann::json& cfg,
                          std::optional<std::string> out) {
    const std::string type = need_str(cfg, "type");
    ScenarioResult res;
    res.summary["kind"] = "margin";
    res.summary["type"] = type;
    if (type == "seller" || type == "buyer") {
        const double notional = need_num(cfg, "notional");
        const double itm = opt_num(cfg, "itm", 0.0);
        const double premium = opt_num(cfg, "premium", 0.0);
        const MarginReport rep =
            type == "seller"
                ? seller_requirement(notional, itm, premium,
                                     opt_num(cfg, "ratio", 0.20))
                : buyer_requirement(notional, itm, premium,
                                    opt_num(cfg, "ratio", 0.10));
        res.summary["report"] = to_json(rep);
    } else if (type == "cboe") {
        const double v =
            cboe_margin(need_num(cfg, "premium"), need_num(cfg, "spot"),
                        need_num(cfg, "strike"), opt_bool(cfg, "is_put", true),
                        opt_num(cfg, "multiplier", 100.0));
        res.summary["requirement"] = v;
    } else {
        throw ConfigError("margin type must be seller, buyer or cboe, got '" +
                          type + "'");
    }
    if (auto path = pick_out(cfg, out)) {
        write_text_file(*path, res.summary.dump(2) + "\n");
        res.files_written.push_back(*path);
    }
    return res;
}

ScenarioResult run_pool_replay(const nlohmann::json& cfg,
                               std::optional<std::string> out) {
    const std::string log_path = need_str(cfg, "log");
    std::string csv = "step,op,utilization\n";
    std::size_t events = 0;
    const auto observer = [&](const Pool& pool, std::size_t line_no,
                              const std::string& op) {
        ++events;
        csv += std::to_string(line_no);
        csv += ',';
        csv += op;
        csv += ',';
        try {
            csv += format_double(pool_utilization(pool));
        } catch (const DegeneratePoolError&) {
            csv += "nan";
        }
        csv += '\n';
    };
    const Pool pool = Pool::replay_file(log_path, observer);

    ScenarioResult res;
    res.summary["kind"] = "pool_replay";
    res.summary["log"] = log_path;
    res.summary["events"] = events;
    res.summary["accounts"] = pool.accounts().size();
    res.summary["totals"] = {{"liquidity", pool.totals().liquidity},
                             {"notional", pool.totals().notional},
                             {"locked", pool.totals().locked},
                             {"shares", pool.totals().shares},
                             {"bad_debt", pool.totals().bad_debt}};
    if (auto path = pick_out(cfg, out)) {
        write_text_file(*path, pool.snapshot().dump(2) + "\n");
        res.summary["out"] = *path;
        res.files_written.push_back(*path);
    }
    if (cfg.contains("utilization_csv")) {
        const std::string path = need_str(cfg, "utilization_csv");
        write_text_file(path, csv);
        res.summary["utilization_csv"] = path;
        res.files_written.push_back(path);
    }
    return res;
}

ScenarioResult run_iv(const nlohmann::json& cfg, std::optional<std::string> out) {
    const double v = implied_vol(need_num(cfg, "fee_rate"), need_num(cfg, "volume"),
                                 need_num(cfg, "tick_liquidity"));
    ScenarioResult res;
    res.summary["kind"] = "iv";
    res.summary["implied_vol"] = v;
    if (auto path = pick_out(cfg, out)) {
        write_text_file(*path, res.summary.dump(2) + "\n");
        res.files_written.push_back(*path);
    }
    return res;
}

ScenarioResult run_dte(const nlohmann::json& cfg, std::optional<std::string> out) {
    const double sigma = need_num(cfg, "sigma");
    ScenarioResult res;
    res.summary["kind"] = "dte";
    res.summary["sigma"] = sigma;
    if (cfg.contains("range_factor") == cfg.contains("dte_years")) {
        throw ConfigError("give exactly one of range_factor or dte_years");
    }
    if (cfg.contains("range_factor")) {
        const double r = need_num(cfg, "range_factor");
        res.summary["range_factor"] = r;
        res.summary["effective_dte_years"] = effective_dte(r, sigma);
        if (cfg.contains("strike")) {
            res.summary["gamma_cap"] = gamma_cap(need_num(cfg, "strike"), r);
        }
    } else {
        const double t = need_num(cfg, "dte_years");
        res.summary["dte_years"] = t;
        res.summary["range_factor"] = range_for_dte(t, sigma);
    }
    if (auto path = pick_out(cfg, out)) {
        write_text_file(*path, res.summary.dump(2) + "\n");
        res.files_written.push_back(*path);
    }
    return res;
}

}  // namespace

ScenarioResult run_scenario(const std::string& kind, const nlohmann::json& config,
                            std::optional<std::uint64_t> seed,
                            std::optional<std::string> out) {
    if (!config.is_object()) {
        throw ConfigError("config root must be a JSON object");
    }
    try {
        if (kind == "premium_mc") return run_premium_mc(config, seed, out);
        if (kind == "payoff") return run_payoff(config, out);
        if (kind == "margin") return run_margin(config, out);
        if (kind == "pool_replay") return run_pool_replay(config, out);
        if (kind == "iv") return run_iv(config, out);
        if (kind == "dte") return run_dte(config, out);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("bad config: ") + e.what());
    }
    throw ConfigError("unknown scenario kind '" + kind +
                      "'; expected premium_mc, payoff, margin, pool_replay, iv or dte");
}

}  // namespace panopt
