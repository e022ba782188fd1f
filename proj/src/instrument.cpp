#include "panopt/instrument.hpp"

#include <algorithm>
#include <cmath>

#include "panopt/errors.hpp"

namespace panopt {

namespace {

void check_tick_spacing(double tick_spacing) {
    if (!(tick_spacing > 0.0) || !(tick_spacing < 1.0)) {
        throw DomainError("tick_spacing must be in (0, 1), got " +
                          std::to_string(tick_spacing));
    }
}

void check_spot(double spot) {
    if (!(spot > 0.0) || !std::isfinite(spot)) {
        throw DomainError("spot must be positive and finite, got " +
                          std::to_string(spot));
    }
}

}  // namespace

void validate_leg(const Leg& leg) {
    if (!(leg.strike > 0.0) || !std::isfinite(leg.strike)) {
        throw DomainError("leg strike must be positive, got " +
                          std::to_string(leg.strike));
    }
    if (!(leg.range_factor >= 1.0) || !std::isfinite(leg.range_factor)) {
        throw DomainError("leg range_factor must be >= 1, got " +
                          std::to_string(leg.range_factor));
    }
    if (!(leg.size > 0.0) || !std::isfinite(leg.size)) {
        throw DomainError("leg size must be positive, got " +
                          std::to_string(leg.size));
    }
}

void validate_position(const Position& pos) {
    if (pos.legs.empty()) {
        throw DomainError("position has no legs");
    }
    if (pos.legs.size() > static_cast<std::size_t>(kMaxLegs)) {
        throw CapacityError("position has " + std::to_string(pos.legs.size()) +
                            " legs, max is " + std::to_string(kMaxLegs));
    }
    for (const Leg& leg : pos.legs) validate_leg(leg);
}

double effective_range_factor(double range_factor, double tick_spacing) {
    check_tick_spacing(tick_spacing);
    if (!(range_factor >= 1.0) || !std::isfinite(range_factor)) {
        throw DomainError("range_factor must be >= 1, got " +
                          std::to_string(range_factor));
    }
    return std::max(range_factor, 1.0 + tick_spacing / 2.0);
}

PriceRange leg_range(const Leg& leg, double tick_spacing) {
    validate_leg(leg);
    const double r = effective_range_factor(leg.range_factor, tick_spacing);
    return {leg.strike / r, leg.strike * r};
}

double leg_liquidity(const Leg& leg, double tick_spacing) {
    validate_leg(leg);
    const double r = effective_range_factor(leg.range_factor, tick_spacing);
    return leg.size * std::sqrt(leg.strike) * std::sqrt(r) / (r - 1.0);
}

double leg_notional(const Leg& leg) {
    validate_leg(leg);
    return leg.size * leg.strike;
}

double lp_value(const Leg& leg, double spot, double tick_spacing) {
    validate_leg(leg);
    check_spot(spot);
    const double r = effective_range_factor(leg.range_factor, tick_spacing);
    const double k = leg.strike;
    const double lower = k / r;
    const double upper = k * r;
    if (spot <= lower) return leg.size * spot;          // all asset
    if (spot >= upper) return leg.size * k;             // all numeraire
    const double liq = leg.size * std::sqrt(k) * std::sqrt(r) / (r - 1.0);
    // y(P) + x(P) * P with y = L(sqrt(P) - sqrt(lower)), x = L(1/sqrt(P) - 1/sqrt(upper))
    const double sp = std::sqrt(spot);
    return liq * (2.0 * sp - std::sqrt(lower) - spot / std::sqrt(upper));
}

double leg_basis(const Leg& leg, double spot, double tick_spacing) {
    const double value = lp_value(leg, spot, tick_spacing);
    const double debt =
        leg.is_put ? leg.size * leg.strike : leg.size * spot;
    return value - debt;
}

double leg_payoff(const Leg& leg, double spot, double entry_spot,
                  double tick_spacing) {
    check_spot(entry_spot);
    const double change =
        leg_basis(leg, spot, tick_spacing) - leg_basis(leg, entry_spot, tick_spacing);
    return leg.is_long ? -change : change;
}

double payoff(const Position& pos, double spot, double entry_spot,
              double tick_spacing) {
    validate_position(pos);
    double total = 0.0;
    for (const Leg& leg : pos.legs) {
        total += leg_payoff(leg, spot, entry_spot, tick_spacing);
    }
    return total;
}

std::vector<std::pair<double, double>> payoff_curve(const Position& pos,
                                                    const std::vector<double>& grid,
                                                    double entry_spot,
                                                    double tick_spacing) {
    validate_position(pos);
    std::vector<std::pair<double, double>> curve;
    curve.reserve(grid.size());
    for (double price : grid) {
        curve.emplace_back(price, payoff(pos, price, entry_spot, tick_spacing));
    }
    return curve;
}

Strategy strategy_from_name(const std::string& name) {
    if (name == "straddle") return Strategy::straddle;
    if (name == "strangle") return Strategy::strangle;
    if (name == "iron_condor") return Strategy::iron_condor;
    if (name == "jade_lizard") return Strategy::jade_lizard;
    if (name == "ratio_spread") return Strategy::ratio_spread;
    if (name == "bats") return Strategy::bats;
    if (name == "zebra") return Strategy::zebra;
    if (name == "spiked_lizard") return Strategy::spiked_lizard;
    throw UnsupportedStrategyError("unknown strategy preset: " + name);
}

std::string strategy_name(Strategy s) {
    switch (s) {
        case Strategy::straddle: return "straddle";
        case Strategy::strangle: return "strangle";
        case Strategy::iron_condor: return "iron_condor";
        case Strategy::jade_lizard: return "jade_lizard";
        case Strategy::ratio_spread: return "ratio_spread";
        case Strategy::bats: return "bats";
        case Strategy::zebra: return "zebra";
        case Strategy::spiked_lizard: return "spiked_lizard";
    }
    throw UnsupportedStrategyError("bad strategy enum value");
}

Position strategy_preset(Strategy s, double spot, const PresetParams& params,
                         const TokenPair& pair) {
    check_spot(spot);
    if (!(params.otm_offset > 0.0) || !(params.otm_offset < 1.0)) {
        throw DomainError("preset otm_offset must be in (0, 1)");
    }
    if (!(params.wing_width > 0.0) || params.otm_offset + params.wing_width >= 1.0) {
        throw DomainError("preset wing_width must be > 0 and leave strikes positive");
    }
    if (!(params.size > 0.0)) {
        throw DomainError("preset size must be positive");
    }
    const double r = params.range_factor;
    const double sz = params.size;
    const double lo = spot * (1.0 - params.otm_offset);      // short put side
    const double hi = spot * (1.0 + params.otm_offset);      // short call side
    const double lo_wing = spot * (1.0 - params.otm_offset - params.wing_width);
    const double hi_wing = spot * (1.0 + params.otm_offset + params.wing_width);

    auto leg = [&](double strike, bool is_put, bool is_long, double size) {
        return Leg{strike, r, is_put, is_long, size};
    };

    Position pos;
    pos.pair = pair;
    switch (s) {
        case Strategy::straddle:
            pos.legs = {leg(spot, true, false, sz), leg(spot, false, false, sz)};
            break;
        case Strategy::strangle:
            pos.legs = {leg(lo, true, false, sz), leg(hi, false, false, sz)};
            break;
        case Strategy::iron_condor:
            pos.legs = {leg(lo_wing, true, true, sz), leg(lo, true, false, sz),
                        leg(hi, false, false, sz), leg(hi_wing, false, true, sz)};
            break;
        case Strategy::jade_lizard:
            pos.legs = {leg(lo, true, false, sz), leg(hi, false, false, sz),
                        leg(hi_wing, false, true, sz)};
            break;
        case Strategy::ratio_spread:
            pos.legs = {leg(lo, true, true, sz), leg(lo_wing, true, false, 2.0 * sz)};
            break;
        case Strategy::bats:
            pos.legs = {leg(lo, true, true, sz), leg(lo_wing, true, false, 2.0 * sz),
                        leg(hi, false, true, sz), leg(hi_wing, false, false, 2.0 * sz)};
            break;
        case Strategy::zebra:
            // one short at the money, two in-the-money longs held as separate legs
            pos.legs = {leg(spot, false, false, sz), leg(lo, false, true, sz),
                        leg(lo, false, true, sz)};
            break;
        case Strategy::spiked_lizard:
            // jade lizard plus a double-size single-tick long put spike below
            // the short put, so the payoff slope flips positive in a crash
            pos.legs = {leg(lo, true, false, sz), leg(hi, false, false, sz),
                        leg(hi_wing, false, true, sz),
                        Leg{spot * (1.0 - params.otm_offset - params.wing_width / 2.0),
                            1.0, true, true, 2.0 * sz}};
            break;
    }
    validate_position(pos);
    return pos;
}

Position strategy_preset(const std::string& name, double spot,
                         const PresetParams& params, const TokenPair& pair) {
    return strategy_preset(strategy_from_name(name), spot, params, pair);
}

}  // namespace panopt
