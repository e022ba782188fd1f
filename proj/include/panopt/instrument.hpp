#pragma once

#include <string>
#include <utility>
#include <vector>

namespace panopt {

// Minimum width of a deployed range, as a fraction of the strike. A range
// narrower than one tick spacing cannot exist on the underlying AMM, so
// every computation clamps the range factor to 1 + spacing/2.
inline constexpr double kDefaultTickSpacing = 0.006;

inline constexpr int kMaxLegs = 4;

struct TokenPair {
    std::string numeraire;  // quote token, all values are expressed in it
    std::string asset;      // base token
};

// One LP chunk. `range_factor` r spans the deployed range [K/r, K*r];
// r = 1 means the narrowest range the pool supports. `size` is the asset
// amount of the chunk, so its notional is size * strike in numeraire.
struct Leg {
    double strike = 0.0;
    double range_factor = 1.0;
    bool is_put = false;
    bool is_long = false;
    double size = 1.0;
};

struct PriceRange {
    double lower = 0.0;
    double upper = 0.0;
};

struct Position {
    TokenPair pair;
    std::vector<Leg> legs;
};

void validate_leg(const Leg& leg);
void validate_position(const Position& pos);

// r clamped to the narrowest representable range.
double effective_range_factor(double range_factor,
                              double tick_spacing = kDefaultTickSpacing);

PriceRange leg_range(const Leg& leg, double tick_spacing = kDefaultTickSpacing);

// Uniswap-style liquidity constant of the chunk: size * sqrt(K) * sqrt(r) / (r - 1).
double leg_liquidity(const Leg& leg, double tick_spacing = kDefaultTickSpacing);

// size * strike, numeraire units. Same for puts and calls.
double leg_notional(const Leg& leg);

// Numeraire value of the chunk's holdings at the given spot: all asset below
// the range, all numeraire above it, the usual concave blend inside.
double lp_value(const Leg& leg, double spot,
                double tick_spacing = kDefaultTickSpacing);

// Mark-to-market of one leg against what the writer owes back: the fixed
// numeraire notional for a put, `size` asset (worth size * spot) for a call.
// Zero on the leg's out-of-the-money side, negative in the money.
double leg_basis(const Leg& leg, double spot,
                 double tick_spacing = kDefaultTickSpacing);

// Profit of one leg relative to entry, excluding premia and commissions.
// Short legs earn basis(spot) - basis(entry), long legs the negative.
double leg_payoff(const Leg& leg, double spot, double entry_spot,
                  double tick_spacing = kDefaultTickSpacing);

double payoff(const Position& pos, double spot, double entry_spot,
              double tick_spacing = kDefaultTickSpacing);

// (price, profit) pairs over the given price grid.
std::vector<std::pair<double, double>> payoff_curve(
    const Position& pos, const std::vector<double>& grid, double entry_spot,
    double tick_spacing = kDefaultTickSpacing);

enum class Strategy {
    straddle,
    strangle,
    iron_condor,
    jade_lizard,
    ratio_spread,
    bats,
    zebra,
    spiked_lizard,
};

Strategy strategy_from_name(const std::string& name);
std::string strategy_name(Strategy s);

struct PresetParams {
    double otm_offset = 0.10;   // short strikes at spot * (1 -+ offset)
    double wing_width = 0.10;   // long wings a further offset out
    double range_factor = 1.0;
    double size = 1.0;
};

Position strategy_preset(Strategy s, double spot, const PresetParams& params = {},
                         const TokenPair& pair = {"DAI", "ETH"});
Position strategy_preset(const std::string& name, double spot,
                         const PresetParams& params = {},
                         const TokenPair& pair = {"DAI", "ETH"});

}  // namespace panopt
