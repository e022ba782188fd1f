#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "panopt/instrument.hpp"

namespace panopt {

class Pool;

// Intrinsic value of the leg at spot, in numeraire: size * max(K - S, 0)
// for puts, size * max(S - K, 0) for calls.
double itm_amount(const Leg& leg, double spot);

struct MarginReport {
    double requirement = 0.0;       // max(0, base + itm_term + premium_term)
    double base_component = 0.0;
    double itm_component = 0.0;     // signed contribution
    double premium_component = 0.0; // signed contribution
    double ratio_used = 0.0;
};

// Seller posts ratio * notional, plus intrinsic losses, minus premium
// already accrued to them. Never negative.
MarginReport seller_requirement(double notional, double itm_value,
                                double premium_accrued, double ratio = 0.20);

// Buyer posts ratio * notional, minus intrinsic gains, plus premium owed.
MarginReport buyer_requirement(double notional, double itm_value,
                               double premium_owed, double ratio = 0.10);

// Cboe short-margin rule for a listed option: the greater of
// premium + 20% of underlying - out-of-the-money amount and
// premium + 10% of strike (puts) / 10% of underlying (calls),
// all scaled by the contract multiplier.
double cboe_margin(double premium, double spot, double strike, bool is_put,
                   double multiplier = 100.0);

struct BookRequirement {
    std::int32_t tick = 0;
    std::int32_t width = 0;
    bool is_put = false;
    bool is_long = false;
    double notional = 0.0;
    double itm_value = 0.0;
    double premium = 0.0;
    double requirement = 0.0;
};

struct SolvencyReport {
    bool solvent = true;
    double collateral = 0.0;  // account share value
    double required = 0.0;
    double shortfall = 0.0;   // max(0, required - collateral)
    std::vector<BookRequirement> books;
};

SolvencyReport account_solvent(const Pool& pool, const std::string& account,
                               double spot);

// locked / (total - notional): how much of the pool's free liquidity is
// tied up in chunks moved out for buyers. Undefined once deposits are
// fully deployed.
double pool_utilization(const Pool& pool);

// Piecewise-linear curves over utilization in [0, 1]. Knots must be sorted
// by utilization and cover both endpoints.
struct UtilizationCurves {
    std::vector<std::pair<double, double>> collateral_knots;
    std::vector<std::pair<double, double>> commission_knots;

    static UtilizationCurves defaults();
};

void validate(const UtilizationCurves& curves);

double eval_curve(const std::vector<std::pair<double, double>>& knots, double u);

struct CurveValues {
    double collateral_ratio = 0.0;
    double commission_rate = 0.0;
};

CurveValues utilization_curves_eval(const UtilizationCurves& curves, double u);

// Utilization at which the two curves cross after each is rescaled to [0, 1]
// over its own span. With the default curves this is exactly 0.5. Throws
// when either curve is flat or they never cross.
double utilization_target(const UtilizationCurves& curves);

}  // namespace panopt
