#include "panopt/risk.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "panopt/errors.hpp"
#include "panopt/pool.hpp"

namespace panopt {

namespace {

void check_nonneg(double v, const char* name) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(name) + " must be >= 0 and finite, got " +
                          std::to_string(v));
    }
}

}  // namespace

double itm_amount(const Leg& leg, double spot) {
    validate_leg(leg);
    if (!(spot > 0.0) || !std::isfinite(spot)) {
        throw DomainError("spot must be positive");
    }
    return leg.is_put ? leg.size * std::max(leg.strike - spot, 0.0)
                      : leg.size * std::max(spot - leg.strike, 0.0);
}

MarginReport seller_requirement(double notional, double itm_value,
                                double premium_accrued, double ratio) {
    check_nonneg(notional, "notional");
    check_nonneg(itm_value, "itm_value");
    check_nonneg(premium_accrued, "premium_accrued");
    if (!(ratio > 0.0) || !(ratio <= 1.0)) {
        throw DomainError("collateral ratio must be in (0, 1]");
    }
    MarginReport rep;
    rep.ratio_used = ratio;
    rep.base_component = ratio * notional;
    rep.itm_component = itm_value;
    rep.premium_component = -premium_accrued;
    rep.requirement = std::max(
        0.0, rep.base_component + rep.itm_component + rep.premium_component);
    return rep;
}

MarginReport buyer_requirement(double notional, double itm_value,
                               double premium_owed, double ratio) {
    check_nonneg(notional, "notional");
    check_nonneg(itm_value, "itm_value");
    check_nonneg(premium_owed, "premium_owed");
    if (!(ratio > 0.0) || !(ratio <= 1.0)) {
        throw DomainError("collateral ratio must be in (0, 1]");
    }
    MarginReport rep;
    rep.ratio_used = ratio;
    rep.base_component = ratio * notional;
    rep.itm_component = -itm_value;
    rep.premium_component = premium_owed;
    rep.requirement = std::max(
        0.0, rep.base_component + rep.itm_component + rep.premium_component);
    return rep;
}

double cboe_margin(double premium, double spot, double strike, bool is_put,
                   double multiplier) {
    check_nonneg(premium, "premium");
    if (!(spot > 0.0) || !(strike > 0.0) || !(multiplier > 0.0)) {
        throw DomainError("cboe_margin needs positive spot, strike and multiplier");
    }
    const double otm = is_put ? std::max(spot - strike, 0.0)
                              : std::max(strike - spot, 0.0);
    const double with_underlying = premium + 0.2 * spot - otm;
    const double floor = premium + 0.1 * (is_put ? strike : spot);
    return std::max(with_underlying, floor) * multiplier;
}

SolvencyReport account_solvent(const Pool& pool, const std::string& account,
                               double spot) {
    if (!(spot > 0.0) || !std::isfinite(spot)) {
        throw DomainError("spot must be positive");
    }
    auto it = pool.accounts().find(account);
    if (it == pool.accounts().end()) {
        throw NotFoundError("unknown account " + account);
    }

    SolvencyReport rep;
    rep.collateral = pool.share_value(account);
    const double seller_ratio = pool.collateral_ratio_now();

    for (const auto& [key, book] : it->second.books) {
        const Leg leg = book_leg(key.range, key.is_put, key.is_long, book.notional);
        const double itm = itm_amount(leg, spot);
        const RangeLedger* ledger = pool.find_range(key.range);
        if (!ledger) throw AccountingError("book without a range ledger");

        double premium = 0.0;
        const double n = book.notional;
        const double fg_avg = book.fg_entry_weighted / n;
        if (key.is_long) {
            const double l1 = ledger->base() + n;
            if (!(l1 - n > 0.0)) {
                throw AccountingError("long book has no base liquidity behind it");
            }
            premium = std::max(ledger->fee_growth - fg_avg, 0.0) * n * l1 / (l1 - n);
        } else {
            const double other = std::max(ledger->base() - n, 0.0);
            if (other > 0.0) {
                premium = std::max(ledger->fee_growth_sold - fg_avg, 0.0) * n *
                          other / (other + n);
            }
        }

        const MarginReport m =
            key.is_long ? buyer_requirement(n, itm, premium)
                        : seller_requirement(n, itm, premium, seller_ratio);
        rep.required += m.requirement;
        rep.books.push_back(BookRequirement{key.range.tick, key.range.width,
                                            key.is_put, key.is_long, n, itm,
                                            premium, m.requirement});
    }

    rep.shortfall = std::max(0.0, rep.required - rep.collateral);
    rep.solvent = rep.collateral + 1e-9 * (1.0 + rep.required) >= rep.required;
    return rep;
}

double pool_utilization(const Pool& pool) {
    const double denom = pool.totals().liquidity - pool.totals().notional;
    if (!(denom > 0.0)) {
        throw DegeneratePoolError(
            "utilization undefined: deposits are fully deployed (free " +
            std::to_string(denom) + ")");
    }
    return pool.totals().locked / denom;
}

UtilizationCurves UtilizationCurves::defaults() {
    UtilizationCurves c;
    c.collateral_knots = {{0.0, 0.20}, {1.0, 1.00}};
    c.commission_knots = {{0.0, 0.0020}, {1.0, 0.0}};
    return c;
}

void validate(const UtilizationCurves& curves) {
    auto check = [](const std::vector<std::pair<double, double>>& knots,
                    const char* name) {
        if (knots.size() < 2) {
            throw DomainError(std::string(name) + " curve needs at least 2 knots");
        }
        if (std::abs(knots.front().first) > 1e-12 ||
            std::abs(knots.back().first - 1.0) > 1e-12) {
            throw DomainError(std::string(name) + " curve must span u = 0 to u = 1");
        }
        for (std::size_t i = 0; i < knots.size(); ++i) {
            if (!std::isfinite(knots[i].first) || !std::isfinite(knots[i].second) ||
                knots[i].second < 0.0) {
                throw DomainError(std::string(name) + " curve has a bad knot");
            }
            if (i > 0 && !(knots[i].first > knots[i - 1].first)) {
                throw DomainError(std::string(name) +
                                  " curve knots must be strictly increasing in u");
            }
        }
    };
    check(curves.collateral_knots, "collateral");
    check(curves.commission_knots, "commission");
}

double eval_curve(const std::vector<std::pair<double, double>>& knots, double u) {
    if (!(u >= 0.0) || !(u <= 1.0)) {
        throw DomainError("utilization must be in [0, 1], got " + std::to_string(u));
    }
    if (knots.size() < 2) throw DomainError("curve needs at least 2 knots");
    for (std::size_t i = 1; i < knots.size(); ++i) {
        if (u <= knots[i].first) {
            const auto [u0, v0] = knots[i - 1];
            const auto [u1, v1] = knots[i];
            return v0 + (v1 - v0) * (u - u0) / (u1 - u0);
        }
    }
    return knots.back().second;
}

CurveValues utilization_curves_eval(const UtilizationCurves& curves, double u) {
    validate(curves);
    return {eval_curve(curves.collateral_knots, u),
            eval_curve(curves.commission_knots, u)};
}

double utilization_target(const UtilizationCurves& curves) {
    validate(curves);
    auto span = [](const std::vector<std::pair<double, double>>& knots) {
        double lo = knots.front().second;
        double hi = lo;
        for (const auto& kv : knots) {
            lo = std::min(lo, kv.second);
            hi = std::max(hi, kv.second);
        }
        return std::pair{lo, hi};
    };
    const auto [col_lo, col_hi] = span(curves.collateral_knots);
    const auto [com_lo, com_hi] = span(curves.commission_knots);
    if (col_hi - col_lo <= 1e-15 * (1.0 + std::abs(col_hi)) ||
        com_hi - com_lo <= 1e-15 * (1.0 + std::abs(com_hi))) {
        throw NoTargetError("a flat curve has no crossing target");
    }

    std::vector<double> grid;
    for (const auto& kv : curves.collateral_knots) grid.push_back(kv.first);
    for (const auto& kv : curves.commission_knots) grid.push_back(kv.first);
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    auto f = [&](double u) {
        const double ncol =
            (eval_curve(curves.collateral_knots, u) - col_lo) / (col_hi - col_lo);
        const double ncom =
            (eval_curve(curves.commission_knots, u) - com_lo) / (com_hi - com_lo);
        return ncol - ncom;
    };
    double prev_u = grid.front();
    double prev_f = f(prev_u);
    if (prev_f == 0.0) return prev_u;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur_u = grid[i];
        const double cur_f = f(cur_u);
        if (cur_f == 0.0) return cur_u;
        if (prev_f * cur_f < 0.0) {
            // linear on this segment, solve exactly
            return prev_u + (cur_u - prev_u) * (-prev_f) / (cur_f - prev_f);
        }
        prev_u = cur_u;
        prev_f = cur_f;
    }
    throw NoTargetError("normalized curves never cross");
}

}  // namespace panopt
