#include "panopt/pool.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <utility>

#include "panopt/errors.hpp"

namespace panopt {

namespace {

constexpr double kRelEps = 1e-9;

bool near(double a, double b, double rel) {
    return std::abs(a - b) <= rel * (1.0 + std::max(std::abs(a), std::abs(b)));
}

void check_amount(double v, const char* what) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(what) + " must be positive and finite");
    }
}

void check_spot_arg(double spot) {
    if (!(spot > 0.0) || !std::isfinite(spot)) {
        throw DomainError("spot must be positive and finite");
    }
}

double json_num(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_number()) {
        throw ParseError(std::string("missing or non-numeric field '") + key + "'");
    }
    return j.at(key).get<double>();
}

std::string json_str(const nlohmann::json& j, const char* key) {
    if (!j.contains(key) || !j.at(key).is_string()) {
        throw ParseError(std::string("missing or non-string field '") + key + "'");
    }
    return j.at(key).get<std::string>();
}

}  // namespace

RangeKey range_key_for(const Leg& leg) {
    validate_leg(leg);
    return {strike_to_tick(leg.strike), range_factor_to_width(leg.range_factor)};
}

Leg book_leg(const RangeKey& key, bool is_put, bool is_long, double notional) {
    const double strike = tick_to_strike(key.tick);
    return Leg{strike, width_to_range_factor(key.width), is_put, is_long,
               notional / strike};
}

double total_fees(double fee_growth_entry, double fee_growth_now, double notional) {
    if (notional < 0.0 || !std::isfinite(notional)) {
        throw DomainError("notional must be >= 0");
    }
    if (fee_growth_now < fee_growth_entry) {
        throw AccountingError("fee growth ran backwards: " +
                              std::to_string(fee_growth_entry) + " -> " +
                              std::to_string(fee_growth_now));
    }
    return (fee_growth_now - fee_growth_entry) * notional;
}

double effective_liquidity_factor(double size, double base_liquidity, bool is_long) {
    check_amount(size, "size");
    if (base_liquidity < 0.0 || !std::isfinite(base_liquidity)) {
        throw DomainError("base_liquidity must be >= 0");
    }
    if (is_long) {
        if (size >= base_liquidity) {
            throw DrainedLiquidityError(
                "buying " + std::to_string(size) + " would drain base liquidity " +
                std::to_string(base_liquidity));
        }
        return size / (base_liquidity - size);
    }
    return size / (base_liquidity + size);
}

double spread(double size, double base_liquidity, bool is_long) {
    check_amount(size, "size");
    if (!(base_liquidity > 0.0) || !std::isfinite(base_liquidity)) {
        throw DomainError("spread needs base_liquidity > 0");
    }
    const double v = size / base_liquidity;
    return is_long ? v : -v;
}

double merge_purchase(double n1, double n2, double base_liquidity) {
    if (n1 < 0.0 || !std::isfinite(n1)) throw DomainError("n1 must be >= 0");
    check_amount(n2, "n2");
    check_amount(base_liquidity, "base_liquidity");
    return effective_liquidity_factor(n1 + n2, base_liquidity, true);
}

Pool::Pool(std::uint64_t pool_id, TokenPair pair, PoolConfig config)
    : pool_id_(pool_id), pair_(std::move(pair)), config_(config) {
    if (pair_.numeraire.empty() || pair_.asset.empty()) {
        throw DomainError("pool pair needs nonempty token names");
    }
    if (!(config_.commission_rate >= 0.0) || !(config_.commission_rate < 1.0)) {
        throw DomainError("commission_rate must be in [0, 1)");
    }
    if (!(config_.tick_spacing > 0.0) || !(config_.tick_spacing < 1.0)) {
        throw DomainError("tick_spacing must be in (0, 1)");
    }
    nlohmann::ordered_json e;
    e["op"] = "init";
    e["pool_id"] = pool_id_;
    e["numeraire"] = pair_.numeraire;
    e["asset"] = pair_.asset;
    e["commission_rate"] = config_.commission_rate;
    e["tick_spacing"] = config_.tick_spacing;
    log_event(std::move(e));
}

void Pool::log_event(nlohmann::ordered_json event) {
    log_.push_back(event.dump());
}

double Pool::share_price() const {
    return totals_.shares > 0.0 ? totals_.liquidity / totals_.shares : 1.0;
}

double Pool::share_value(const AccountId& account) const {
    auto it = accounts_.find(account);
    if (it == accounts_.end()) return 0.0;
    return it->second.shares * share_price();
}

const RangeLedger* Pool::find_range(const RangeKey& key) const {
    auto it = ranges_.find(key);
    return it == ranges_.end() ? nullptr : &it->second;
}

double Pool::mint_shares(AccountState& acct, double value) {
    if (!(value > 0.0)) return 0.0;
    const double sh = value / share_price();
    acct.shares += sh;
    totals_.shares += sh;
    return sh;
}

double Pool::burn_shares(AccountState& acct, double value, bool allow_bad_debt) {
    if (!(value > 0.0)) return 0.0;
    const double price = share_price();
    double sh = value / price;
    if (sh > acct.shares) {
        if (near(sh, acct.shares, kRelEps)) {
            sh = acct.shares;
        } else if (allow_bad_debt) {
            totals_.bad_debt += (sh - acct.shares) * price;
            sh = acct.shares;
        } else {
            throw MarginError("account balance " +
                              std::to_string(acct.shares * price) +
                              " cannot cover " + std::to_string(value));
        }
    }
    acct.shares -= sh;
    totals_.shares -= sh;
    return sh;
}

double Pool::deposit(const AccountId& account, double amount) {
    check_amount(amount, "deposit amount");
    if (account.empty()) throw DomainError("account id must be nonempty");
    AccountState& acct = accounts_[account];
    const double sh = amount / share_price();
    acct.shares += sh;
    totals_.shares += sh;
    totals_.liquidity += amount;
    acct.deposited += amount;

    nlohmann::ordered_json e;
    e["op"] = "deposit";
    e["account"] = account;
    e["amount"] = amount;
    log_event(std::move(e));
    return sh;
}

double Pool::withdraw(const AccountId& account, double amount) {
    return withdraw(account, amount, std::numeric_limits<double>::quiet_NaN());
}

double Pool::withdraw(const AccountId& account, double amount, double spot) {
    check_amount(amount, "withdraw amount");
    auto it = accounts_.find(account);
    if (it == accounts_.end()) throw NotFoundError("unknown account " + account);

    const double balance = it->second.shares * share_price();
    if (amount > balance && !near(amount, balance, kRelEps)) {
        throw LiquidityError("withdrawal " + std::to_string(amount) +
                             " exceeds account balance " + std::to_string(balance));
    }
    const double free = totals_.liquidity - totals_.notional;
    if (amount > free && !near(amount, free, kRelEps)) {
        throw LockedLiquidityError(
            "withdrawal " + std::to_string(amount) + " exceeds free liquidity " +
            std::to_string(free) + "; the rest backs open positions");
    }
    const bool has_books = !it->second.books.empty();
    if (has_books && !(spot > 0.0)) {
        throw DomainError("withdrawing with open positions needs a spot price");
    }

    Pool trial = *this;
    AccountState& acct = trial.accounts_.at(account);
    const double price = trial.share_price();
    const double sh = std::min(amount / price, acct.shares);
    acct.shares -= sh;
    trial.totals_.shares -= sh;
    trial.totals_.liquidity -= amount;
    acct.deposited -= amount;
    if (has_books) trial.require_solvent(account, spot);
    *this = std::move(trial);

    nlohmann::ordered_json e;
    e["op"] = "withdraw";
    e["account"] = account;
    e["amount"] = amount;
    if (spot > 0.0) {
        e["spot"] = spot;
    } else {
        e["spot"] = nullptr;
    }
    log_event(std::move(e));
    return sh;
}

void Pool::set_curves(const UtilizationCurves& curves) {
    validate(curves);
    curves_ = curves;

    nlohmann::ordered_json e;
    e["op"] = "set_curves";
    e["collateral"] = nlohmann::ordered_json::array();
    for (auto [u, v] : curves.collateral_knots) e["collateral"].push_back({u, v});
    e["commission"] = nlohmann::ordered_json::array();
    for (auto [u, v] : curves.commission_knots) e["commission"].push_back({u, v});
    log_event(std::move(e));
}

double Pool::collateral_ratio_now() const {
    if (!curves_) return 0.20;
    double u = 0.0;
    if (totals_.liquidity - totals_.notional > 0.0) u = pool_utilization(*this);
    return eval_curve(curves_->collateral_knots, std::clamp(u, 0.0, 1.0));
}

double Pool::commission_rate_now() const {
    if (!curves_) return config_.commission_rate;
    double u = 0.0;
    if (totals_.liquidity - totals_.notional > 0.0) u = pool_utilization(*this);
    return eval_curve(curves_->commission_knots, std::clamp(u, 0.0, 1.0));
}

MintReceipt Pool::mint_short(const AccountId& account,
                             const std::vector<Leg>& legs, double spot) {
    for (const Leg& leg : legs) {
        if (leg.is_long) {
            throw DomainError("mint_short got a long leg; use mint for mixed positions");
        }
    }
    return mint(account, legs, spot);
}

MintReceipt Pool::mint_long(const AccountId& account,
                            const std::vector<Leg>& legs, double spot) {
    for (const Leg& leg : legs) {
        if (!leg.is_long) {
            throw DomainError("mint_long got a short leg; use mint for mixed positions");
        }
    }
    return mint(account, legs, spot);
}

MintReceipt Pool::mint(const AccountId& account, const std::vector<Leg>& legs,
                       double spot) {
    check_spot_arg(spot);
    if (account.empty()) throw DomainError("account id must be nonempty");
    Position pos{pair_, legs};
    validate_position(pos);

    std::vector<Leg> q;
    q.reserve(legs.size());
    for (const Leg& leg : legs) q.push_back(quantize_leg(leg));
    const TokenId token = encode_token(pool_id_, q);
    const std::string hex = token_to_hex(token);

    const double rate = commission_rate_now();  // at pre-trade utilization
    const double ts = config_.tick_spacing;

    Pool trial = *this;
    AccountState& acct = trial.accounts_[account];
    double notional_total = 0.0;

    for (const Leg& leg : q) {
        const double x = leg_notional(leg);
        const RangeKey key = range_key_for(leg);
        RangeLedger& ledger = trial.ranges_[key];
        SideBook& book = acct.books[BookKey{key, leg.is_put, leg.is_long}];

        if (!leg.is_long) {
            if (leg.is_put ? !(leg.strike < spot) : !(leg.strike > spot)) {
                throw MoneynessError(
                    (leg.is_put ? std::string("put") : std::string("call")) +
                    " strike " + std::to_string(leg.strike) +
                    " is not out of the money at spot " + std::to_string(spot));
            }
            if (trial.totals_.notional + x > trial.totals_.liquidity &&
                !near(trial.totals_.notional + x, trial.totals_.liquidity, kRelEps)) {
                throw LiquidityError(
                    "selling " + std::to_string(x) + " would push open notional " +
                    std::to_string(trial.totals_.notional) + " past pool liquidity " +
                    std::to_string(trial.totals_.liquidity));
            }
            book.fg_entry_weighted += x * ledger.fee_growth_sold;
            ledger.sold += x;
            trial.totals_.notional += x;
        } else {
            const double base = ledger.base();
            if (x > base && !near(x, base, kRelEps)) {
                throw AvailabilityError("buying " + std::to_string(x) +
                                        " exceeds base liquidity " +
                                        std::to_string(base) + " in the range");
            }
            if (base - x <= kRelEps * (1.0 + base)) {
                throw DrainedLiquidityError(
                    "buying " + std::to_string(x) + " would drain base liquidity " +
                    std::to_string(base));
            }
            book.fg_entry_weighted += x * ledger.fee_growth;
            ledger.bought += x;
            trial.totals_.locked += x;
        }
        book.notional += x;
        book.basis_entry_weighted += leg_basis(leg, spot, ts);
        notional_total += x;
    }

    // commission, waived for fully collateralized accounts
    double open_total = 0.0;
    for (const auto& [key, book] : acct.books) open_total += book.notional;
    const double balance = acct.shares * trial.share_price();
    const bool waived = balance >= open_total || near(balance, open_total, kRelEps);
    double commission = 0.0;
    if (!waived) {
        commission = rate * notional_total;
        trial.burn_shares(acct, commission, false);
    }

    trial.require_solvent(account, spot);

    TokenHolding& holding = acct.tokens[hex];
    if (holding.units == 0.0) {
        holding.token = token;
        holding.position = Position{pair_, q};
    }
    holding.units += 1.0;

    *this = std::move(trial);

    nlohmann::ordered_json e;
    e["op"] = "mint";
    e["account"] = account;
    e["spot"] = spot;
    e["legs"] = nlohmann::ordered_json::array();
    for (const Leg& leg : legs) {
        nlohmann::ordered_json l;
        l["strike"] = leg.strike;
        l["range_factor"] = leg.range_factor;
        l["is_put"] = leg.is_put;
        l["is_long"] = leg.is_long;
        l["size"] = leg.size;
        e["legs"].push_back(std::move(l));
    }
    log_event(std::move(e));

    return MintReceipt{token, notional_total, commission, waived};
}

void Pool::advance_fees(const RangeKey& range, double dfg) {
    if (!(dfg >= 0.0) || !std::isfinite(dfg)) {
        throw DomainError("fee growth increment must be >= 0");
    }
    RangeLedger& ledger = ranges_[range];
    if (ledger.sold > 0.0) {
        ledger.fee_growth_sold += dfg * (ledger.base() / ledger.sold);
    }
    ledger.fee_growth += dfg;
    totals_.liquidity += dfg * ledger.base();

    nlohmann::ordered_json e;
    e["op"] = "advance_fees";
    e["tick"] = range.tick;
    e["width"] = range.width;
    e["dfg"] = dfg;
    log_event(std::move(e));
}

CloseReceipt Pool::close_position(const AccountId& owner, const TokenId& token,
                                  double spot) {
    return close_position(owner, owner, token, spot, false);
}

CloseReceipt Pool::close_position(const AccountId& caller, const AccountId& owner,
                                  const TokenId& token, double spot, bool force) {
    check_spot_arg(spot);
    const std::string hex = token_to_hex(token);
    auto acct_it = accounts_.find(owner);
    if (acct_it == accounts_.end()) throw NotFoundError("unknown account " + owner);
    auto hold_it = acct_it->second.tokens.find(hex);
    if (hold_it == acct_it->second.tokens.end()) {
        throw NotFoundError("account " + owner + " does not hold token " + hex);
    }
    const TokenHolding& holding = hold_it->second;
    const double ts = config_.tick_spacing;
    const bool forced = caller != owner;

    double forced_fee = 0.0;
    if (forced) {
        if (!force) {
            throw AuthorizationError("only the owner may close this position");
        }
        double token_notional = 0.0;
        for (const Leg& leg : holding.position.legs) {
            if (!leg.is_long) {
                throw AuthorizationError("short legs cannot be exercised by others");
            }
            const double r_eff = effective_range_factor(leg.range_factor, ts);
            const double bound =
                std::pow(r_eff, 1.0 + 2.0 * kForcedExerciseWidths);
            const bool deep = leg.is_put ? spot <= leg.strike / bound
                                         : spot >= leg.strike * bound;
            if (!deep) {
                throw AuthorizationError(
                    "leg at strike " + std::to_string(leg.strike) +
                    " is not deep enough in the money to force");
            }
            token_notional += leg_notional(leg) * holding.units;
        }
        forced_fee = commission_rate_now() * token_notional;
        if (share_value(caller) < forced_fee &&
            !near(share_value(caller), forced_fee, kRelEps)) {
            throw MarginError("forcer cannot fund the exercise fee of " +
                              std::to_string(forced_fee));
        }
    }

    Pool trial = *this;
    AccountState& acct = trial.accounts_.at(owner);
    double premium_total = 0.0;  // toward the owner
    double basis_total = 0.0;

    for (const Leg& leg : holding.position.legs) {
        const double x_raw = leg_notional(leg) * holding.units;
        const RangeKey key = range_key_for(leg);
        const BookKey bkey{key, leg.is_put, leg.is_long};
        auto book_it = acct.books.find(bkey);
        if (book_it == acct.books.end()) {
            throw AccountingError("no book behind token leg at strike " +
                                  std::to_string(leg.strike));
        }
        SideBook& book = book_it->second;
        RangeLedger& ledger = trial.ranges_.at(key);

        double x = x_raw;
        if (near(x, book.notional, kRelEps)) x = book.notional;
        if (x > book.notional) {
            throw AccountingError("token leg notional exceeds its book");
        }
        const double fg_avg = book.fg_entry_weighted / book.notional;
        const double basis_avg = book.basis_entry_weighted / book.notional;

        const Leg close_leg = book_leg(key, leg.is_put, leg.is_long, x);
        const double basis_now = leg_basis(close_leg, spot, ts);
        const double basis_entry = basis_avg * x;

        if (!leg.is_long) {
            const double base = ledger.base();
            if (x > base && !near(x, base, kRelEps)) {
                throw AvailabilityError(
                    "cannot close " + std::to_string(x) + "; only " +
                    std::to_string(base) + " of the range is unbought");
            }
            if (ledger.bought > kRelEps && !(base - x > kRelEps * (1.0 + base))) {
                throw AvailabilityError(
                    "cannot withdraw the last liquidity backing open buyers");
            }
            const double dfg = std::max(ledger.fee_growth_sold - fg_avg, 0.0);
            // payout discounted by the sell-side spread against the base
            // liquidity that is not the seller's own
            const double other_base = std::max(base - book.notional, 0.0);
            auto potential = [&](double m) {
                return other_base > 0.0 ? dfg * m * other_base / (other_base + m)
                                        : 0.0;
            };
            premium_total += potential(book.notional) - potential(book.notional - x);
            basis_total += basis_now - basis_entry;
            ledger.sold = std::max(ledger.sold - x, 0.0);
            trial.totals_.notional = std::max(trial.totals_.notional - x, 0.0);
        } else {
            const double dfg = std::max(ledger.fee_growth - fg_avg, 0.0);
            const double l1 = ledger.base() + book.notional;
            if (!(l1 - book.notional > 0.0)) {
                throw AccountingError("long book has no base liquidity behind it");
            }
            // owed fees grossed up by the buy-side spread against the range's
            // base liquidity at purchase
            auto potential = [&](double m) { return dfg * m * l1 / (l1 - m); };
            premium_total -= potential(book.notional) - potential(book.notional - x);
            basis_total += basis_entry - basis_now;
            ledger.bought = std::max(ledger.bought - x, 0.0);
            trial.totals_.locked = std::max(trial.totals_.locked - x, 0.0);
        }

        book.notional -= x;
        book.fg_entry_weighted -= fg_avg * x;
        book.basis_entry_weighted -= basis_avg * x;
        if (book.notional <= kRelEps * (1.0 + x)) acct.books.erase(book_it);
    }

    const double net = premium_total + basis_total;
    if (net >= 0.0) {
        trial.mint_shares(acct, net);
    } else {
        trial.burn_shares(acct, -net, true);
    }
    if (forced) {
        AccountState& forcer = trial.accounts_[caller];
        trial.burn_shares(forcer, forced_fee, false);
        trial.mint_shares(acct, forced_fee);
    }
    acct.tokens.erase(hex);

    *this = std::move(trial);

    nlohmann::ordered_json e;
    e["op"] = "close";
    e["caller"] = caller;
    e["owner"] = owner;
    e["token"] = hex;
    e["spot"] = spot;
    e["force"] = force;
    log_event(std::move(e));

    return CloseReceipt{premium_total, basis_total, net, forced_fee};
}

double Pool::premium_owed(const AccountId& account, const TokenId& token) const {
    auto acct_it = accounts_.find(account);
    if (acct_it == accounts_.end()) throw NotFoundError("unknown account " + account);
    const std::string hex = token_to_hex(token);
    auto hold_it = acct_it->second.tokens.find(hex);
    if (hold_it == acct_it->second.tokens.end()) {
        throw NotFoundError("account " + account + " does not hold token " + hex);
    }
    const TokenHolding& holding = hold_it->second;

    double owed = 0.0;
    for (const Leg& leg : holding.position.legs) {
        const RangeKey key = range_key_for(leg);
        auto book_it = acct_it->second.books.find(BookKey{key, leg.is_put, leg.is_long});
        if (book_it == acct_it->second.books.end()) {
            throw AccountingError("no book behind token leg");
        }
        const SideBook& book = book_it->second;
        auto range_it = ranges_.find(key);
        if (range_it == ranges_.end()) throw AccountingError("missing range ledger");
        const double x = std::min(leg_notional(leg) * holding.units, book.notional);
        const double fg_avg = book.fg_entry_weighted / book.notional;
        const double fg_now = leg.is_long ? range_it->second.fee_growth
                                          : range_it->second.fee_growth_sold;
        owed += total_fees(fg_avg, fg_now, x);
    }
    return owed;
}

void Pool::require_solvent(const AccountId& account, double spot) const {
    const SolvencyReport rep = account_solvent(*this, account, spot);
    if (!rep.solvent) {
        throw MarginError("account " + account + " is short " +
                          std::to_string(rep.shortfall) + " of the " +
                          std::to_string(rep.required) + " required");
    }
}

void Pool::check_consistency() const {
    if (totals_.liquidity < -kRelEps || totals_.shares < -kRelEps) {
        throw AccountingError("negative pool totals");
    }
    double shares = 0.0;
    std::map<RangeKey, double> sold_by_range;
    std::map<RangeKey, double> bought_by_range;
    for (const auto& [id, acct] : accounts_) {
        shares += acct.shares;
        std::map<BookKey, double> from_tokens;
        for (const auto& [hex, holding] : acct.tokens) {
            for (const Leg& leg : holding.position.legs) {
                from_tokens[BookKey{range_key_for(leg), leg.is_put, leg.is_long}] +=
                    leg_notional(leg) * holding.units;
            }
        }
        for (const auto& [key, book] : acct.books) {
            if (book.notional < -kRelEps) {
                throw AccountingError("negative book notional for " + id);
            }
            (key.is_long ? bought_by_range : sold_by_range)[key.range] +=
                book.notional;
            auto it = from_tokens.find(key);
            const double held = it == from_tokens.end() ? 0.0 : it->second;
            if (!near(held, book.notional, 1e-6)) {
                throw AccountingError("book/token mismatch for " + id + ": " +
                                      std::to_string(held) + " vs " +
                                      std::to_string(book.notional));
            }
        }
    }
    if (!near(shares, totals_.shares, 1e-6)) {
        throw AccountingError("share total drifted");
    }
    double sold = 0.0;
    double bought = 0.0;
    for (const auto& [key, ledger] : ranges_) {
        if (ledger.sold < -kRelEps || ledger.bought < -kRelEps ||
            ledger.bought > ledger.sold * (1.0 + 1e-9) + 1e-9) {
            throw AccountingError("range ledger out of order");
        }
        sold += ledger.sold;
        bought += ledger.bought;
        auto s = sold_by_range.find(key);
        auto b = bought_by_range.find(key);
        if (!near(s == sold_by_range.end() ? 0.0 : s->second, ledger.sold, 1e-6) ||
            !near(b == bought_by_range.end() ? 0.0 : b->second, ledger.bought, 1e-6)) {
            throw AccountingError("books do not add up to the range ledger");
        }
    }
    if (!near(sold, totals_.notional, 1e-6) || !near(bought, totals_.locked, 1e-6)) {
        throw AccountingError("pool totals do not match the ranges");
    }
}

nlohmann::ordered_json Pool::snapshot() const {
    nlohmann::ordered_json j;
    j["pool_id"] = pool_id_;
    j["pair"] = {{"numeraire", pair_.numeraire}, {"asset", pair_.asset}};
    j["config"] = {{"commission_rate", config_.commission_rate},
                   {"tick_spacing", config_.tick_spacing}};
    j["totals"] = {{"liquidity", totals_.liquidity},
                   {"notional", totals_.notional},
                   {"locked", totals_.locked},
                   {"shares", totals_.shares},
                   {"bad_debt", totals_.bad_debt}};
    if (curves_) {
        nlohmann::ordered_json c;
        c["collateral"] = nlohmann::ordered_json::array();
        for (auto [u, v] : curves_->collateral_knots) c["collateral"].push_back({u, v});
        c["commission"] = nlohmann::ordered_json::array();
        for (auto [u, v] : curves_->commission_knots) c["commission"].push_back({u, v});
        j["curves"] = std::move(c);
    } else {
        j["curves"] = nullptr;
    }
    j["ranges"] = nlohmann::ordered_json::array();
    for (const auto& [key, ledger] : ranges_) {
        nlohmann::ordered_json r;
        r["tick"] = key.tick;
        r["width"] = key.width;
        r["sold"] = ledger.sold;
        r["bought"] = ledger.bought;
        r["fee_growth"] = ledger.fee_growth;
        r["fee_growth_sold"] = ledger.fee_growth_sold;
        j["ranges"].push_back(std::move(r));
    }
    j["accounts"] = nlohmann::ordered_json::array();
    for (const auto& [id, acct] : accounts_) {
        nlohmann::ordered_json a;
        a["id"] = id;
        a["deposited"] = acct.deposited;
        a["shares"] = acct.shares;
        a["books"] = nlohmann::ordered_json::array();
        for (const auto& [key, book] : acct.books) {
            nlohmann::ordered_json b;
            b["tick"] = key.range.tick;
            b["width"] = key.range.width;
            b["is_put"] = key.is_put;
            b["is_long"] = key.is_long;
            b["notional"] = book.notional;
            b["fg_entry_weighted"] = book.fg_entry_weighted;
            b["basis_entry_weighted"] = book.basis_entry_weighted;
            a["books"].push_back(std::move(b));
        }
        a["tokens"] = nlohmann::ordered_json::array();
        for (const auto& [hex, holding] : acct.tokens) {
            nlohmann::ordered_json t;
            t["id"] = hex;
            t["units"] = holding.units;
            t["legs"] = nlohmann::ordered_json::array();
            for (const Leg& leg : holding.position.legs) {
                nlohmann::ordered_json l;
                l["strike"] = leg.strike;
                l["range_factor"] = leg.range_factor;
                l["is_put"] = leg.is_put;
                l["is_long"] = leg.is_long;
                l["size"] = leg.size;
                t["legs"].push_back(std::move(l));
            }
            a["tokens"].push_back(std::move(t));
        }
        j["accounts"].push_back(std::move(a));
    }
    return j;
}

std::string Pool::event_log_text() const {
    std::string out;
    for (const std::string& line : log_) {
        out += line;
        out += '\n';
    }
    return out;
}

void Pool::write_log(const std::string& path) const {
    std::ofstream f(path);
    if (!f) throw IoError("cannot open " + path + " for writing");
    f << event_log_text();
    if (!f) throw IoError("failed writing " + path);
}

Pool Pool::replay(const std::string& jsonl_text, const ReplayObserver& on_event) {
    std::istringstream in(jsonl_text);
    std::string line;
    std::size_t line_no = 0;
    std::optional<Pool> pool;

    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            const nlohmann::json j = nlohmann::json::parse(line);
            const std::string op = json_str(j, "op");
            if (!pool) {
                if (op != "init") throw ParseError("log must start with an init event");
                PoolConfig cfg;
                cfg.commission_rate = json_num(j, "commission_rate");
                cfg.tick_spacing = json_num(j, "tick_spacing");
                pool.emplace(j.at("pool_id").get<std::uint64_t>(),
                             TokenPair{json_str(j, "numeraire"), json_str(j, "asset")},
                             cfg);
                if (on_event) on_event(*pool, line_no, op);
                continue;
            }
            if (op == "init") {
                throw ParseError("duplicate init event");
            } else if (op == "deposit") {
                pool->deposit(json_str(j, "account"), json_num(j, "amount"));
            } else if (op == "withdraw") {
                if (j.contains("spot") && j.at("spot").is_number()) {
                    pool->withdraw(json_str(j, "account"), json_num(j, "amount"),
                                   json_num(j, "spot"));
                } else {
                    pool->withdraw(json_str(j, "account"), json_num(j, "amount"));
                }
            } else if (op == "set_curves") {
                UtilizationCurves curves;
                for (const auto& k : j.at("collateral")) {
                    curves.collateral_knots.emplace_back(k.at(0).get<double>(),
                                                         k.at(1).get<double>());
                }
                for (const auto& k : j.at("commission")) {
                    curves.commission_knots.emplace_back(k.at(0).get<double>(),
                                                         k.at(1).get<double>());
                }
                pool->set_curves(curves);
            } else if (op == "mint") {
                std::vector<Leg> legs;
                for (const auto& l : j.at("legs")) {
                    legs.push_back(Leg{json_num(l, "strike"),
                                       json_num(l, "range_factor"),
                                       l.at("is_put").get<bool>(),
                                       l.at("is_long").get<bool>(),
                                       json_num(l, "size")});
                }
                pool->mint(json_str(j, "account"), legs, json_num(j, "spot"));
            } else if (op == "advance_fees") {
                pool->advance_fees(
                    RangeKey{j.at("tick").get<std::int32_t>(),
                             j.at("width").get<std::int32_t>()},
                    json_num(j, "dfg"));
            } else if (op == "close") {
                pool->close_position(json_str(j, "caller"), json_str(j, "owner"),
                                     token_from_hex(json_str(j, "token")),
                                     json_num(j, "spot"),
                                     j.at("force").get<bool>());
            } else {
                throw ParseError("unknown op '" + op + "'");
            }
            if (on_event) on_event(*pool, line_no, op);
        } catch (const std::exception& e) {
            throw ParseError("event log line " + std::to_string(line_no) + ": " +
                             e.what());
        }
    }
    if (!pool) throw ParseError("event log is empty");
    pool->check_consistency();
    return std::move(*pool);
}

Pool Pool::replay_file(const std::string& path, const ReplayObserver& on_event) {
    std::ifstream f(path);
    if (!f) throw IoError("cannot open " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return replay(buf.str(), on_event);
}

}  // namespace panopt
