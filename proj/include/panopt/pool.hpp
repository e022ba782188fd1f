#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "panopt/instrument.hpp"
#include "panopt/risk.hpp"
#include "panopt/token_codec.hpp"

namespace panopt {

using AccountId = std::string;

// A deployed price range, identified by its quantized center tick and width.
// Chunks in the same range are fungible regardless of which option type they
// back; puts and calls differ only in how each holder's debt is marked.
struct RangeKey {
    std::int32_t tick = 0;
    std::int32_t width = 0;
    auto operator<=>(const RangeKey&) const = default;
};

RangeKey range_key_for(const Leg& leg);

// Reconstructs a leg with the given open notional on this range.
Leg book_leg(const RangeKey& key, bool is_put, bool is_long, double notional);

struct RangeLedger {
    double sold = 0.0;    // open sold notional
    double bought = 0.0;  // of which moved out for buyers
    // Cumulative fees per unit of deployed notional. Buyers owe against this.
    double fee_growth = 0.0;
    // Same accumulator prorated by the deployed fraction base/sold, which is
    // what a unit of *sold* notional actually earned while parts of the range
    // were bought out. Sellers accrue against this.
    double fee_growth_sold = 0.0;

    double base() const { return sold - bought; }
};

struct BookKey {
    RangeKey range;
    bool is_put = false;
    bool is_long = false;
    auto operator<=>(const BookKey&) const = default;
};

// Aggregate of an account's open legs on one (range, type, direction).
// Entries merge by notional-weighted averages, so splitting a close into
// pieces settles the same total as one shot.
struct SideBook {
    double notional = 0.0;
    // sum of notional_i * fee-growth snapshot at entry (fee_growth_sold for
    // shorts, fee_growth for longs)
    double fg_entry_weighted = 0.0;
    double basis_entry_weighted = 0.0;  // sum of entry basis marks
};

struct TokenHolding {
    TokenId token;
    Position position;   // quantized legs
    double units = 0.0;  // times this exact token was minted
};

struct AccountState {
    double deposited = 0.0;  // net external flow to date, reporting only
    double shares = 0.0;
    std::map<BookKey, SideBook> books;
    std::map<std::string, TokenHolding> tokens;  // keyed by hex token id
};

struct PoolConfig {
    double commission_rate = 0.001;  // of notional, when no curves are set
    double tick_spacing = kDefaultTickSpacing;
};

struct PoolTotals {
    double liquidity = 0.0;  // deposits plus fee revenue, minus withdrawals
    double notional = 0.0;   // open sold notional across ranges
    double locked = 0.0;     // of which moved out and locked for buyers
    double shares = 0.0;
    double bad_debt = 0.0;   // settlements accounts could not cover, reporting only
};

struct MintReceipt {
    TokenId token;
    double notional = 0.0;
    double commission = 0.0;
    bool commission_waived = false;
};

struct CloseReceipt {
    double premium = 0.0;     // fee settlement, positive toward the owner
    double basis_pnl = 0.0;   // intrinsic component, positive toward the owner
    double settlement = 0.0;  // premium + basis_pnl, net share mint or burn
    double forced_fee = 0.0;  // paid by the forcer on a forced exercise
};

// Pure per-range arithmetic, also used internally by Pool.

// (fee_growth_now - fee_growth_entry) * notional; negative growth is a
// corrupted ledger and throws AccountingError.
double total_fees(double fee_growth_entry, double fee_growth_now, double notional);

// Longs concentrate on the liquidity left behind: size / (base - size),
// where base is the range's base liquidity before the purchase. Shorts
// dilute into it: size / (base + size), base before the sale.
double effective_liquidity_factor(double size, double base_liquidity, bool is_long);

// Relative price impact of a trade of `size` against `base_liquidity`,
// positive for buys and negative for sells.
double spread(double size, double base_liquidity, bool is_long);

// Factor after a second purchase merges into an existing one; equals
// effective_liquidity_factor(n1 + n2, base, long).
double merge_purchase(double n1, double n2, double base_liquidity);

class Pool {
public:
    Pool(std::uint64_t pool_id, TokenPair pair, PoolConfig config = {});

    // Rebuilds a pool from a JSON-lines event log. Any bad line throws
    // ParseError naming the line number. The callback, when given, sees the
    // pool after every applied event.
    using ReplayObserver =
        std::function<void(const Pool&, std::size_t line_no, const std::string& op)>;
    static Pool replay(const std::string& jsonl_text,
                       const ReplayObserver& on_event = {});
    static Pool replay_file(const std::string& path,
                            const ReplayObserver& on_event = {});

    double deposit(const AccountId& account, double amount);  // returns shares

    // Burns shares worth `amount`. Blocked while it would dip into deployed
    // notional or leave the account's own positions under-collateralized;
    // the margin check needs a spot, so accounts with open books must pass one.
    double withdraw(const AccountId& account, double amount);
    double withdraw(const AccountId& account, double amount, double spot);

    void set_curves(const UtilizationCurves& curves);

    // Tokenizes the legs and opens them for the account. Short legs must be
    // strictly out of the money at spot and deploy notional into their range;
    // long legs move previously sold notional out and lock it. Commission is
    // charged on total notional and waived when the account's share value
    // covers everything it has open after the mint. The account must be
    // solvent afterwards or the whole mint rolls back.
    MintReceipt mint(const AccountId& account, const std::vector<Leg>& legs,
                     double spot);
    MintReceipt mint_short(const AccountId& account, const std::vector<Leg>& legs,
                           double spot);
    MintReceipt mint_long(const AccountId& account, const std::vector<Leg>& legs,
                          double spot);

    // Accrues `dfg` fees per unit of deployed notional on one range and pays
    // the pool the corresponding revenue.
    void advance_fees(const RangeKey& range, double dfg);

    // Closes all units of the account's token and settles premium and
    // intrinsic value against its shares. A non-owner caller must set
    // `force` and may only hit all-long tokens that are at least one full
    // range width in the money; the forcer compensates the owner with a
    // commission-sized fee.
    CloseReceipt close_position(const AccountId& caller, const AccountId& owner,
                                const TokenId& token, double spot,
                                bool force = false);
    CloseReceipt close_position(const AccountId& owner, const TokenId& token,
                                double spot);

    // Fees currently claimable by (longs) or accrued to (shorts) the token,
    // before spread. Buyers settle this times (1 + spread) at close.
    double premium_owed(const AccountId& account, const TokenId& token) const;

    std::uint64_t pool_id() const { return pool_id_; }
    const TokenPair& pair() const { return pair_; }
    const PoolConfig& config() const { return config_; }
    const PoolTotals& totals() const { return totals_; }
    double share_price() const;  // 1.0 until the first deposit
    double share_value(const AccountId& account) const;
    const std::optional<UtilizationCurves>& curves() const { return curves_; }
    const std::map<AccountId, AccountState>& accounts() const { return accounts_; }
    const std::map<RangeKey, RangeLedger>& ranges() const { return ranges_; }
    const RangeLedger* find_range(const RangeKey& key) const;

    // Current collateral ratio / commission rate, from the curves at current
    // utilization when set, else the flat defaults.
    double collateral_ratio_now() const;
    double commission_rate_now() const;

    // Recomputes every aggregate from the open books and throws
    // AccountingError on any drift. Meant for tests and post-replay audits.
    void check_consistency() const;

    nlohmann::ordered_json snapshot() const;
    const std::vector<std::string>& event_log() const { return log_; }
    std::string event_log_text() const;
    void write_log(const std::string& path) const;

    static constexpr double kForcedExerciseWidths = 1.0;

private:
    void log_event(nlohmann::ordered_json event);
    double mint_shares(AccountState& acct, double value);
    double burn_shares(AccountState& acct, double value, bool allow_bad_debt);
    void require_solvent(const AccountId& account, double spot) const;

    std::uint64_t pool_id_ = 0;
    TokenPair pair_;
    PoolConfig config_;
    PoolTotals totals_;
    std::optional<UtilizationCurves> curves_;
    std::map<RangeKey, RangeLedger> ranges_;
    std::map<AccountId, AccountState> accounts_;
    std::vector<std::string> log_;
};

}  // namespace panopt
