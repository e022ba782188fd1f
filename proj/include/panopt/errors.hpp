#pragma once

#include <stdexcept>
#include <string>

namespace panopt {

// Base for everything thrown by this library. Catch-all for callers that
// only care about "panopt rejected the request" vs. a genuine bug.
class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Bad numeric argument (negative vol, zero strike, out-of-range factor...).
class DomainError : public Error {
public:
    using Error::Error;
};

// Tried to sell an option whose strike is already in the money.
class MoneynessError : public Error {
public:
    using Error::Error;
};

// Account collateral does not cover the post-trade requirement.
class MarginError : public Error {
public:
    using Error::Error;
};

// Pool-level liquidity shortfall (locked + requested exceeds deposits).
class LiquidityError : public Error {
public:
    using Error::Error;
};

// Not enough sold-but-unbought liquidity in the range to serve a buy,
// or not enough of the caller's own sold liquidity left to close.
class AvailabilityError : public Error {
public:
    using Error::Error;
};

// A purchase would take bought >= sold for the buyer's aggregate, making
// the effective-liquidity factor blow up.
class DrainedLiquidityError : public Error {
public:
    using Error::Error;
};

// Withdrawal would dip into liquidity backing open positions.
class LockedLiquidityError : public Error {
public:
    using Error::Error;
};

// Internal double-entry bookkeeping went inconsistent. Always a bug or a
// corrupted event log, never a user error.
class AccountingError : public Error {
public:
    using Error::Error;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

// Close attempted by a non-owner without a valid forced-exercise claim.
class AuthorizationError : public Error {
public:
    using Error::Error;
};

// More legs than a token can carry.
class CapacityError : public Error {
public:
    using Error::Error;
};

// A leg's tick, width or ratio does not fit the token bit layout.
class EncodingRangeError : public Error {
public:
    using Error::Error;
};

class MalformedTokenError : public Error {
public:
    using Error::Error;
};

class UnsupportedStrategyError : public Error {
public:
    using Error::Error;
};

// Utilization is undefined because the denominator collapsed.
class DegeneratePoolError : public Error {
public:
    using Error::Error;
};

// Utilization curves never cross, so no target exists.
class NoTargetError : public Error {
public:
    using Error::Error;
};

// Scenario/config file problems: missing key, wrong type, bad enum value.
class ConfigError : public Error {
public:
    using Error::Error;
};

// Malformed event-log or CSV input; message names the offending line.
class ParseError : public Error {
public:
    using Error::Error;
};

class IoError : public Error {
public:
    using Error::Error;
};

}  // namespace panopt
