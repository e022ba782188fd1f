#include "panopt/black_scholes.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "panopt/errors.hpp"

namespace panopt {

namespace {

void check_positive(double v, const char* name) {
    if (!(v > 0.0) || !std::isfinite(v)) {
        throw DomainError(std::string(name) + " must be positive and finite, got " +
                          std::to_string(v));
    }
}

}  // namespace

double norm_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

double norm_cdf(double x) {
    return 0.5 * std::erfc(-x / std::numbers::sqrt2);
}

double bs_call_price(double spot, double strike, double sigma, double t) {
    check_positive(spot, "spot");
    check_positive(strike, "strike");
    check_positive(sigma, "sigma");
    if (t < 0.0 || !std::isfinite(t)) {
        throw DomainError("t must be >= 0, got " + std::to_string(t));
    }
    if (t == 0.0) return std::max(spot - strike, 0.0);
    const double st = sigma * std::sqrt(t);
    const double d1 = (std::log(spot / strike) + 0.5 * st * st) / st;
    return spot * norm_cdf(d1) - strike * norm_cdf(d1 - st);
}

double bs_theta(double spot, double strike, double sigma, double t) {
    check_positive(spot, "spot");
    check_positive(strike, "strike");
    check_positive(sigma, "sigma");
    check_positive(t, "t");
    const double st = sigma * std::sqrt(t);
    const double d1 = (std::log(spot / strike) + 0.5 * st * st) / st;
    return spot * norm_pdf(d1) * sigma / (2.0 * std::sqrt(t));
}

double effective_dte(double range_factor, double sigma) {
    check_positive(sigma, "sigma");
    if (!(range_factor >= 1.0) || !std::isfinite(range_factor)) {
        throw DomainError("range_factor must be >= 1, got " +
                          std::to_string(range_factor));
    }
    const double w = (std::sqrt(range_factor) - 1.0) / (std::sqrt(range_factor) + 1.0);
    return 2.0 * std::numbers::pi / (sigma * sigma) * w * w;
}

double range_for_dte(double t, double sigma) {
    check_positive(sigma, "sigma");
    if (t < 0.0 || !std::isfinite(t)) {
        throw DomainError("t must be >= 0, got " + std::to_string(t));
    }
    const double w = sigma * std::sqrt(t / (2.0 * std::numbers::pi));
    if (w >= 1.0) {
        throw DomainError("no finite range factor reaches " + std::to_string(t) +
                          " years at sigma " + std::to_string(sigma) +
                          "; horizon is capped at 2 pi / sigma^2");
    }
    const double sq = (1.0 + w) / (1.0 - w);
    return sq * sq;
}

double gamma_cap(double strike, double range_factor) {
    check_positive(strike, "strike");
    if (!(range_factor > 1.0) || !std::isfinite(range_factor)) {
        throw DomainError("gamma cap needs range_factor > 1, got " +
                          std::to_string(range_factor));
    }
    return 2.0 / (strike * std::numbers::pi * std::log(range_factor));
}

double implied_vol(double fee_rate, double volume, double tick_liquidity) {
    check_positive(fee_rate, "fee_rate");
    check_positive(tick_liquidity, "tick_liquidity");
    if (volume < 0.0 || !std::isfinite(volume)) {
        throw DomainError("volume must be >= 0, got " + std::to_string(volume));
    }
    return 2.0 * fee_rate * std::sqrt(volume / tick_liquidity);
}

}  // namespace panopt
