#pragma once

namespace panopt {

double norm_pdf(double x);
double norm_cdf(double x);

// European call under zero rates: s N(d1) - k N(d2). At t = 0 the intrinsic
// value. Time is in years, sigma per sqrt(year).
double bs_call_price(double spot, double strike, double sigma, double t);

// Time decay of the call with t years left, reported as a positive rate:
// the speed at which remaining option value melts, which is also the rate
// at which a perpetual seller collects premium. Requires t > 0.
double bs_theta(double spot, double strike, double sigma, double t);

// Equivalent time-to-expiry of an LP range [K/r, K*r]:
// (2 pi / sigma^2) * ((sqrt(r) - 1) / (sqrt(r) + 1))^2.
double effective_dte(double range_factor, double sigma);

// Inverse of effective_dte: the range factor whose decay horizon is t.
// No finite range exists once t >= 2 pi / sigma^2.
double range_for_dte(double t, double sigma);

// Upper bound on the gamma of a range position: 2 / (k pi ln r).
double gamma_cap(double strike, double range_factor);

// Volatility implied by AMM fee income: 2 * fee_rate * sqrt(volume / tick_liquidity),
// with volume and liquidity over the same window.
double implied_vol(double fee_rate, double volume, double tick_liquidity);

}  // namespace panopt
