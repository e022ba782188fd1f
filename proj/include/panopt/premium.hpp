#pragma once

#include <cstdint>
#include <vector>

#include "panopt/gbm.hpp"
#include "panopt/instrument.hpp"

namespace panopt {

// Premium a perpetual seller at `strike` collects along one price path,
// accruing theta of a synthetic option with a fixed residual lifetime at
// every step (left endpoint rule). `residual_dt` is that lifetime in years;
// the natural choice is the path's own step size.
double stream_premium_theta(const PricePath& path, double strike, double sigma,
                            double residual_dt);

// Same estimator with a per-step residual lifetime, one entry per step.
// Used to mimic an expiring option by walking the schedule down to zero.
double stream_premium_theta(const PricePath& path, double strike, double sigma,
                            const std::vector<double>& residual_schedule);

// Premium collected as AMM fees: strike * sigma^2 / (2 * tick_spacing) per
// year spent inside the band [strike * (1 - ts/2), strike * (1 + ts/2)].
// Exactly zero for a path that never touches the band.
double stream_premium_tick(const PricePath& path, double strike, double sigma,
                           double tick_spacing = kDefaultTickSpacing);

enum class PremiumEstimator { theta, tick };
enum class ExecutionMode { serial, parallel };

struct McConfig {
    PremiumEstimator estimator = PremiumEstimator::theta;
    // 0 means "use the path's dt" for theta; ignored by the tick estimator.
    double residual_dt = 0.0;
    double tick_spacing = kDefaultTickSpacing;
    ExecutionMode mode = ExecutionMode::parallel;
};

struct PremiumStats {
    std::uint64_t n_paths = 0;
    double mean = 0.0;
    double std_dev = 0.0;       // sample standard deviation
    double mean_std_error = 0.0;
    double cv = 0.0;            // std_dev / mean, 0 when mean is 0
    double frac_zero = 0.0;     // exact zeros (tick) or < 1e-12 * bs (theta)
    double frac_ge_2bs = 0.0;   // paths paying at least twice the BS price
    double bs_price = 0.0;      // zero-rate BS call over the same horizon
};

struct McResult {
    PremiumStats stats;
    std::vector<double> premiums;  // one per path, index == path index
};

// Runs n_paths GBM paths (stream indices 0..n-1 of p.seed) and the chosen
// estimator on each. Premiums are written by path index and reduced with a
// compensated serial sum, so serial and parallel runs agree bit for bit.
McResult mc_premium_distribution(const GbmParams& p, double strike,
                                 std::uint64_t n_paths, const McConfig& cfg);

PremiumStats premium_stats(const std::vector<double>& premiums, double bs_price,
                           PremiumEstimator estimator);

}  // namespace panopt
