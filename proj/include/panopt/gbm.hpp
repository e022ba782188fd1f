#pragma once

#include <cstdint>
#include <vector>

namespace panopt {

// Time unit is years throughout; a 1-minute step over a 365-day year is
// dt = 1 / 525600.
struct GbmParams {
    double s0 = 0.0;
    double sigma = 0.0;   // per sqrt(year); 0 gives the deterministic drift path
    double drift = 0.0;
    double dt = 0.0;
    std::uint64_t steps = 0;
    std::uint64_t seed = 0;
};

void validate(const GbmParams& p);

double horizon(const GbmParams& p);  // dt * steps

struct PricePath {
    std::vector<double> times;   // steps + 1 points, times[0] = 0
    std::vector<double> prices;  // prices[0] = s0
};

// splitmix64 mix of a base seed and a stream index. Adjacent indices give
// statistically independent engines, so paths can be generated in any order
// or in parallel with identical results.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

void simulate_gbm_into(const GbmParams& p, std::uint64_t path_index, PricePath& out);
PricePath simulate_gbm(const GbmParams& p, std::uint64_t path_index = 0);

}  // namespace panopt
