#include "panopt/gbm.hpp"

#include <cmath>
#include <random>
#include <string>

#include "panopt/errors.hpp"

namespace panopt {

void validate(const GbmParams& p) {
    if (!(p.s0 > 0.0) || !std::isfinite(p.s0)) {
        throw DomainError("gbm s0 must be positive, got " + std::to_string(p.s0));
    }
    if (!(p.sigma >= 0.0) || !std::isfinite(p.sigma)) {
        throw DomainError("gbm sigma must be >= 0, got " + std::to_string(p.sigma));
    }
    if (!std::isfinite(p.drift)) {
        throw DomainError("gbm drift must be finite");
    }
    if (!(p.dt > 0.0) || !std::isfinite(p.dt)) {
        throw DomainError("gbm dt must be positive, got " + std::to_string(p.dt));
    }
    if (p.steps == 0) {
        throw DomainError("gbm needs at least one step");
    }
}

double horizon(const GbmParams& p) {
    validate(p);
    return p.dt * static_cast<double>(p.steps);
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * (stream + 1);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

void simulate_gbm_into(const GbmParams& p, std::uint64_t path_index,
                       PricePath& out) {
    validate(p);
    const std::size_t n = static_cast<std::size_t>(p.steps) + 1;
    out.times.resize(n);
    out.prices.resize(n);

    std::mt19937_64 rng(mix_seed(p.seed, path_index));
    std::normal_distribution<double> normal(0.0, 1.0);

    const double loc = (p.drift - 0.5 * p.sigma * p.sigma) * p.dt;
    const double scale = p.sigma * std::sqrt(p.dt);

    out.times[0] = 0.0;
    out.prices[0] = p.s0;
    double x = std::log(p.s0);
    for (std::size_t i = 1; i < n; ++i) {
        x += loc + scale * normal(rng);
        out.times[i] = static_cast<double>(i) * p.dt;
        out.prices[i] = std::exp(x);
    }
}

PricePath simulate_gbm(const GbmParams& p, std::uint64_t path_index) {
    PricePath path;
    simulate_gbm_into(p, path_index, path);
    return path;
}

}  // namespace panopt
