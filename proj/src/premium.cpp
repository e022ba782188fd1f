#include "panopt/premium.hpp"

#include <cmath>
#include <string>

#include "panopt/black_scholes.hpp"
#include "panopt/errors.hpp"

namespace panopt {

namespace {

void check_path(const PricePath& path) {
    if (path.prices.size() < 2 || path.prices.size() != path.times.size()) {
        throw DomainError("price path needs matching times/prices with >= 2 points");
    }
}

// Neumaier variant of Kahan summation. Deterministic given a fixed order.
struct CompensatedSum {
    double sum = 0.0;
    double comp = 0.0;
    void add(double v) {
        const double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            comp += (sum - t) + v;
        } else {
            comp += (v - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + comp; }
};

}  // namespace

double stream_premium_theta(const PricePath& path, double strike, double sigma,
                            double residual_dt) {
    check_path(path);
    if (!(residual_dt > 0.0)) {
        throw DomainError("residual_dt must be positive");
    }
    CompensatedSum acc;
    for (std::size_t i = 0; i + 1 < path.prices.size(); ++i) {
        const double dt = path.times[i + 1] - path.times[i];
        acc.add(bs_theta(path.prices[i], strike, sigma, residual_dt) * dt);
    }
    return acc.value();
}

double stream_premium_theta(const PricePath& path, double strike, double sigma,
                            const std::vector<double>& residual_schedule) {
    check_path(path);
    if (residual_schedule.size() != path.prices.size() - 1) {
        throw DomainError("residual schedule needs one entry per step, got " +
                          std::to_string(residual_schedule.size()));
    }
    CompensatedSum acc;
    for (std::size_t i = 0; i + 1 < path.prices.size(); ++i) {
        const double dt = path.times[i + 1] - path.times[i];
        acc.add(bs_theta(path.prices[i], strike, sigma, residual_schedule[i]) * dt);
    }
    return acc.value();
}

double stream_premium_tick(const PricePath& path, double strike, double sigma,
                           double tick_spacing) {
    check_path(path);
    if (!(strike > 0.0)) throw DomainError("strike must be positive");
    if (!(sigma >= 0.0)) throw DomainError("sigma must be >= 0");
    if (!(tick_spacing > 0.0) || !(tick_spacing < 1.0)) {
        throw DomainError("tick_spacing must be in (0, 1)");
    }
    const double lo = strike * (1.0 - tick_spacing / 2.0);
    const double hi = strike * (1.0 + tick_spacing / 2.0);
    CompensatedSum in_band;
    for (std::size_t i = 0; i + 1 < path.prices.size(); ++i) {
        const double s = path.prices[i];
        if (s >= lo && s <= hi) {
            in_band.add(path.times[i + 1] - path.times[i]);
        }
    }
    return strike * sigma * sigma / (2.0 * tick_spacing) * in_band.value();
}

PremiumStats premium_stats(const std::vector<double>& premiums, double bs_price,
                           PremiumEstimator estimator) {
    PremiumStats st;
    st.n_paths = premiums.size();
    st.bs_price = bs_price;
    if (premiums.empty()) return st;

    CompensatedSum total;
    std::uint64_t zeros = 0;
    std::uint64_t big = 0;
    const double zero_cut =
        estimator == PremiumEstimator::tick ? 0.0 : 1e-12 * bs_price;
    for (double v : premiums) {
        total.add(v);
        if (estimator == PremiumEstimator::tick ? v == 0.0 : v < zero_cut) ++zeros;
        if (v >= 2.0 * bs_price) ++big;
    }
    const double n = static_cast<double>(premiums.size());
    st.mean = total.value() / n;
    if (premiums.size() > 1) {
        CompensatedSum sq;
        for (double v : premiums) {
            const double d = v - st.mean;
            sq.add(d * d);
        }
        st.std_dev = std::sqrt(sq.value() / (n - 1.0));
        st.mean_std_error = st.std_dev / std::sqrt(n);
    }
    st.cv = st.mean != 0.0 ? st.std_dev / st.mean : 0.0;
    st.frac_zero = static_cast<double>(zeros) / n;
    st.frac_ge_2bs = static_cast<double>(big) / n;
    return st;
}

McResult mc_premium_distribution(const GbmParams& p, double strike,
                                 std::uint64_t n_paths, const McConfig& cfg) {
    validate(p);
    if (!(strike > 0.0)) throw DomainError("strike must be positive");
    if (n_paths == 0) throw DomainError("n_paths must be >= 1");
    if (cfg.residual_dt < 0.0) throw DomainError("residual_dt must be >= 0");
    if (p.sigma == 0.0) {
        throw DomainError("premium simulation needs sigma > 0");
    }

    const double residual = cfg.residual_dt > 0.0 ? cfg.residual_dt : p.dt;
    const double bs = bs_call_price(p.s0, strike, p.sigma, horizon(p));

    McResult result;
    result.premiums.assign(n_paths, 0.0);
    const std::int64_t n = static_cast<std::int64_t>(n_paths);
    const bool parallel = cfg.mode == ExecutionMode::parallel;

#pragma omp parallel for schedule(static) if (parallel)
    for (std::int64_t i = 0; i < n; ++i) {
        static thread_local PricePath path;
        simulate_gbm_into(p, static_cast<std::uint64_t>(i), path);
        result.premiums[static_cast<std::size_t>(i)] =
            cfg.estimator == PremiumEstimator::theta
                ? stream_premium_theta(path, strike, p.sigma, residual)
                : stream_premium_tick(path, strike, p.sigma, cfg.tick_spacing);
    }

    result.stats = premium_stats(result.premiums, bs, cfg.estimator);
    return result;
}

}  // namespace panopt
