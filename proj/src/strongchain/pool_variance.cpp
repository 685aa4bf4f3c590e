// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/strongchain/pool_variance.hpp>

#include <boost/random/binomial_distribution.hpp>
#include <boost/random/negative_binomial_distribution.hpp>

#include <cmath>
#include <stdexcept>

namespace powlab::strongchain {

RewardStats estimate_reward_stats(double alpha, const StrongchainParams& params, std::uint64_t horizon,
                                  sim::Rng& rng, std::uint64_t windows)
{
    if (!(alpha > 0.0 && alpha <= 1.0)) throw std::invalid_argument("estimate_reward_stats: alpha must lie in (0, 1]");
    if (horizon < kMinHorizon) throw std::invalid_argument("estimate_reward_stats: horizon must be at least 100 blocks");
    if (windows < 2) throw std::invalid_argument("estimate_reward_stats: need at least two windows");
    params.validate();

    using Count = long long;
    boost::random::binomial_distribution<Count, double> strong(static_cast<Count>(horizon), alpha);
    boost::random::negative_binomial_distribution<Count, double> weak_total(static_cast<Count>(horizon),
                                                                           1.0 / params.ratio);
    const double weak_reward = params.weak_reward();

    double sum = 0.0;
    double sum_sq = 0.0;
    for (std::uint64_t i = 0; i < windows; ++i) {
        const Count s = strong(rng);
        Count w_own = 0;
        if (params.ratio > 1.0) {
            const Count w = weak_total(rng);
            if (w > 0) {
                boost::random::binomial_distribution<Count, double> own(w, alpha);
                w_own = own(rng);
            }
        }
        const double reward = params.R * static_cast<double>(s) + weak_reward * static_cast<double>(w_own);
        sum += reward;
        sum_sq += reward * reward;
    }
    const double n = static_cast<double>(windows);
    const double mean = sum / n;
    const double var = std::max(0.0, (sum_sq - n * mean * mean) / (n - 1.0));
    return {mean, mean > 0.0 ? std::sqrt(var) / mean : 0.0, windows};
}

double bitcoin_relative_std(double pool_size, std::uint64_t horizon)
{
    if (!(pool_size > 0.0 && pool_size <= 1.0)) throw std::invalid_argument("bitcoin_relative_std: pool size must lie in (0, 1]");
    return std::sqrt((1.0 - pool_size) / (static_cast<double>(horizon) * pool_size));
}

double equivalent_pool_size_for(double relative_std, std::uint64_t horizon, double tolerance)
{
    if (!(relative_std >= 0.0)) throw std::invalid_argument("equivalent_pool_size: relative std must be non-negative");
    // bitcoin_relative_std is decreasing in the pool size.
    double lo = 1e-15;
    double hi = 1.0;
    for (int iter = 0; iter < 200; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (bitcoin_relative_std(mid, horizon) > relative_std) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo <= tolerance * hi) return 0.5 * (lo + hi);
    }
    throw std::runtime_error("equivalent_pool_size: bisection did not converge");
}

double equivalent_pool_size(double alpha, const StrongchainParams& params, std::uint64_t horizon, sim::Rng& rng,
                            double tolerance, std::uint64_t windows)
{
    const RewardStats stats = estimate_reward_stats(alpha, params, horizon, rng, windows);
    return equivalent_pool_size_for(stats.relative_std, horizon, tolerance);
}

} // namespace powlab::strongchain
