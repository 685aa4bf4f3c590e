// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_STRONGCHAIN_POOL_VARIANCE_HPP
#define POWLAB_STRONGCHAIN_POOL_VARIANCE_HPP

#include <powlab/sim/rng.hpp>
#include <powlab/strongchain/protocol.hpp>

#include <cstdint>

namespace powlab::strongchain {

struct RewardStats {
    double mean{0.0};
    double relative_std{0.0};
    std::uint64_t windows{0};
};

/** Smallest accepted horizon. */
inline constexpr std::uint64_t kMinHorizon = 100;

/**
 * Monte Carlo estimate of the reward a miner of power alpha collects over
 * `horizon` strong blocks of honest mining, fees excluded. Each window draws
 * the miner's strong blocks S ~ Bin(N, alpha), the weak solutions found
 * before the N-th strong one W ~ NegBin(N, 1/ratio), and the miner's share
 * of them Bin(W, alpha); the reward is R*S + weak_reward*W_own.
 * Throws std::invalid_argument for alpha outside (0, 1] or horizon < kMinHorizon.
 */
RewardStats estimate_reward_stats(double alpha, const StrongchainParams& params, std::uint64_t horizon,
                                  sim::Rng& rng, std::uint64_t windows = 20000);

/** Relative std of a Bitcoin pool of size a over N blocks: sqrt((1-a)/(N a)). */
double bitcoin_relative_std(double pool_size, std::uint64_t horizon);

/**
 * Bitcoin pool size whose relative reward std equals that of a StrongChain
 * miner of power alpha, by bisection on the closed form. Throws
 * std::runtime_error if the bisection does not reach `tolerance`.
 */
double equivalent_pool_size(double alpha, const StrongchainParams& params, std::uint64_t horizon, sim::Rng& rng,
                            double tolerance = 1e-9, std::uint64_t windows = 20000);

/** Same search against a given relative std. */
double equivalent_pool_size_for(double relative_std, std::uint64_t horizon, double tolerance = 1e-9);

} // namespace powlab::strongchain

#endif // POWLAB_STRONGCHAIN_POOL_VARIANCE_HPP
