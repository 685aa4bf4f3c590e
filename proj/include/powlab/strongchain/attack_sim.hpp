// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_STRONGCHAIN_ATTACK_SIM_HPP
#define POWLAB_STRONGCHAIN_ATTACK_SIM_HPP

#include <powlab/sim/rng.hpp>
#include <powlab/strongchain/protocol.hpp>
#include <powlab/strongchain/strategy.hpp>

#include <cstdint>

namespace powlab::strongchain {

/** One attacker of power alpha against an honest network of power 1 - alpha. */
struct AttackConfig {
    StrategyTag strategy{StrategyTag::Selfish};
    double alpha{0.3};
    StrongchainParams params{};
    /** Strong blocks mined before the run stops. */
    std::uint64_t blocks{10000};
    /** One-way delay between attacker and honest network, seconds. */
    double latency{0.53};
};

struct AttackResult {
    double attacker_reward{0.0};
    double honest_reward{0.0};
    /** attacker_reward / (attacker_reward + honest_reward) on the final main chain. */
    double relative_payoff{0.0};
    std::uint64_t main_chain_blocks{0};
    std::uint64_t attacker_main_blocks{0};
    std::uint64_t orphaned_blocks{0};
    std::uint64_t attacker_weak_included{0};
    std::uint64_t honest_weak_included{0};
    std::uint64_t weak_headers_mined{0};
    /** Latest simulated time. */
    double end_time{0.0};
};

/**
 * Event-driven run. Hash solutions below T_w arrive as a Poisson process
 * with mean interval target_block_time / ratio; each goes to the attacker
 * with probability alpha and is strong with probability 1/ratio. Blocks and
 * weak headers reach the other side after `latency`. The final main chain is
 * the honest network's choice after the attacker releases a private branch
 * that would still win.
 */
AttackResult simulate_attack(const AttackConfig& config, sim::Rng& rng);

} // namespace powlab::strongchain

#endif // POWLAB_STRONGCHAIN_ATTACK_SIM_HPP
