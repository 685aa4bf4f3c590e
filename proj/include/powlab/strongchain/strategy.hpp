// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_STRONGCHAIN_STRATEGY_HPP
#define POWLAB_STRONGCHAIN_STRATEGY_HPP

#include <cstdint>
#include <string_view>

namespace powlab::strongchain {

enum class StrategyTag { Honest, Selfish, Reclusive, Spiteful };

const char* to_string(StrategyTag tag);
/** Throws std::invalid_argument on an unknown name. */
StrategyTag parse_strategy(std::string_view name);

enum class Trigger { FoundBlock, FoundWeak, ReceivedBlock, ReceivedWeak, AssembleBlock };

/**
 * What a miner knows when it has to act. Work values are measured from the
 * fork point between its own branch and the strongest known public chain.
 */
struct Observation {
    Trigger trigger{Trigger::FoundBlock};
    double private_work{0.0};
    double public_work{0.0};
    /** Length of the miner's own branch above the fork point. */
    std::uint32_t blocks_since_fork{0};
    /** Blocks on that branch not yet released. */
    std::uint32_t unpublished{0};
    /** Work of foreign weak headers that could go into the next block. */
    double foreign_weak_work{0.0};
    /** R expressed as work: one strong header, T_max/T_s. */
    double reward_work{1.0};
};

struct Actions {
    bool publish{false};
    bool adopt{false};
    bool broadcast_weak{false};
    bool include_foreign_weak{false};
};

/**
 * Decision rules.
 *
 * honest:    publish at once, broadcast weak headers, include all foreign
 *            weak headers, adopt any strictly stronger chain.
 * selfish:   keep a fresh block private until the branch is two blocks long;
 *            publish when 0 < private - public <= R, or on an exact tie
 *            created by a competing block; adopt when public - private >= R.
 *            Weak headers are broadcast only while mining on a public tip.
 * reclusive: honest, but never broadcasts its weak headers.
 * spiteful:  honest, but includes foreign weak headers only when together
 *            they are worth strictly more than R.
 */
Actions strategy_step(StrategyTag tag, const Observation& obs);

} // namespace powlab::strongchain

#endif // POWLAB_STRONGCHAIN_STRATEGY_HPP
