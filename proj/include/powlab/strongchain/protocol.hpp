// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_STRONGCHAIN_PROTOCOL_HPP
#define POWLAB_STRONGCHAIN_PROTOCOL_HPP

#include <powlab/chain/types.hpp>

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace powlab::strongchain {

/**
 * Protocol parameters. Targets are fractions of the hash space, so T_max
 * defaults to 1 and T_max/T_s is the work of one strong header.
 */
struct StrongchainParams {
    double T_s{1.0 / 1024.0};
    double T_w{1.0};
    double T_max{1.0};
    double R{12.5};
    double gamma{10.0};
    double c{1.0};
    double ratio{1024.0};
    std::size_t difficulty_window{2016};
    double target_block_time{600.0};

    /** T_w = T_s * ratio with gamma = log2(ratio) unless given. Throws on invalid values. */
    static StrongchainParams with_ratio(double ratio, double T_s, double c = 1.0);
    static StrongchainParams with_ratio(double ratio, double T_s, double gamma, double c);

    /** Throws std::invalid_argument if an invariant is broken. */
    void validate() const;

    double strong_work() const { return T_max / T_s; }
    double weak_work() const { return T_max / T_w; }
    /** Reward for one weak header: gamma * c * R * T_s / T_w. */
    double weak_reward() const { return gamma * c * R * T_s / T_w; }
};

/** Count of weak headers per coinbase plus their timestamp sum. */
struct WeakTally {
    std::vector<std::pair<MinerId, std::uint64_t>> counts;
    std::uint64_t total{0};
    double timestamp_sum{0.0};

    void add(MinerId miner, std::uint64_t n = 1, double timestamp = 0.0);
};

/** What the protocol rules need to know about a block. */
struct BlockSummary {
    MinerId miner{0};
    double T_s{1.0};
    double T_w{1.0};
    double timestamp{0.0};
    WeakTally weak;
    Amount fees{0};
};

BlockSummary summarize(const chain::Block& block, const StrongchainParams& params);

/** A chain from genesis plus the weak headers pointing at its tip. */
struct ChainView {
    std::vector<chain::Block> blocks;
    std::vector<chain::BlockHeader> pending_weak;
};

/** Work of a single block: T_max/T_s + |weak| * T_max/T_w with its own targets. */
double block_pow(const BlockSummary& block, double T_max);
double chain_pow(std::span<const BlockSummary> blocks, double T_max);
double chain_pow(const ChainView& chain, const StrongchainParams& params);

/**
 * Index of the preferred candidate. Scores are chain_pow; when every
 * candidate is a one-block fork off the same parent, at the same height and
 * in the same difficulty window, each score also counts its pending weak
 * headers (l + k against l' + k'). Remaining ties go to the lowest index,
 * i.e. the first seen. Throws std::invalid_argument on an empty list.
 */
std::size_t fork_choice(std::span<const ChainView> candidates, const StrongchainParams& params);

/** Payouts per coinbase; the strong miner first. */
std::vector<std::pair<MinerId, double>> reward_block(const BlockSummary& block, const StrongchainParams& params);
std::vector<std::pair<MinerId, double>> reward_block(const chain::Block& block, const StrongchainParams& params);

/** Mean of constituent timestamps weighted by work: strong 1, each weak T_s/T_w. */
double block_timestamp(const BlockSummary& block);
double block_timestamp(const chain::Block& block, const StrongchainParams& params);

/** New (T_s, T_w) after `elapsed` seconds for a full difficulty window. */
std::pair<double, double> retarget(double elapsed, const StrongchainParams& params);
/**
 * Uses the timestamps of the first and last block of the window. Throws
 * std::invalid_argument unless history holds exactly difficulty_window
 * blocks, or on non-positive elapsed time.
 */
std::pair<double, double> retarget(std::span<const BlockSummary> history, const StrongchainParams& params);

} // namespace powlab::strongchain

#endif // POWLAB_STRONGCHAIN_PROTOCOL_HPP
