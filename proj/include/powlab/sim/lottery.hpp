// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_SIM_LOTTERY_HPP
#define POWLAB_SIM_LOTTERY_HPP

#include <powlab/sim/rng.hpp>

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace powlab {

using MinerId = std::uint32_t;

namespace sim {

/** Tolerance on the sum of hash-power fractions. */
inline constexpr double kPowerSumTolerance = 1e-9;

struct MinerSpec {
    MinerId id{0};
    double power{0.0};
    std::string strategy;
    std::size_t node{0};
};

struct LotteryDraw {
    MinerId winner{0};
    double dt{0.0};
};

/**
 * Proof-of-work as a lottery: inter-arrival times are exponential with the
 * configured mean and each solution goes to a miner with probability equal
 * to its hash-power fraction.
 */
class HashLottery
{
public:
    /** Throws std::invalid_argument on an empty list, negative power, powers
     *  not summing to 1 (within kPowerSumTolerance) or mean <= 0. */
    HashLottery(std::span<const MinerSpec> miners, double mean_interval);
    HashLottery(std::span<const double> powers, double mean_interval);

    /** Draws dt first, then the winner. */
    LotteryDraw draw(Rng& rng) const;
    /** Index of the winner only (no time draw). */
    std::size_t pick(Rng& rng) const;

    double mean_interval() const { return m_mean; }
    std::size_t size() const { return m_ids.size(); }

private:
    void init(std::span<const double> powers);

    std::vector<MinerId> m_ids;
    std::vector<double> m_cumulative;
    double m_mean;
};

/** Throws std::invalid_argument unless powers are non-negative and sum to 1. */
void validate_powers(std::span<const double> powers);

LotteryDraw next_block_winner(Rng& rng, std::span<const MinerSpec> miners, double mean_block_time);

} // namespace sim
} // namespace powlab

#endif // POWLAB_SIM_LOTTERY_HPP
