// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/sim/lottery.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace powlab::sim {

void validate_powers(std::span<const double> powers)
{
    if (powers.empty()) throw std::invalid_argument("miner list is empty");
    double sum = 0.0;
    for (double p : powers) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw std::invalid_argument("hash power must be non-negative");
        sum += p;
    }
    if (std::abs(sum - 1.0) > kPowerSumTolerance) {
        throw std::invalid_argument("hash powers sum to " + std::to_string(sum) + ", expected 1");
    }
}

HashLottery::HashLottery(std::span<const MinerSpec> miners, double mean_interval)
    : m_mean(mean_interval)
{
    std::vector<double> powers;
    powers.reserve(miners.size());
    for (const auto& m : miners) {
        m_ids.push_back(m.id);
        powers.push_back(m.power);
    }
    init(powers);
}

HashLottery::HashLottery(std::span<const double> powers, double mean_interval)
    : m_mean(mean_interval)
{
    for (std::size_t i = 0; i < powers.size(); ++i) m_ids.push_back(static_cast<MinerId>(i));
    init(powers);
}

void HashLottery::init(std::span<const double> powers)
{
    validate_powers(powers);
    if (!(m_mean > 0.0) || !std::isfinite(m_mean)) {
        throw std::invalid_argument("mean block interval must be positive");
    }
    double acc = 0.0;
    m_cumulative.reserve(powers.size());
    for (double p : powers) {
        acc += p;
        m_cumulative.push_back(acc);
    }
    // Absorb rounding so that every uniform draw lands on some miner.
    m_cumulative.back() = 2.0;
}

std::size_t HashLottery::pick(Rng& rng) const
{
    if (m_cumulative.size() == 1) return 0;
    const double u = rng.uniform();
    const auto it = std::upper_bound(m_cumulative.begin(), m_cumulative.end(), u);
    return static_cast<std::size_t>(it - m_cumulative.begin());
}

LotteryDraw HashLottery::draw(Rng& rng) const
{
    const double dt = rng.exponential(m_mean);
    return LotteryDraw{m_ids[pick(rng)], dt};
}

LotteryDraw next_block_winner(Rng& rng, std::span<const MinerSpec> miners, double mean_block_time)
{
    return HashLottery(miners, mean_block_time).draw(rng);
}

} // namespace powlab::sim
