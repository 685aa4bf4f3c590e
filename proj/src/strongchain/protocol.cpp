// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/strongchain/protocol.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace powlab::strongchain {

StrongchainParams StrongchainParams::with_ratio(double ratio, double T_s, double c)
{
    return with_ratio(ratio, T_s, ratio > 1.0 ? std::log2(ratio) : 0.0, c);
}

StrongchainParams StrongchainParams::with_ratio(double ratio, double T_s, double gamma, double c)
{
    StrongchainParams p;
    p.ratio = ratio;
    p.T_s = T_s;
    p.T_w = T_s * ratio;
    p.gamma = gamma;
    p.c = c;
    p.validate();
    return p;
}

void StrongchainParams::validate() const
{
    if (!(T_s > 0.0) || !(T_max > 0.0) || T_s > T_max) throw std::invalid_argument("strongchain: need 0 < T_s <= T_max");
    if (!(ratio >= 1.0)) throw std::invalid_argument("strongchain: ratio must be >= 1");
    if (std::abs(T_w - T_s * ratio) > 1e-12 * T_w) throw std::invalid_argument("strongchain: T_w must equal T_s * ratio");
    if (ratio > 1.0 && !(gamma > 0.0)) throw std::invalid_argument("strongchain: gamma must be positive");
    if (!(c > 0.0)) throw std::invalid_argument("strongchain: c must be positive");
    if (!(R > 0.0)) throw std::invalid_argument("strongchain: R must be positive");
    if (difficulty_window == 0 || !(target_block_time > 0.0)) {
        throw std::invalid_argument("strongchain: bad difficulty window or block time");
    }
}

void WeakTally::add(MinerId miner, std::uint64_t n, double timestamp)
{
    if (n == 0) return;
    auto it = std::find_if(counts.begin(), counts.end(), [miner](const auto& e) { return e.first == miner; });
    if (it == counts.end()) {
        counts.emplace_back(miner, n);
    } else {
        it->second += n;
    }
    total += n;
    timestamp_sum += timestamp * static_cast<double>(n);
}

BlockSummary summarize(const chain::Block& block, const StrongchainParams& params)
{
    BlockSummary s;
    s.miner = block.header.coinbase;
    s.T_s = block.header.target;
    s.T_w = block.header.target * params.ratio;
    s.timestamp = block.header.timestamp;
    for (const auto& w : block.weak_headers) s.weak.add(w.coinbase, 1, w.timestamp);
    for (const auto& tx : block.txs) s.fees += tx.fee;
    return s;
}

double block_pow(const BlockSummary& block, double T_max)
{
    return T_max / block.T_s + static_cast<double>(block.weak.total) * (T_max / block.T_w);
}

double chain_pow(std::span<const BlockSummary> blocks, double T_max)
{
    double total = 0.0;
    for (const auto& b : blocks) total += block_pow(b, T_max);
    return total;
}

double chain_pow(const ChainView& chain, const StrongchainParams& params)
{
    double total = 0.0;
    for (const auto& b : chain.blocks) {
        const double T_s = b.header.target;
        total += params.T_max / T_s + static_cast<double>(b.weak_headers.size()) * params.T_max / (T_s * params.ratio);
    }
    return total;
}

namespace {

bool same_height_single_block_forks(std::span<const ChainView> cands)
{
    if (cands.size() < 2) return false;
    const std::size_t height = cands[0].blocks.size();
    if (height == 0) return false;
    const auto& parent = cands[0].blocks.back().header.prev_hash;
    const double T_s = cands[0].blocks.back().header.target;
    for (const auto& c : cands) {
        if (c.blocks.size() != height) return false;
        const auto& tip = c.blocks.back().header;
        if (tip.prev_hash != parent || tip.target != T_s) return false;
    }
    // Equal targets at one height means the same difficulty window.
    return true;
}

} // namespace

std::size_t fork_choice(std::span<const ChainView> candidates, const StrongchainParams& params)
{
    if (candidates.empty()) throw std::invalid_argument("fork_choice: no candidates");
    const bool count_pending = same_height_single_block_forks(candidates);
    std::size_t best = 0;
    double best_score = -1.0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        double score = chain_pow(candidates[i], params);
        if (count_pending) {
            const double T_w = candidates[i].blocks.back().header.target * params.ratio;
            score += static_cast<double>(candidates[i].pending_weak.size()) * params.T_max / T_w;
        }
        if (score > best_score) {
            best_score = score;
            best = i;
        }
    }
    return best;
}

std::vector<std::pair<MinerId, double>> reward_block(const BlockSummary& block, const StrongchainParams& params)
{
    std::vector<std::pair<MinerId, double>> out;
    out.emplace_back(block.miner, params.R + static_cast<double>(block.fees));
    const double per_weak = params.gamma * params.c * params.R * block.T_s / block.T_w;
    for (const auto& [miner, n] : block.weak.counts) {
        const double amount = per_weak * static_cast<double>(n);
        auto it = std::find_if(out.begin(), out.end(), [m = miner](const auto& e) { return e.first == m; });
        if (it == out.end()) {
            out.emplace_back(miner, amount);
        } else {
            it->second += amount;
        }
    }
    return out;
}

std::vector<std::pair<MinerId, double>> reward_block(const chain::Block& block, const StrongchainParams& params)
{
    return reward_block(summarize(block, params), params);
}

double block_timestamp(const BlockSummary& block)
{
    const double w = block.T_s / block.T_w;
    return (block.timestamp + w * block.weak.timestamp_sum) / (1.0 + w * static_cast<double>(block.weak.total));
}

double block_timestamp(const chain::Block& block, const StrongchainParams& params)
{
    return block_timestamp(summarize(block, params));
}

std::pair<double, double> retarget(double elapsed, const StrongchainParams& params)
{
    if (!(elapsed > 0.0)) throw std::invalid_argument("retarget: elapsed time must be positive");
    const double expected = static_cast<double>(params.difficulty_window) * params.target_block_time;
    const double T_s = params.T_s * elapsed / expected;
    return {T_s, T_s * params.ratio};
}

std::pair<double, double> retarget(std::span<const BlockSummary> history, const StrongchainParams& params)
{
    if (history.size() != params.difficulty_window) {
        throw std::invalid_argument("retarget: history must hold exactly one difficulty window");
    }
    return retarget(block_timestamp(history.back()) - block_timestamp(history.front()), params);
}

} // namespace powlab::strongchain
