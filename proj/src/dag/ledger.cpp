// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/dag/ledger.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace powlab::dag {

const char* to_string(Selection s)
{
    return s == Selection::Greedy ? "greedy" : "rts";
}

Selection parse_selection(std::string_view name)
{
    if (name == "rts" || name == "honest") return Selection::Rts;
    if (name == "greedy") return Selection::Greedy;
    throw std::invalid_argument("unknown transaction selection '" + std::string(name) + "'");
}

void DagLedger::add(DagBlock block)
{
    auto before = [](const DagBlock& a, const DagBlock& b) {
        if (a.created_at != b.created_at) return a.created_at < b.created_at;
        return a.id < b.id;
    };
    auto pos = std::upper_bound(m_blocks.begin(), m_blocks.end(), block, before);
    m_blocks.insert(pos, std::move(block));
}

std::unordered_map<std::uint64_t, std::size_t> DagLedger::tx_first_inclusion() const
{
    std::unordered_map<std::uint64_t, std::size_t> first;
    for (std::size_t i = 0; i < m_blocks.size(); ++i) {
        for (const auto& tx : m_blocks[i].txs) first.emplace(tx.id, i);
    }
    return first;
}

std::size_t DagLedger::inclusions() const
{
    std::size_t n = 0;
    for (const auto& b : m_blocks) n += b.txs.size();
    return n;
}

std::vector<chain::Transaction> select_txs_rts(const chain::Mempool& pool, std::size_t capacity, sim::Rng& rng)
{
    if (capacity == 0) throw std::invalid_argument("select_txs_rts: capacity must be positive");
    return pool.sample(capacity, rng);
}

std::vector<chain::Transaction> select_txs_greedy(const chain::Mempool& pool, std::size_t capacity)
{
    if (capacity == 0) throw std::invalid_argument("select_txs_greedy: capacity must be positive");
    return pool.top(capacity);
}

std::map<MinerId, Amount> attribute_rewards(const DagLedger& ledger)
{
    std::map<MinerId, Amount> out;
    std::unordered_set<std::uint64_t> seen;
    for (const auto& b : ledger.blocks()) {
        Amount& acc = out[b.miner];
        for (const auto& tx : b.txs) {
            if (seen.insert(tx.id).second) acc += tx.fee;
        }
    }
    return out;
}

std::map<MinerId, double> profit_factor(const std::map<MinerId, Amount>& rewards,
                                        std::span<const DagMinerSpec> miners)
{
    Amount total = 0;
    for (const auto& [m, r] : rewards) total += r;
    if (total <= 0) throw std::invalid_argument("profit_factor: total reward is zero");
    std::map<MinerId, double> out;
    for (const auto& m : miners) {
        if (!(m.power > 0.0)) throw std::invalid_argument("profit_factor: miner power must be positive");
        auto it = rewards.find(m.id);
        const double share = it == rewards.end() ? 0.0 : static_cast<double>(it->second) / static_cast<double>(total);
        out[m.id] = share / m.power;
    }
    return out;
}

double collision_rate(const DagLedger& ledger)
{
    std::size_t total = 0;
    std::size_t dup = 0;
    std::unordered_set<std::uint64_t> seen;
    for (const auto& b : ledger.blocks()) {
        for (const auto& tx : b.txs) {
            ++total;
            if (!seen.insert(tx.id).second) ++dup;
        }
    }
    if (total == 0) throw std::invalid_argument("collision_rate: no transaction inclusions");
    return static_cast<double>(dup) / static_cast<double>(total);
}

} // namespace powlab::dag
