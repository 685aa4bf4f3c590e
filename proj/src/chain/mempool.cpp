// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/chain/mempool.hpp>

#include <cmath>
#include <stdexcept>
#include <absl/container/flat_hash_set.h>

namespace powlab::chain {

FeeDistribution FeeDistribution::exponential(double mean)
{
    if (!(mean > 0.0)) throw std::invalid_argument("FeeDistribution: exponential mean must be positive");
    return {Kind::Exponential, mean};
}

FeeDistribution FeeDistribution::flat(Amount fee)
{
    if (fee < 0) throw std::invalid_argument("FeeDistribution: flat fee must be non-negative");
    return {Kind::Flat, static_cast<double>(fee)};
}

Amount FeeDistribution::draw(sim::Rng& rng) const
{
    if (kind == Kind::Flat) return static_cast<Amount>(value);
    return static_cast<Amount>(std::llround(rng.exponential(value)));
}

Mempool::Mempool(std::size_t capacity, bool full_mode)
    : m_capacity(capacity), m_full_mode(full_mode)
{
    if (capacity == 0) throw std::invalid_argument("Mempool: capacity must be positive");
    m_pos.reserve(std::min<std::size_t>(capacity, 1u << 20));
}

bool Mempool::insert(const Transaction& tx)
{
    if (m_slots.size() >= m_capacity || contains(tx.id)) return false;
    if (tx.fee < 0) throw std::invalid_argument("Mempool::insert: negative fee");
    m_pos.emplace(tx.id, m_slots.size());
    m_slots.push_back(tx);
    m_by_fee.emplace(tx.fee, tx.id);
    m_total_fees += tx.fee;
    return true;
}

std::size_t Mempool::insert_batch(std::span<const Transaction> txs)
{
    std::size_t n = 0;
    for (const auto& tx : txs) {
        if (m_slots.size() >= m_capacity) break;
        if (insert(tx)) ++n;
    }
    return n;
}

void Mempool::remove_slot(std::size_t pos)
{
    const Transaction tx = m_slots[pos];
    m_by_fee.erase({tx.fee, tx.id});
    m_pos.erase(tx.id);
    m_total_fees -= tx.fee;
    if (pos + 1 != m_slots.size()) {
        m_slots[pos] = m_slots.back();
        m_pos[m_slots[pos].id] = pos;
    }
    m_slots.pop_back();
}

bool Mempool::erase(std::uint64_t id)
{
    auto it = m_pos.find(id);
    if (it == m_pos.end()) return false;
    remove_slot(it->second);
    return true;
}

std::size_t Mempool::erase_all(std::span<const Transaction> txs)
{
    std::size_t n = 0;
    for (const auto& tx : txs) n += erase(tx.id) ? 1 : 0;
    return n;
}

const Transaction& Mempool::max_fee() const
{
    if (m_by_fee.empty()) throw std::logic_error("Mempool::max_fee: empty pool");
    return m_slots[m_pos.at(m_by_fee.begin()->second)];
}

Transaction Mempool::extract_max()
{
    Transaction tx = max_fee();
    erase(tx.id);
    return tx;
}

Transaction Mempool::extract_random(sim::Rng& rng)
{
    if (m_slots.empty()) throw std::logic_error("Mempool::extract_random: empty pool");
    const std::size_t pos = rng.below(m_slots.size());
    Transaction tx = m_slots[pos];
    remove_slot(pos);
    return tx;
}

std::vector<Transaction> Mempool::top(std::size_t k) const
{
    std::vector<Transaction> out;
    out.reserve(std::min(k, m_slots.size()));
    for (auto it = m_by_fee.begin(); it != m_by_fee.end() && out.size() < k; ++it) {
        out.push_back(m_slots[m_pos.at(it->second)]);
    }
    return out;
}

std::vector<Transaction> Mempool::sample(std::size_t k, sim::Rng& rng) const
{
    const std::size_t n = m_slots.size();
    if (k >= n) return m_slots;
    // Floyd's algorithm: k distinct positions, O(k) draws.
    std::vector<std::size_t> picked;
    picked.reserve(k);
    absl::flat_hash_set<std::size_t> seen;
    seen.reserve(k * 2);
    for (std::size_t j = n - k; j < n; ++j) {
        std::size_t t = rng.below(j + 1);
        if (!seen.insert(t).second) {
            t = j;
            seen.insert(t);
        }
        picked.push_back(t);
    }
    std::vector<Transaction> out;
    out.reserve(k);
    for (std::size_t p : picked) out.push_back(m_slots[p]);
    return out;
}

std::vector<Transaction> make_transactions(sim::Rng& rng, std::size_t count, const FeeDistribution& fees,
                                           std::uint64_t& next_id, double created_at)
{
    std::vector<Transaction> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back({next_id++, fees.draw(rng), created_at});
    return out;
}

std::vector<Transaction> refill_mempool(Mempool& pool, sim::Rng& rng, std::size_t count,
                                        const FeeDistribution& fees, std::uint64_t& next_id, double now)
{
    const std::size_t n = pool.full_mode() ? pool.free_space() : std::min(count, pool.free_space());
    auto txs = make_transactions(rng, n, fees, next_id, now);
    pool.insert_batch(txs);
    return txs;
}

} // namespace powlab::chain
