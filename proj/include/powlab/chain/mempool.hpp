// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_CHAIN_MEMPOOL_HPP
#define POWLAB_CHAIN_MEMPOOL_HPP

#include <powlab/chain/types.hpp>
#include <powlab/sim/rng.hpp>

#include <absl/container/btree_set.h>
#include <absl/container/flat_hash_map.h>

#include <span>
#include <utility>
#include <vector>

namespace powlab::chain {

/** Fee model for fresh transactions. */
struct FeeDistribution {
    enum class Kind { Exponential, Flat };

    Kind kind{Kind::Exponential};
    /** Mean for Exponential, the constant fee for Flat. */
    double value{100.0};

    static FeeDistribution exponential(double mean);
    static FeeDistribution flat(Amount fee);

    /** Exponential draws are rounded to the nearest satoshi. */
    Amount draw(sim::Rng& rng) const;
};

/**
 * Bounded transaction pool. Keeps a fee index (fee descending, id ascending)
 * for O(log n) max extraction and a dense slot array for O(1) uniform picks.
 */
class Mempool
{
public:
    explicit Mempool(std::size_t capacity, bool full_mode = false);

    std::size_t size() const { return m_slots.size(); }
    bool empty() const { return m_slots.empty(); }
    std::size_t capacity() const { return m_capacity; }
    std::size_t free_space() const { return m_capacity - m_slots.size(); }
    bool full_mode() const { return m_full_mode; }

    bool contains(std::uint64_t id) const { return m_pos.count(id) != 0; }

    /** False if the pool is full or the id is present. */
    bool insert(const Transaction& tx);
    /** Inserts a prefix of `txs` until the pool is full; returns the count inserted. */
    std::size_t insert_batch(std::span<const Transaction> txs);
    bool erase(std::uint64_t id);
    std::size_t erase_all(std::span<const Transaction> txs);

    const Transaction& max_fee() const;
    Transaction extract_max();
    Transaction extract_random(sim::Rng& rng);

    /** Highest `k` fees (ties by ascending id) without removal. */
    std::vector<Transaction> top(std::size_t k) const;
    /** Uniform sample of min(k, size) distinct transactions without removal. */
    std::vector<Transaction> sample(std::size_t k, sim::Rng& rng) const;

    Amount total_fees() const { return m_total_fees; }
    const std::vector<Transaction>& transactions() const { return m_slots; }

private:
    struct FeeOrder {
        bool operator()(const std::pair<Amount, std::uint64_t>& a,
                        const std::pair<Amount, std::uint64_t>& b) const
        {
            if (a.first != b.first) return a.first > b.first;
            return a.second < b.second;
        }
    };

    void remove_slot(std::size_t pos);

    std::size_t m_capacity;
    bool m_full_mode;
    std::vector<Transaction> m_slots;
    absl::flat_hash_map<std::uint64_t, std::size_t> m_pos;
    absl::btree_set<std::pair<Amount, std::uint64_t>, FeeOrder> m_by_fee;
    Amount m_total_fees{0};
};

/** Generates transactions with consecutive ids starting at `next_id`, which is advanced. */
std::vector<Transaction> make_transactions(sim::Rng& rng, std::size_t count, const FeeDistribution& fees,
                                           std::uint64_t& next_id, double created_at);

/**
 * Inserts min(count, capacity - size) fresh transactions. In full mode the
 * pool is topped up to capacity regardless of `count`. Returns the new txs.
 */
std::vector<Transaction> refill_mempool(Mempool& pool, sim::Rng& rng, std::size_t count,
                                        const FeeDistribution& fees, std::uint64_t& next_id, double now);

} // namespace powlab::chain

#endif // POWLAB_CHAIN_MEMPOOL_HPP
