// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_DAG_LEDGER_HPP
#define POWLAB_DAG_LEDGER_HPP

#include <powlab/chain/mempool.hpp>
#include <powlab/sim/rng.hpp>

#include <map>
#include <span>
#include <unordered_map>
#include <vector>

namespace powlab::dag {

enum class Selection { Rts, Greedy };

const char* to_string(Selection s);
/** "rts"/"honest" or "greedy"; throws std::invalid_argument otherwise. */
Selection parse_selection(std::string_view name);

struct DagMinerSpec {
    MinerId id{0};
    double power{0.0};
    Selection selection{Selection::Rts};
    std::size_t node{0};
};

struct DagBlock {
    std::uint64_t id{0};
    MinerId miner{0};
    double created_at{0.0};
    std::vector<chain::Transaction> txs;
};

/**
 * Blocks in the deterministic total order: by creation time, then block id.
 * tx_first_inclusion maps each tx id to the position of the first block that
 * contains it.
 */
class DagLedger
{
public:
    /** Inserts at the position given by (created_at, id). */
    void add(DagBlock block);

    const std::vector<DagBlock>& blocks() const { return m_blocks; }
    std::unordered_map<std::uint64_t, std::size_t> tx_first_inclusion() const;
    std::size_t inclusions() const;

private:
    std::vector<DagBlock> m_blocks;
};

/** Uniform sample without replacement of min(capacity, |pool|) txs; the pool is left intact. */
std::vector<chain::Transaction> select_txs_rts(const chain::Mempool& pool, std::size_t capacity, sim::Rng& rng);

/** Highest fees first, ties by ascending id; the pool is left intact. */
std::vector<chain::Transaction> select_txs_greedy(const chain::Mempool& pool, std::size_t capacity);

/** Each fee is credited once, to the miner of the first block containing the tx. */
std::map<MinerId, Amount> attribute_rewards(const DagLedger& ledger);

/**
 * (reward share) / power for every miner in `miners`. Throws
 * std::invalid_argument if the total reward is zero or a power is not positive.
 */
std::map<MinerId, double> profit_factor(const std::map<MinerId, Amount>& rewards,
                                        std::span<const DagMinerSpec> miners);

/** Duplicate inclusions over all inclusions. Throws std::invalid_argument on a ledger without inclusions. */
double collision_rate(const DagLedger& ledger);

} // namespace powlab::dag

#endif // POWLAB_DAG_LEDGER_HPP
