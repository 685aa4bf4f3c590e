// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_DAG_EXPERIMENT_HPP
#define POWLAB_DAG_EXPERIMENT_HPP

#include <powlab/dag/ledger.hpp>
#include <powlab/sim/topology.hpp>

#include <map>
#include <vector>

namespace powlab::dag {

struct DagConfig {
    double block_time{20.0};
    std::size_t block_capacity{100};
    std::size_t mempool_capacity{10000};
    double refill_period{60.0};
    /** Transactions per refill; 0 tops every view back up to capacity. */
    std::size_t refill_count{0};
    chain::FeeDistribution fees{chain::FeeDistribution::exponential(100.0)};
    /** The reward discount; fixed at 1. */
    double discount{1.0};
    std::size_t nodes{10};
    double inter_node_delay{1.0};

    /** Throws std::invalid_argument on a broken invariant. */
    void validate() const;
};

struct ExperimentResult {
    std::map<MinerId, Amount> rewards;
    std::map<MinerId, double> profit;
    double collision{0.0};
    /** Unique transactions confirmed per second. */
    double throughput_tps{0.0};
    std::size_t blocks{0};
    std::size_t inclusions{0};
    std::size_t unique_inclusions{0};
};

/**
 * Runs the abstracted DAG protocol for `duration` seconds on a ring. Blocks
 * arrive with mean interval block_time and the winner fills its block from
 * its own mempool view. Every view starts full and receives the same refill
 * batch every refill_period; a transaction leaves a view when a block that
 * includes it is delivered there. Rewards follow the first inclusion in the
 * total order. Throws std::invalid_argument on bad powers or config.
 */
ExperimentResult run_dag_experiment(const DagConfig& config, std::span<const DagMinerSpec> miners, double duration,
                                    sim::Rng& rng, DagLedger* ledger_out = nullptr);

/** Miners spread evenly over the ring: miner i sits on node floor(i * nodes / count). */
std::vector<DagMinerSpec> place_miners(std::vector<DagMinerSpec> miners, std::size_t nodes);

/** Experiment I: one greedy miner of power alpha against one honest miner. */
std::vector<DagMinerSpec> duel_miners(double alpha, std::size_t nodes);

/** Experiment II and IV: ten miners of 10% each, the first n_greedy of them greedy. */
std::vector<DagMinerSpec> greedy_count_miners(std::size_t n_greedy, std::size_t nodes);

/**
 * Experiment III: a greedy pool and an honest pool, both of power alpha,
 * plus honest miners sharing the rest.
 */
std::vector<DagMinerSpec> pool_duel_miners(double alpha, std::size_t nodes);

} // namespace powlab::dag

#endif // POWLAB_DAG_EXPERIMENT_HPP
