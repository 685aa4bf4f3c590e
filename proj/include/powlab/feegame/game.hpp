// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_FEEGAME_GAME_HPP
#define POWLAB_FEEGAME_GAME_HPP

#include <powlab/feegame/frsc.hpp>
#include <powlab/sim/lottery.hpp>
#include <powlab/sim/rng.hpp>

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace powlab::feegame {

enum class UndercutKind { DefaultCompliant, PettyCompliant, LazyFork, FunctionFork };

struct UndercutStrategy {
    UndercutKind kind{UndercutKind::DefaultCompliant};
    /** Function-fork only: fraction of the undercut block's fees left unclaimed. */
    double x{0.5};

    bool forks() const { return kind == UndercutKind::LazyFork || kind == UndercutKind::FunctionFork; }
    std::string label() const;
};

/** One tip at the current maximal height, in creation order. */
struct TipInfo {
    std::size_t block{0};
    /** Fees still unclaimed when extending this tip. */
    Amount available{0};
    /** Parent block, absent for genesis. */
    std::optional<std::size_t> parent;
    Amount parent_available{0};
};

struct MiningAction {
    bool undercut{false};
    /** Block to mine on. */
    std::size_t parent{0};
    Amount claim{0};
};

constexpr Amount kNoClaimCap = std::numeric_limits<Amount>::max();

/**
 * Chooses where to mine and how much to claim. `tips` lists the tips of
 * maximal height, oldest first, and must not be empty.
 *  - default-compliant extends the oldest tip and claims everything;
 *  - petty-compliant extends the tip with the richest mempool;
 *  - lazy-fork extends the richest tip when its fees are worth at least
 *    half of the undercut pool, otherwise undercuts; it claims half either way;
 *  - function-fork(x) undercuts whenever (1 - x) of the undercut pool beats
 *    extending, claiming that, and otherwise extends claiming everything.
 * The undercut pool is the richest parent of a maximal tip. Claims never
 * exceed `cap`.
 */
MiningAction strategy_decide(const UndercutStrategy& strategy, std::span<const TipInfo> tips,
                             Amount cap = kNoClaimCap);

struct GameConfig {
    std::size_t n_miners{100};
    std::size_t blocks_per_game{10000};
    std::size_t n_games{300000};
    /** Tokens flowing into the mempool per inflow_period seconds. */
    Amount fee_inflow{5'000'000'000};
    double inflow_period{600.0};
    double block_time{600.0};
    /** Caps one block's claim at the inflow of one block interval. */
    bool full_mempool{false};
    /** Contract fraction of fees; the miner keeps 1 - cdep instantly. */
    double cdep{0.0};
    /** (lambda, rho) of every contract; ignored when cdep is 0. */
    std::vector<std::pair<std::int64_t, double>> frscs{{2016, 1.0}};
    double dc_fraction{0.0};
    bool orphan_compensation{true};
    std::vector<double> function_fork_x{0.25, 0.5, 0.75};
    double exploration{0.05};
    /** Share of the final games used to judge profitability. */
    double tail_fraction{0.1};
    double significance{0.95};
    std::size_t bootstrap_resamples{2000};

    /** 20 miners, 10^3 blocks per game, 10^4 games. */
    static GameConfig reduced();
    /** Throws std::invalid_argument naming the offending field. */
    void validate() const;

    /** Strategy 0 is default-compliant; the rest are the learning arms. */
    std::vector<UndercutStrategy> strategies() const;
    /** Genesis contract state, scaled by 1 + orphan_rate. */
    std::vector<FrscState> genesis_frscs(double orphan_rate = 0.0) const;
    Amount claim_cap() const;
};

struct FrscTraceRow {
    std::size_t height{0};
    Amount fees{0};
    Amount next_claim{0};
    Amount reward_total{0};
    std::vector<Amount> nu;
};

struct PresetBlock {
    MinerId miner{0};
    Amount claim{0};
};

struct GameOutcome {
    /** Per-miner reward on the final longest chain. */
    std::vector<Amount> profit;
    Amount main_chain_value{0};
    std::size_t blocks{0};
    std::size_t main_blocks{0};
    double orphan_rate{0.0};
    std::size_t undercuts{0};
    /** Blocks where rewardT + sum(nu') != sum(nu) + fees or some nu < 0. */
    std::size_t conservation_violations{0};
};

/**
 * One game of blocks_per_game blocks with zero latency and equal powers.
 * `prefix` blocks are chained on genesis before the game starts (not counted
 * in blocks) and `initial_mempool` tokens are waiting at time 0. When `trace`
 * is set it receives the contract state along the final longest chain.
 */
GameOutcome play_game(const GameConfig& config, std::span<const UndercutStrategy> miners,
                      std::span<const FrscState> genesis, sim::Rng& rng, std::span<const PresetBlock> prefix = {},
                      Amount initial_mempool = 0, std::vector<FrscTraceRow>* trace = nullptr);

struct GameRecord {
    double orphan_rate{0.0};
    Amount main_chain_value{0};
    /** Mean profit relative to the fair share, per strategy; NaN when unplayed. */
    std::vector<double> profit;
    std::vector<std::size_t> plays;
    /** Learners' mean probability on forking arms before the game. */
    double forking_share{0.0};
};

struct GameResult {
    std::vector<std::string> labels;
    std::vector<GameRecord> games;
    /** Means over the tail games. */
    std::vector<double> tail_profit;
    double tail_orphan_rate{0.0};
    double tail_forking_share{0.0};
    Amount longest_chain_value{0};
    /** Per tail game: forking profit minus compliant profit. */
    std::vector<double> tail_margins;
    /** Default-compliant is not beaten significantly by forking in the tail. */
    bool dc_profitability_flag{false};
    double p_forking_higher{0.0};
    std::size_t conservation_violations{0};
    std::vector<FrscTraceRow> trace;
};

/** The learning simulation: n_games sequential games sharing exp3 state. */
GameResult run_fee_game(const GameConfig& config, sim::Rng& rng);

/** Bootstrap share of resampled means that are above zero. */
double bootstrap_share_positive(std::span<const double> values, std::size_t resamples, sim::Rng& rng);

struct ThresholdPoint {
    double dc_fraction{0.0};
    bool qualified{false};
    double p_forking_higher{0.0};
    std::vector<GameResult> runs;
};

struct ThresholdResult {
    /** Absent when no grid value qualifies ("above grid max"). */
    std::optional<double> threshold;
    std::vector<ThresholdPoint> points;
};

/** Stream of run `seed` at grid value `dc_fraction`. */
sim::Rng threshold_run_rng(const sim::Rng& rng, double dc_fraction, std::size_t seed);

/** Pools the tail margins of point.runs and sets qualified and p_forking_higher. */
void judge_threshold_point(ThresholdPoint& point, const GameConfig& base, const sim::Rng& rng);

/**
 * Smallest grid value at which forking does not earn significantly more
 * than default-compliant mining over the tail games pooled across `seeds`
 * runs. With stop_early the search ends at the first qualifying value.
 */
ThresholdResult find_dc_threshold(const GameConfig& base, std::span<const double> grid, const sim::Rng& rng,
                                  std::size_t seeds = 1, bool stop_early = true);

} // namespace powlab::feegame

#endif // POWLAB_FEEGAME_GAME_HPP
