// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/feegame/exp3.hpp>
#include <powlab/feegame/game.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace powlab::feegame {

namespace {

constexpr std::size_t kMaxFrscs = 8;
constexpr std::int32_t kNoParent = -1;

struct Node {
    std::int32_t parent{kNoParent};
    std::uint32_t height{0};
    MinerId miner{0};
    bool preset{false};
    Amount claimed{0};
    Amount cum_claimed{0};
    Amount reward{0};
    Amount next_claim{0};
    std::array<Amount, kMaxFrscs> nu{};
};

Amount clamp_claim(Amount v, Amount cap) { return std::max<Amount>(0, std::min(v, cap)); }

std::string format_fraction(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

} // namespace

std::string UndercutStrategy::label() const
{
    switch (kind) {
    case UndercutKind::DefaultCompliant: return "default-compliant";
    case UndercutKind::PettyCompliant: return "petty-compliant";
    case UndercutKind::LazyFork: return "lazy-fork";
    case UndercutKind::FunctionFork: return "function-fork(" + format_fraction(x) + ")";
    }
    return "?";
}

MiningAction strategy_decide(const UndercutStrategy& strategy, std::span<const TipInfo> tips, Amount cap)
{
    if (tips.empty()) throw std::invalid_argument("strategy_decide: no tips");
    const TipInfo* rich = &tips[0];
    const TipInfo* fork = nullptr;
    for (const auto& t : tips) {
        if (t.available > rich->available) rich = &t;
        if (t.parent && (!fork || t.parent_available > fork->parent_available)) fork = &t;
    }
    switch (strategy.kind) {
    case UndercutKind::DefaultCompliant:
        return {false, tips[0].block, clamp_claim(tips[0].available, cap)};
    case UndercutKind::PettyCompliant:
        return {false, rich->block, clamp_claim(rich->available, cap)};
    case UndercutKind::LazyFork:
        if (!fork || 2 * rich->available >= fork->parent_available) {
            return {false, rich->block, clamp_claim(rich->available / 2, cap)};
        }
        return {true, *fork->parent, clamp_claim(fork->parent_available / 2, cap)};
    case UndercutKind::FunctionFork: {
        const Amount extend = clamp_claim(rich->available, cap);
        if (fork) {
            const auto take = static_cast<Amount>(static_cast<double>(fork->parent_available) * (1.0 - strategy.x));
            const Amount undercut = clamp_claim(take, cap);
            if (undercut > extend) return {true, *fork->parent, undercut};
        }
        return {false, rich->block, extend};
    }
    }
    throw std::logic_error("strategy_decide: unknown strategy");
}

GameConfig GameConfig::reduced()
{
    GameConfig c;
    c.n_miners = 20;
    c.blocks_per_game = 1000;
    c.n_games = 10000;
    return c;
}

void GameConfig::validate() const
{
    if (n_miners < 1) throw std::invalid_argument("n_miners: must be at least 1");
    if (blocks_per_game < 1) throw std::invalid_argument("blocks_per_game: must be at least 1");
    if (n_games < 1) throw std::invalid_argument("n_games: must be at least 1");
    if (fee_inflow < 0) throw std::invalid_argument("fee_inflow: must be non-negative");
    if (!(inflow_period > 0.0)) throw std::invalid_argument("inflow_period: must be positive");
    if (!(block_time > 0.0)) throw std::invalid_argument("block_time: must be positive");
    if (!(cdep >= 0.0 && cdep <= 1.0)) throw std::invalid_argument("cdep: must lie in [0, 1]");
    if (!(dc_fraction >= 0.0 && dc_fraction <= 1.0)) throw std::invalid_argument("dc_fraction: must lie in [0, 1]");
    if (frscs.size() > kMaxFrscs) throw std::invalid_argument("frscs: at most 8 contracts");
    if (cdep > 0.0 && frscs.empty()) throw std::invalid_argument("frscs: needed when cdep > 0");
    frsc_configs(frscs);
    for (double x : function_fork_x) {
        if (!(x >= 0.0 && x < 1.0)) throw std::invalid_argument("function_fork_x: must lie in [0, 1)");
    }
    if (!(exploration > 0.0 && exploration <= 1.0)) throw std::invalid_argument("exploration: must lie in (0, 1]");
    if (!(tail_fraction > 0.0 && tail_fraction <= 1.0)) throw std::invalid_argument("tail_fraction: must lie in (0, 1]");
    if (!(significance > 0.0 && significance < 1.0)) throw std::invalid_argument("significance: must lie in (0, 1)");
    if (bootstrap_resamples < 1) throw std::invalid_argument("bootstrap_resamples: must be at least 1");
}

std::vector<UndercutStrategy> GameConfig::strategies() const
{
    std::vector<UndercutStrategy> s{{UndercutKind::DefaultCompliant, 0.0},
                                    {UndercutKind::PettyCompliant, 0.0},
                                    {UndercutKind::LazyFork, 0.5}};
    for (double x : function_fork_x) s.push_back({UndercutKind::FunctionFork, x});
    return s;
}

std::vector<FrscState> GameConfig::genesis_frscs(double orphan_rate) const
{
    if (cdep == 0.0) return {};
    using A = FrscArith<Amount>;
    const auto per_block = static_cast<Amount>(static_cast<double>(fee_inflow) * block_time / inflow_period);
    const auto configs = frsc_configs(frscs);
    auto out = init_frscs<Amount>(per_block, A::fraction(cdep), configs);
    if (orphan_rate > 0.0) {
        for (auto& f : out) f.nu = static_cast<Amount>(static_cast<double>(f.nu) * (1.0 + orphan_rate));
    }
    return out;
}

Amount GameConfig::claim_cap() const
{
    if (!full_mempool) return kNoClaimCap;
    return static_cast<Amount>(static_cast<double>(fee_inflow) * block_time / inflow_period);
}

GameOutcome play_game(const GameConfig& config, std::span<const UndercutStrategy> miners,
                      std::span<const FrscState> genesis, sim::Rng& rng, std::span<const PresetBlock> prefix,
                      Amount initial_mempool, std::vector<FrscTraceRow>* trace)
{
    if (miners.empty()) throw std::invalid_argument("play_game: no miners");
    if (genesis.size() > kMaxFrscs) throw std::invalid_argument("play_game: too many contracts");
    const std::size_t k = genesis.size();
    std::vector<FrscState> contracts(genesis.begin(), genesis.end());
    const FeeSplit split = FeeSplit::from_deposit(k == 0 ? 0 : FrscArith<Amount>::fraction(config.cdep));
    const Amount cap = config.claim_cap();
    const double rate = static_cast<double>(config.fee_inflow) / config.inflow_period;

    std::vector<Node> nodes;
    nodes.reserve(config.blocks_per_game + prefix.size() + 1);
    Node root;
    for (std::size_t i = 0; i < k; ++i) root.nu[i] = genesis[i].nu;
    nodes.push_back(root);

    GameOutcome out;
    auto add_block = [&](std::size_t parent, MinerId miner, Amount claim, bool preset) {
        const Node& p = nodes[parent];
        Node n;
        n.parent = static_cast<std::int32_t>(parent);
        n.height = p.height + 1;
        n.miner = miner;
        n.preset = preset;
        n.claimed = claim;
        n.cum_claimed = p.cum_claimed + claim;
        Amount before = claim;
        for (std::size_t i = 0; i < k; ++i) {
            contracts[i].nu = p.nu[i];
            before += p.nu[i];
        }
        const auto o = apply_block<Amount>(contracts, claim, split);
        n.reward = o.reward_total;
        n.next_claim = o.claim;
        Amount after = o.reward_total;
        bool negative = false;
        for (std::size_t i = 0; i < k; ++i) {
            n.nu[i] = contracts[i].nu;
            after += n.nu[i];
            negative = negative || n.nu[i] < 0;
        }
        if (after != before || negative) ++out.conservation_violations;
        nodes.push_back(n);
        return nodes.size() - 1;
    };

    std::vector<std::size_t> tips{0};
    for (const auto& pb : prefix) {
        if (pb.miner >= miners.size()) throw std::invalid_argument("play_game: preset miner out of range");
        tips = {add_block(tips.front(), pb.miner, pb.claim, true)};
    }

    double now = 0.0;
    std::vector<TipInfo> view;
    for (std::size_t b = 0; b < config.blocks_per_game; ++b) {
        now += rng.exponential(config.block_time);
        const auto miner = static_cast<MinerId>(rng.below(miners.size()));
        const Amount pool = initial_mempool + static_cast<Amount>(rate * now);
        view.clear();
        for (std::size_t t : tips) {
            const Node& n = nodes[t];
            TipInfo info{t, pool - n.cum_claimed, std::nullopt, 0};
            if (n.parent != kNoParent) {
                info.parent = static_cast<std::size_t>(n.parent);
                info.parent_available = pool - nodes[info.parent.value()].cum_claimed;
            }
            view.push_back(info);
        }
        const auto action = strategy_decide(miners[miner], view, cap);
        const std::size_t id = add_block(action.parent, miner, action.claim, false);
        if (action.undercut) ++out.undercuts;
        if (nodes[id].height > nodes[tips.front()].height) {
            tips.assign(1, id);
        } else {
            tips.push_back(id);
        }
    }

    out.profit.assign(miners.size(), 0);
    out.blocks = config.blocks_per_game;
    std::vector<std::size_t> chain;
    for (auto at = static_cast<std::int32_t>(tips.front()); at > 0; at = nodes[at].parent) {
        const Node& n = nodes[at];
        out.profit[n.miner] += n.reward;
        out.main_chain_value += n.reward;
        if (!n.preset) ++out.main_blocks;
        chain.push_back(static_cast<std::size_t>(at));
    }
    out.orphan_rate = 1.0 - static_cast<double>(out.main_blocks) / static_cast<double>(out.blocks);
    if (trace) {
        trace->clear();
        for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
            const Node& n = nodes[*it];
            trace->push_back({n.height, n.claimed, n.next_claim, n.reward, {n.nu.begin(), n.nu.begin() + k}});
        }
    }
    return out;
}

double bootstrap_share_positive(std::span<const double> values, std::size_t resamples, sim::Rng& rng)
{
    if (values.empty()) return 0.0;
    std::size_t above = 0;
    for (std::size_t r = 0; r < resamples; ++r) {
        double sum = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) sum += values[rng.below(values.size())];
        if (sum > 0.0) ++above;
    }
    return static_cast<double>(above) / static_cast<double>(resamples);
}

GameResult run_fee_game(const GameConfig& config, sim::Rng& rng)
{
    config.validate();
    const auto strategies = config.strategies();
    const std::size_t n = config.n_miners;
    const std::size_t n_dc = std::min(n, static_cast<std::size_t>(std::llround(config.dc_fraction * n)));
    const std::size_t arms = strategies.size() - 1;
    std::vector<Exp3> learners(n - n_dc, Exp3(arms, config.exploration));

    GameResult result;
    for (const auto& s : strategies) result.labels.push_back(s.label());
    result.games.reserve(config.n_games);

    std::vector<UndercutStrategy> assigned(n, strategies[0]);
    std::vector<std::size_t> choice(n, 0);
    double orphan_prev = 0.0;
    for (std::size_t g = 0; g < config.n_games; ++g) {
        GameRecord rec;
        double forking = 0.0;
        for (std::size_t i = n_dc; i < n; ++i) {
            const auto& l = learners[i - n_dc];
            const auto p = l.probabilities();
            for (std::size_t a = 0; a < arms; ++a) {
                if (strategies[a + 1].forks()) forking += p[a];
            }
            choice[i] = 1 + l.choose(rng);
            assigned[i] = strategies[choice[i]];
        }
        rec.forking_share = learners.empty() ? 0.0 : forking / static_cast<double>(learners.size());

        const auto genesis = config.genesis_frscs(config.orphan_compensation ? orphan_prev : 0.0);
        const bool last = g + 1 == config.n_games;
        const auto outcome = play_game(config, assigned, genesis, rng, {}, 0, last ? &result.trace : nullptr);
        result.conservation_violations += outcome.conservation_violations;
        orphan_prev = outcome.orphan_rate;

        rec.orphan_rate = outcome.orphan_rate;
        rec.main_chain_value = outcome.main_chain_value;
        rec.profit.assign(strategies.size(), 0.0);
        rec.plays.assign(strategies.size(), 0);
        const double fair = static_cast<double>(outcome.main_chain_value) / static_cast<double>(n);
        Amount best = 0;
        for (std::size_t i = 0; i < n; ++i) {
            best = std::max(best, outcome.profit[i]);
            rec.profit[choice[i]] += fair > 0.0 ? static_cast<double>(outcome.profit[i]) / fair : 0.0;
            ++rec.plays[choice[i]];
        }
        for (std::size_t s = 0; s < strategies.size(); ++s) {
            rec.profit[s] = rec.plays[s] ? rec.profit[s] / static_cast<double>(rec.plays[s]) : std::nan("");
        }
        for (std::size_t i = n_dc; i < n; ++i) {
            const double x = best > 0 ? static_cast<double>(outcome.profit[i]) / static_cast<double>(best) : 0.0;
            learners[i - n_dc].update(choice[i] - 1, x);
        }
        result.games.push_back(std::move(rec));
    }

    const std::size_t tail = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::ceil(config.tail_fraction * static_cast<double>(config.n_games))));
    const std::size_t first = config.n_games - tail;
    result.tail_profit.assign(strategies.size(), 0.0);
    std::vector<std::size_t> tail_plays(strategies.size(), 0);
    for (std::size_t g = first; g < config.n_games; ++g) {
        const auto& rec = result.games[g];
        result.tail_orphan_rate += rec.orphan_rate / static_cast<double>(tail);
        result.tail_forking_share += rec.forking_share / static_cast<double>(tail);
        double fork_sum = 0.0;
        std::size_t fork_plays = 0;
        for (std::size_t s = 0; s < strategies.size(); ++s) {
            if (!rec.plays[s]) continue;
            result.tail_profit[s] += rec.profit[s] * static_cast<double>(rec.plays[s]);
            tail_plays[s] += rec.plays[s];
            if (strategies[s].forks()) {
                fork_sum += rec.profit[s] * static_cast<double>(rec.plays[s]);
                fork_plays += rec.plays[s];
            }
        }
        // Reference is default-compliant; with no such miner it is petty-compliant.
        const std::size_t ref = rec.plays[0] ? 0 : 1;
        if (fork_plays && rec.plays[ref]) {
            result.tail_margins.push_back(fork_sum / static_cast<double>(fork_plays) - rec.profit[ref]);
        }
    }
    for (std::size_t s = 0; s < strategies.size(); ++s) {
        result.tail_profit[s] = tail_plays[s] ? result.tail_profit[s] / static_cast<double>(tail_plays[s])
                                              : std::nan("");
    }
    result.longest_chain_value = result.games.back().main_chain_value;
    auto boot = rng.substream("bootstrap");
    result.p_forking_higher = bootstrap_share_positive(result.tail_margins, config.bootstrap_resamples, boot);
    result.dc_profitability_flag = result.p_forking_higher < config.significance;
    return result;
}

sim::Rng threshold_run_rng(const sim::Rng& rng, double dc_fraction, std::size_t seed)
{
    return rng.substream("dc/" + format_fraction(dc_fraction) + "/seed/" + std::to_string(seed));
}

void judge_threshold_point(ThresholdPoint& point, const GameConfig& base, const sim::Rng& rng)
{
    std::vector<double> margins;
    for (const auto& run : point.runs) margins.insert(margins.end(), run.tail_margins.begin(), run.tail_margins.end());
    auto boot = rng.substream("bootstrap/" + format_fraction(point.dc_fraction));
    point.p_forking_higher = bootstrap_share_positive(margins, base.bootstrap_resamples, boot);
    point.qualified = point.p_forking_higher < base.significance;
}

ThresholdResult find_dc_threshold(const GameConfig& base, std::span<const double> grid, const sim::Rng& rng,
                                  std::size_t seeds, bool stop_early)
{
    if (!std::is_sorted(grid.begin(), grid.end())) throw std::invalid_argument("grid: must be sorted ascending");
    if (seeds < 1) throw std::invalid_argument("seeds: must be at least 1");
    ThresholdResult out;
    for (double v : grid) {
        GameConfig cfg = base;
        cfg.dc_fraction = v;
        ThresholdPoint point;
        point.dc_fraction = v;
        for (std::size_t s = 0; s < seeds; ++s) {
            auto r = threshold_run_rng(rng, v, s);
            point.runs.push_back(run_fee_game(cfg, r));
        }
        judge_threshold_point(point, base, rng);
        const bool hit = point.qualified && !out.threshold;
        if (hit) out.threshold = v;
        out.points.push_back(std::move(point));
        if (hit && stop_early) break;
    }
    return out;
}

} // namespace powlab::feegame
