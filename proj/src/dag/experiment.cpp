// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/dag/experiment.hpp>
#include <powlab/sim/event_queue.hpp>
#include <powlab/sim/lottery.hpp>

#include <algorithm>
#include <stdexcept>
#include <string>

namespace powlab::dag {

void DagConfig::validate() const
{
    if (!(block_time > 0.0)) throw std::invalid_argument("dag: block_time must be positive");
    if (block_capacity == 0) throw std::invalid_argument("dag: block_capacity must be positive");
    if (block_capacity > mempool_capacity) throw std::invalid_argument("dag: block_capacity exceeds mempool_capacity");
    if (!(refill_period > 0.0)) throw std::invalid_argument("dag: refill_period must be positive");
    if (discount != 1.0) throw std::invalid_argument("dag: discount is fixed at 1");
    if (nodes == 0) throw std::invalid_argument("dag: need at least one node");
    if (!(inter_node_delay > 0.0)) throw std::invalid_argument("dag: inter_node_delay must be positive");
}

namespace {

struct Payload {
    std::uint32_t block{0};
    std::uint32_t miner{0};
};

} // namespace

ExperimentResult run_dag_experiment(const DagConfig& config, std::span<const DagMinerSpec> miners, double duration,
                                    sim::Rng& rng, DagLedger* ledger_out)
{
    config.validate();
    if (miners.empty()) throw std::invalid_argument("dag: no miners");
    if (!(duration > 0.0)) throw std::invalid_argument("dag: duration must be positive");
    std::vector<double> powers;
    for (const auto& m : miners) {
        if (m.node >= config.nodes) throw std::invalid_argument("dag: miner node outside the topology");
        powers.push_back(m.power);
    }
    sim::validate_powers(powers);

    const auto topo = sim::Topology::ring(config.nodes, config.inter_node_delay);
    const sim::HashLottery lottery(std::span<const double>(powers), config.block_time);
    sim::Rng arrivals = rng.substream("arrivals");
    sim::Rng fee_rng = rng.substream("fees");
    std::vector<sim::Rng> select_rng;
    for (const auto& m : miners) select_rng.push_back(rng.substream("select/" + std::to_string(m.id)));

    std::vector<chain::Mempool> views(miners.size(), chain::Mempool(config.mempool_capacity));
    std::uint64_t next_tx = 0;
    {
        const auto initial = chain::make_transactions(fee_rng, config.mempool_capacity, config.fees, next_tx, 0.0);
        for (auto& v : views) v.insert_batch(initial);
    }

    std::vector<DagBlock> blocks;
    sim::EventQueue<Payload> queue;
    {
        const auto d = lottery.draw(arrivals);
        queue.schedule(d.dt, sim::EventKind::BlockFound, {0, static_cast<std::uint32_t>(d.winner)});
    }
    queue.schedule(config.refill_period, sim::EventKind::MempoolRefill, {});

    while (!queue.empty()) {
        const auto ev = queue.pop();
        if (ev.time > duration) break;
        switch (ev.kind) {
        case sim::EventKind::BlockFound: {
            const std::size_t i = ev.payload.miner;
            DagBlock b;
            b.id = blocks.size();
            b.miner = miners[i].id;
            b.created_at = ev.time;
            b.txs = miners[i].selection == Selection::Greedy
                        ? select_txs_greedy(views[i], config.block_capacity)
                        : select_txs_rts(views[i], config.block_capacity, select_rng[i]);
            views[i].erase_all(b.txs);
            const auto idx = static_cast<std::uint32_t>(blocks.size());
            blocks.push_back(std::move(b));
            for (std::size_t j = 0; j < miners.size(); ++j) {
                if (j == i) continue;
                const double delay = sim::propagation_delay(topo, miners[i].node, miners[j].node);
                queue.schedule(ev.time + delay, sim::EventKind::DeliverBlock, {idx, static_cast<std::uint32_t>(j)});
            }
            const auto d = lottery.draw(arrivals);
            queue.schedule(ev.time + d.dt, sim::EventKind::BlockFound, {0, static_cast<std::uint32_t>(d.winner)});
            break;
        }
        case sim::EventKind::DeliverBlock:
            views[ev.payload.miner].erase_all(blocks[ev.payload.block].txs);
            break;
        case sim::EventKind::MempoolRefill: {
            std::size_t deficit = 0;
            for (const auto& v : views) deficit = std::max(deficit, v.free_space());
            const std::size_t count = config.refill_count == 0 ? deficit : std::min(config.refill_count, deficit);
            const auto batch = chain::make_transactions(fee_rng, count, config.fees, next_tx, ev.time);
            for (auto& v : views) v.insert_batch(batch);
            queue.schedule(ev.time + config.refill_period, sim::EventKind::MempoolRefill, {});
            break;
        }
        default:
            throw std::logic_error("dag: unexpected event kind");
        }
    }

    DagLedger ledger;
    for (auto& b : blocks) ledger.add(std::move(b));

    ExperimentResult r;
    r.blocks = ledger.blocks().size();
    r.rewards = attribute_rewards(ledger);
    for (const auto& m : miners) r.rewards.emplace(m.id, 0);
    r.inclusions = ledger.inclusions();
    if (r.inclusions > 0) {
        r.collision = collision_rate(ledger);
        r.unique_inclusions = ledger.tx_first_inclusion().size();
        Amount total = 0;
        for (const auto& [id, a] : r.rewards) total += a;
        if (total > 0) r.profit = profit_factor(r.rewards, miners);
    }
    r.throughput_tps = static_cast<double>(r.unique_inclusions) / duration;
    if (ledger_out) *ledger_out = std::move(ledger);
    return r;
}

std::vector<DagMinerSpec> place_miners(std::vector<DagMinerSpec> miners, std::size_t nodes)
{
    for (std::size_t i = 0; i < miners.size(); ++i) miners[i].node = i * nodes / miners.size();
    return miners;
}

std::vector<DagMinerSpec> duel_miners(double alpha, std::size_t nodes)
{
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("duel_miners: alpha must lie in (0, 1)");
    return place_miners({{0, alpha, Selection::Greedy, 0}, {1, 1.0 - alpha, Selection::Rts, 0}}, nodes);
}

std::vector<DagMinerSpec> greedy_count_miners(std::size_t n_greedy, std::size_t nodes)
{
    if (n_greedy > 10) throw std::invalid_argument("greedy_count_miners: at most 10 greedy miners");
    std::vector<DagMinerSpec> out;
    for (std::size_t i = 0; i < 10; ++i) {
        out.push_back({static_cast<MinerId>(i), 0.1, i < n_greedy ? Selection::Greedy : Selection::Rts, 0});
    }
    return place_miners(std::move(out), nodes);
}

std::vector<DagMinerSpec> pool_duel_miners(double alpha, std::size_t nodes)
{
    if (!(alpha > 0.0 && alpha <= 0.5)) throw std::invalid_argument("pool_duel_miners: alpha must lie in (0, 0.5]");
    std::vector<DagMinerSpec> out{{0, alpha, Selection::Greedy, 0}, {1, alpha, Selection::Rts, 0}};
    const double rest = 1.0 - 2.0 * alpha;
    if (rest > 1e-12) {
        const std::size_t n_rest = nodes >= 4 ? nodes - 2 : 1;
        for (std::size_t i = 0; i < n_rest; ++i) {
            out.push_back({static_cast<MinerId>(2 + i), rest / static_cast<double>(n_rest), Selection::Rts, 0});
        }
    } else {
        out[1].power = 1.0 - alpha;
    }
    return place_miners(std::move(out), nodes);
}

} // namespace powlab::dag
