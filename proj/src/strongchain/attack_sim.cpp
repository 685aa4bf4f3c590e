// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/sim/event_queue.hpp>
#include <powlab/strongchain/attack_sim.hpp>

#include <deque>
#include <stdexcept>
#include <vector>

namespace powlab::strongchain {

namespace {

constexpr int kHonest = 0;
constexpr int kAttacker = 1;

struct Node {
    std::uint32_t parent{0};
    std::uint32_t height{0};
    std::uint8_t miner{0};
    bool published{true};
    /** Cumulative work from genesis. */
    double work{0.0};
    /** Weak headers included in this block, by coinbase. */
    std::uint64_t weak[2]{0, 0};
    /** Weak headers mined on top of this block, by miner. */
    std::uint64_t mined[2]{0, 0};
    /** Foreign weak headers on top of this block that reached each side. */
    std::uint64_t delivered[2]{0, 0};
    /** Attacker weak headers on top of this block that were held back. */
    std::uint64_t unsent{0};
};

struct WeakFlight {
    double arrival;
    std::uint32_t block;
    int to;
    std::uint64_t count;
};

struct Delivery {
    std::uint32_t block;
    int to;
};

class AttackRun
{
public:
    AttackRun(const AttackConfig& cfg, sim::Rng& rng)
        : m_cfg(cfg), m_rng(rng), m_strong(cfg.params.strong_work()), m_weak(cfg.params.weak_work())
    {
        m_nodes.push_back(Node{});
        m_nodes.reserve(cfg.blocks + 1);
    }

    AttackResult run();

private:
    bool selfish() const { return m_cfg.strategy == StrategyTag::Selfish; }
    std::uint64_t pending(int agent, std::uint32_t b) const
    {
        return m_nodes[b].mined[agent] + m_nodes[b].delivered[agent];
    }

    bool prefer(int agent, std::uint32_t cand, std::uint32_t cur) const;
    std::uint32_t fork_point(std::uint32_t a, std::uint32_t b) const;
    std::uint32_t unpublished(std::uint32_t tip) const;

    void drain_weak(double now);
    void hit(double now);
    void deliver(const Delivery& d, double now);
    void decide(Trigger trigger, double now);
    void publish_branch(std::uint32_t tip, double now);
    bool finalize(double now);

    const AttackConfig& m_cfg;
    sim::Rng& m_rng;
    double m_strong;
    double m_weak;
    std::vector<Node> m_nodes;
    std::uint32_t m_tip[2]{0, 0};
    /** Strongest public block the attacker knows of. */
    std::uint32_t m_public_best{0};
    sim::EventQueue<Delivery> m_queue;
    std::deque<WeakFlight> m_flights;
    std::uint64_t m_mined_blocks{0};
    std::uint64_t m_weak_mined{0};
};

bool AttackRun::prefer(int agent, std::uint32_t cand, std::uint32_t cur) const
{
    if (cand == cur) return false;
    const Node& x = m_nodes[cand];
    const Node& y = m_nodes[cur];
    if (x.height == y.height && x.parent == y.parent) {
        const double sx = x.work + static_cast<double>(pending(agent, cand)) * m_weak;
        const double sy = y.work + static_cast<double>(pending(agent, cur)) * m_weak;
        return sx > sy;
    }
    return x.work > y.work;
}

std::uint32_t AttackRun::fork_point(std::uint32_t a, std::uint32_t b) const
{
    while (m_nodes[a].height > m_nodes[b].height) a = m_nodes[a].parent;
    while (m_nodes[b].height > m_nodes[a].height) b = m_nodes[b].parent;
    while (a != b) {
        a = m_nodes[a].parent;
        b = m_nodes[b].parent;
    }
    return a;
}

std::uint32_t AttackRun::unpublished(std::uint32_t tip) const
{
    std::uint32_t n = 0;
    while (!m_nodes[tip].published) {
        ++n;
        tip = m_nodes[tip].parent;
    }
    return n;
}

void AttackRun::drain_weak(double now)
{
    while (!m_flights.empty() && m_flights.front().arrival <= now) {
        const auto& f = m_flights.front();
        m_nodes[f.block].delivered[f.to] += f.count;
        m_flights.pop_front();
    }
}

void AttackRun::hit(double now)
{
    const int m = m_rng.uniform() < m_cfg.alpha ? kAttacker : kHonest;
    const bool strong = m_rng.uniform() * m_cfg.params.ratio < 1.0;
    const std::uint32_t x = m_tip[m];

    if (!strong) {
        ++m_weak_mined;
        Node& n = m_nodes[x];
        ++n.mined[m];
        bool broadcast = true;
        if (m == kAttacker) {
            Observation obs;
            obs.trigger = Trigger::FoundWeak;
            obs.unpublished = n.published ? 0 : 1;
            obs.reward_work = m_strong;
            broadcast = strategy_step(m_cfg.strategy, obs).broadcast_weak;
        }
        if (broadcast) {
            m_flights.push_back({now + m_cfg.latency, x, 1 - m, 1});
        } else {
            ++n.unsent;
        }
        return;
    }

    ++m_mined_blocks;
    const Node& parent = m_nodes[x];
    const std::uint64_t foreign = parent.delivered[m];
    bool include = true;
    if (m == kAttacker) {
        Observation obs;
        obs.trigger = Trigger::AssembleBlock;
        obs.foreign_weak_work = static_cast<double>(foreign) * m_weak;
        obs.reward_work = m_strong;
        include = strategy_step(m_cfg.strategy, obs).include_foreign_weak;
    }
    Node b;
    b.parent = x;
    b.height = parent.height + 1;
    b.miner = static_cast<std::uint8_t>(m);
    b.weak[m] = parent.mined[m];
    b.weak[1 - m] = include ? foreign : 0;
    b.work = parent.work + m_strong + static_cast<double>(b.weak[0] + b.weak[1]) * m_weak;
    b.published = !(m == kAttacker && selfish());
    const auto id = static_cast<std::uint32_t>(m_nodes.size());
    m_nodes.push_back(b);
    m_tip[m] = id;

    if (m == kHonest) {
        m_queue.schedule(now + m_cfg.latency, sim::EventKind::DeliverBlock, {id, kAttacker});
    } else if (selfish()) {
        decide(Trigger::FoundBlock, now);
    } else {
        m_queue.schedule(now + m_cfg.latency, sim::EventKind::DeliverBlock, {id, kHonest});
    }
}

void AttackRun::deliver(const Delivery& d, double now)
{
    if (d.to == kHonest) {
        if (prefer(kHonest, d.block, m_tip[kHonest])) m_tip[kHonest] = d.block;
        return;
    }
    if (!selfish()) {
        if (prefer(kAttacker, d.block, m_tip[kAttacker])) m_tip[kAttacker] = d.block;
        return;
    }
    if (prefer(kAttacker, d.block, m_public_best)) m_public_best = d.block;
    decide(Trigger::ReceivedBlock, now);
}

void AttackRun::decide(Trigger trigger, double now)
{
    const std::uint32_t p = m_tip[kAttacker];
    const std::uint32_t q = m_public_best;
    if (p == q) return;
    const std::uint32_t f = fork_point(p, q);
    Observation obs;
    obs.trigger = trigger;
    obs.private_work = m_nodes[p].work - m_nodes[f].work;
    obs.public_work = m_nodes[q].work - m_nodes[f].work;
    obs.blocks_since_fork = m_nodes[p].height - m_nodes[f].height;
    obs.unpublished = unpublished(p);
    obs.reward_work = m_strong;
    const Actions act = strategy_step(StrategyTag::Selfish, obs);
    if (act.adopt) {
        m_tip[kAttacker] = q;
    } else if (act.publish) {
        publish_branch(p, now);
    }
}

void AttackRun::publish_branch(std::uint32_t tip, double now)
{
    std::vector<std::uint32_t> branch;
    for (std::uint32_t b = tip; !m_nodes[b].published; b = m_nodes[b].parent) branch.push_back(b);
    for (auto it = branch.rbegin(); it != branch.rend(); ++it) {
        Node& n = m_nodes[*it];
        n.published = true;
        m_queue.schedule(now + m_cfg.latency, sim::EventKind::DeliverBlock, {*it, kHonest});
        if (n.unsent > 0) {
            m_flights.push_back({now + m_cfg.latency, *it, kHonest, n.unsent});
            n.unsent = 0;
        }
        if (prefer(kAttacker, *it, m_public_best)) m_public_best = *it;
    }
}

bool AttackRun::finalize(double now)
{
    if (!selfish()) return false;
    const std::uint32_t p = m_tip[kAttacker];
    if (m_nodes[p].published) return false;
    const std::uint32_t f = fork_point(p, m_public_best);
    if (m_nodes[p].work - m_nodes[f].work > m_nodes[m_public_best].work - m_nodes[f].work) {
        publish_branch(p, now);
        return true;
    }
    return false;
}

AttackResult AttackRun::run()
{
    const double mean_hit = m_cfg.params.target_block_time / m_cfg.params.ratio;
    double now = 0.0;
    double next_hit = m_rng.exponential(mean_hit);
    while (m_mined_blocks < m_cfg.blocks) {
        while (!m_queue.empty() && m_queue.peek().time <= next_hit) {
            auto ev = m_queue.pop();
            now = ev.time;
            drain_weak(now);
            deliver(ev.payload, now);
        }
        now = next_hit;
        drain_weak(now);
        hit(now);
        next_hit = now + m_rng.exponential(mean_hit);
    }
    do {
        while (!m_queue.empty()) {
            auto ev = m_queue.pop();
            now = ev.time;
            drain_weak(now);
            deliver(ev.payload, now);
        }
    } while (finalize(now));

    AttackResult r;
    r.end_time = now;
    r.weak_headers_mined = m_weak_mined;
    const double weak_reward = m_cfg.params.weak_reward();
    for (std::uint32_t b = m_tip[kHonest]; b != 0; b = m_nodes[b].parent) {
        const Node& n = m_nodes[b];
        ++r.main_chain_blocks;
        const double strong = m_cfg.params.R;
        const double att = static_cast<double>(n.weak[kAttacker]) * weak_reward + (n.miner == kAttacker ? strong : 0.0);
        const double hon = static_cast<double>(n.weak[kHonest]) * weak_reward + (n.miner == kHonest ? strong : 0.0);
        r.attacker_reward += att;
        r.honest_reward += hon;
        r.attacker_weak_included += n.weak[kAttacker];
        r.honest_weak_included += n.weak[kHonest];
        if (n.miner == kAttacker) ++r.attacker_main_blocks;
    }
    r.orphaned_blocks = (m_nodes.size() - 1) - r.main_chain_blocks;
    const double total = r.attacker_reward + r.honest_reward;
    r.relative_payoff = total > 0.0 ? r.attacker_reward / total : 0.0;
    return r;
}

} // namespace

AttackResult simulate_attack(const AttackConfig& config, sim::Rng& rng)
{
    config.params.validate();
    if (!(config.alpha >= 0.0 && config.alpha <= 1.0)) throw std::invalid_argument("simulate_attack: alpha must lie in [0, 1]");
    if (!(config.latency >= 0.0)) throw std::invalid_argument("simulate_attack: latency must be non-negative");
    if (config.blocks == 0) throw std::invalid_argument("simulate_attack: blocks must be positive");
    AttackRun run(config, rng);
    return run.run();
}

} // namespace powlab::strongchain
