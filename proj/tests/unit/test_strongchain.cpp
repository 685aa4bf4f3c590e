// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/strongchain/attack_sim.hpp>
#include <powlab/strongchain/pool_variance.hpp>
#include <powlab/strongchain/protocol.hpp>
#include <powlab/strongchain/strategy.hpp>

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace powlab;
using namespace powlab::strongchain;

namespace {

chain::Block make_block(double T_s, std::size_t n_weak, MinerId miner = 1, double ts = 0.0,
                        const chain::Digest& parent = {})
{
    chain::Block b;
    b.header.prev_hash = parent;
    b.header.target = T_s;
    b.header.coinbase = miner;
    b.header.timestamp = ts;
    for (std::size_t i = 0; i < n_weak; ++i) {
        chain::BlockHeader w = b.header;
        w.nonce = i + 1;
        b.weak_headers.push_back(w);
    }
    chain::seal(b);
    return b;
}

StrongchainParams params_with(double T_s, double ratio)
{
    return StrongchainParams::with_ratio(ratio, T_s);
}

} // namespace

TEST_CASE("params validation")
{
    CHECK_THROWS_AS(StrongchainParams::with_ratio(0.5, 0.01), std::invalid_argument);
    CHECK_THROWS_AS(StrongchainParams::with_ratio(4.0, 0.01, 2.0, 0.0), std::invalid_argument);
    auto p = StrongchainParams::with_ratio(1024.0, 1.0 / 4096);
    CHECK(p.gamma == 10.0);
    CHECK(p.T_w == p.T_s * 1024.0);
}

TEST_CASE("chain_pow closed forms")
{
    auto p = params_with(1.0, 1.0);
    ChainView empty;
    CHECK(chain_pow(empty, p) == 0.0);

    ChainView one;
    one.blocks.push_back(make_block(1.0, 0));
    CHECK(chain_pow(one, p) == 1.0);

    auto q = params_with(0.25, 2.0);
    ChainView two_weak;
    two_weak.blocks.push_back(make_block(0.25, 2));
    CHECK(chain_pow(two_weak, q) == 8.0);
}

TEST_CASE("chain_pow is additive")
{
    sim::Rng rng(5, "pow-additive");
    for (int trial = 0; trial < 200; ++trial) {
        const double ratio = std::pow(2.0, static_cast<double>(rng.below(11)));
        const double T_s = 1.0 / std::pow(2.0, static_cast<double>(11 + rng.below(10)));
        auto p = params_with(T_s, ratio);
        std::vector<BlockSummary> blocks;
        for (int i = 0; i < 5; ++i) {
            BlockSummary s;
            s.T_s = T_s;
            s.T_w = T_s * ratio;
            s.weak.add(1, rng.below(50));
            blocks.push_back(s);
        }
        const double before = chain_pow(std::span<const BlockSummary>(blocks).first(4), p.T_max);
        const double after = chain_pow(blocks, p.T_max);
        const double expected = p.T_max / T_s + static_cast<double>(blocks[4].weak.total) * p.T_max / (T_s * ratio);
        CHECK(after - before == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("fork_choice rules")
{
    auto p = params_with(1.0 / 64, 8.0);
    const chain::Digest parent = chain::sha256("parent");

    ChainView b;
    b.blocks.push_back(make_block(p.T_s, 3, 1, 0.0, parent));
    b.pending_weak.resize(2);
    ChainView b2;
    b2.blocks.push_back(make_block(p.T_s, 4, 2, 0.0, parent));
    std::vector<ChainView> cands{b2, b};
    CHECK(fork_choice(cands, p) == 1);

    // Not a single-block fork at equal height: pending weak headers do not count.
    ChainView longer;
    longer.blocks.push_back(make_block(p.T_s, 0, 1, 0.0, parent));
    longer.blocks.push_back(make_block(p.T_s, 0, 1, 0.0, chain::header_hash(longer.blocks[0].header)));
    ChainView shorter;
    shorter.blocks.push_back(make_block(p.T_s, 7, 2, 0.0, parent));
    shorter.pending_weak.resize(50);
    std::vector<ChainView> c2{shorter, longer};
    CHECK(chain_pow(longer, p) > chain_pow(shorter, p));
    CHECK(fork_choice(c2, p) == 1);

    std::vector<ChainView> same{b, b};
    CHECK(fork_choice(same, p) == 0);

    CHECK_THROWS_AS(fork_choice(std::span<const ChainView>(), p), std::invalid_argument);
}

TEST_CASE("fork_choice is invariant under scaling of T_max")
{
    sim::Rng rng(8, "scale");
    const chain::Digest parent = chain::sha256("p");
    for (int trial = 0; trial < 100; ++trial) {
        auto p = params_with(1.0 / 1024, 16.0);
        std::vector<ChainView> cands;
        const auto n = 2 + rng.below(4);
        for (std::uint64_t i = 0; i < n; ++i) {
            ChainView v;
            chain::Digest prev = parent;
            const auto len = 1 + rng.below(3);
            for (std::uint64_t k = 0; k < len; ++k) {
                v.blocks.push_back(make_block(p.T_s, rng.below(20), 1, 0.0, prev));
                prev = chain::header_hash(v.blocks.back().header);
            }
            v.pending_weak.resize(rng.below(20));
            cands.push_back(v);
        }
        const auto choice = fork_choice(cands, p);
        auto scaled = p;
        scaled.T_max = 1024.0;
        CHECK(fork_choice(cands, scaled) == choice);
    }
}

TEST_CASE("reward_block closed forms")
{
    auto p = StrongchainParams::with_ratio(1024.0, 1.0 / 4096, 10.0, 1.0);
    CHECK(p.weak_reward() == 0.1220703125);

    chain::Block b = make_block(p.T_s, 0, 3);
    b.txs = {{1, 4, 0.0}, {2, 6, 0.0}};
    auto r = reward_block(b, p);
    REQUIRE(r.size() == 1);
    CHECK(r[0].first == 3);
    CHECK(r[0].second == 12.5 + 10.0);

    chain::Block w = make_block(p.T_s, 0, 3);
    for (MinerId m : {7u, 7u, 8u}) {
        chain::BlockHeader h = w.header;
        h.coinbase = m;
        h.nonce = w.weak_headers.size() + 1;
        w.weak_headers.push_back(h);
    }
    r = reward_block(w, p);
    REQUIRE(r.size() == 3);
    CHECK(r[1].first == 7);
    CHECK(r[1].second == 2 * 0.1220703125);
    CHECK(r[2].second == 0.1220703125);
}

TEST_CASE("reward_block conserves the declared emission")
{
    sim::Rng rng(12, "emission");
    auto p = StrongchainParams::with_ratio(64.0, 1.0 / 512);
    for (int trial = 0; trial < 200; ++trial) {
        BlockSummary s;
        s.miner = static_cast<MinerId>(rng.below(5));
        s.T_s = p.T_s;
        s.T_w = p.T_w;
        s.fees = static_cast<Amount>(rng.below(1000));
        const auto n = rng.below(6);
        for (std::uint64_t i = 0; i < n; ++i) s.weak.add(static_cast<MinerId>(rng.below(5)), 1 + rng.below(30));
        double paid = 0.0;
        for (const auto& [m, a] : reward_block(s, p)) paid += a;
        const double declared = p.R + static_cast<double>(s.fees) + static_cast<double>(s.weak.total) * p.weak_reward();
        CHECK(paid == doctest::Approx(declared).epsilon(1e-12));
    }
}

TEST_CASE("block_timestamp closed forms")
{
    auto p = StrongchainParams::with_ratio(2.0, 0.25);
    chain::Block b = make_block(p.T_s, 0, 1, 100.0);
    CHECK(block_timestamp(b, p) == 100.0);

    chain::BlockHeader w = b.header;
    w.timestamp = 200.0;
    b.weak_headers.push_back(w);
    CHECK(block_timestamp(b, p) == doctest::Approx(200.0 / 1.5).epsilon(1e-15));

    chain::Block same = make_block(p.T_s, 5, 1, 42.0);
    CHECK(block_timestamp(same, p) == doctest::Approx(42.0).epsilon(1e-15));
}

TEST_CASE("block_timestamp stays within the constituent range")
{
    sim::Rng rng(13, "ts");
    for (int trial = 0; trial < 500; ++trial) {
        BlockSummary s;
        s.T_s = 1.0 / 1024;
        s.T_w = s.T_s * static_cast<double>(1 + rng.below(1024));
        s.timestamp = rng.uniform() * 1000;
        double lo = s.timestamp, hi = s.timestamp;
        const auto n = rng.below(20);
        for (std::uint64_t i = 0; i < n; ++i) {
            const double t = rng.uniform() * 1000;
            lo = std::min(lo, t);
            hi = std::max(hi, t);
            s.weak.add(1, 1, t);
        }
        const double ts = block_timestamp(s);
        CHECK(ts >= lo - 1e-9);
        CHECK(ts <= hi + 1e-9);
    }
}

TEST_CASE("retarget closed forms")
{
    auto p = StrongchainParams::with_ratio(1024.0, 1.0 / 4096);
    auto [s1, w1] = retarget(2016 * 600.0, p);
    CHECK(s1 == p.T_s);
    CHECK(w1 == p.T_w);
    auto [s2, w2] = retarget(2016 * 300.0, p);
    CHECK(s2 == p.T_s / 2);
    CHECK(w2 / s2 == 1024.0);
    CHECK_THROWS_AS(retarget(0.0, p), std::invalid_argument);

    std::vector<BlockSummary> history(2016);
    for (std::size_t i = 0; i < history.size(); ++i) {
        history[i].T_s = p.T_s;
        history[i].T_w = p.T_w;
        history[i].timestamp = static_cast<double>(i) * 1200.0 * 2016.0 / 2015.0;
    }
    auto [s3, w3] = retarget(history, p);
    CHECK(s3 == doctest::Approx(2 * p.T_s).epsilon(1e-12));
    CHECK(w3 / s3 == doctest::Approx(1024.0).epsilon(1e-12));
    history.pop_back();
    CHECK_THROWS_AS(retarget(history, p), std::invalid_argument);
}

TEST_CASE("retarget preserves the ratio")
{
    sim::Rng rng(3, "retarget-ratio");
    for (int i = 0; i < 200; ++i) {
        const double ratio = static_cast<double>(1 + rng.below(2048));
        auto p = StrongchainParams::with_ratio(ratio, 1.0 / 8192 / 2048);
        auto [s, w] = retarget(1.0 + rng.uniform() * 3e6, p);
        CHECK(w / s == doctest::Approx(ratio).epsilon(1e-12));
    }
}

TEST_CASE("strategy_step examples")
{
    Observation tie;
    tie.trigger = Trigger::ReceivedBlock;
    tie.private_work = 1.0;
    tie.public_work = 1.0;
    tie.blocks_since_fork = 1;
    tie.unpublished = 1;
    CHECK(strategy_step(StrategyTag::Selfish, tie).publish);

    Observation fresh = tie;
    fresh.trigger = Trigger::FoundBlock;
    fresh.public_work = 0.0;
    auto a = strategy_step(StrategyTag::Selfish, fresh);
    CHECK_FALSE(a.publish);
    CHECK_FALSE(a.adopt);
    CHECK_FALSE(a.broadcast_weak);

    Observation lead = fresh;
    lead.private_work = 2.5;
    lead.public_work = 1.5;
    lead.blocks_since_fork = 2;
    lead.unpublished = 2;
    CHECK(strategy_step(StrategyTag::Selfish, lead).publish);
    lead.public_work = 1.49;
    CHECK_FALSE(strategy_step(StrategyTag::Selfish, lead).publish);

    Observation behind = fresh;
    behind.private_work = 1.0;
    behind.public_work = 2.0;
    CHECK(strategy_step(StrategyTag::Selfish, behind).adopt);
    behind.public_work = 1.99;
    CHECK_FALSE(strategy_step(StrategyTag::Selfish, behind).adopt);

    Observation weak;
    weak.trigger = Trigger::FoundWeak;
    CHECK_FALSE(strategy_step(StrategyTag::Reclusive, weak).broadcast_weak);
    CHECK(strategy_step(StrategyTag::Honest, weak).broadcast_weak);
    CHECK(strategy_step(StrategyTag::Selfish, weak).broadcast_weak);

    Observation assemble;
    assemble.trigger = Trigger::AssembleBlock;
    assemble.reward_work = 1.0;
    assemble.foreign_weak_work = 1.0;
    CHECK(strategy_step(StrategyTag::Honest, assemble).include_foreign_weak);
    CHECK_FALSE(strategy_step(StrategyTag::Spiteful, assemble).include_foreign_weak);
    assemble.foreign_weak_work = 1.01;
    CHECK(strategy_step(StrategyTag::Spiteful, assemble).include_foreign_weak);

    CHECK(parse_strategy("reclusive") == StrategyTag::Reclusive);
    CHECK_THROWS_AS(parse_strategy("sneaky"), std::invalid_argument);
}

TEST_CASE("all-honest mining without delay has no forks and fair shares")
{
    AttackConfig cfg;
    cfg.strategy = StrategyTag::Honest;
    cfg.alpha = 0.3;
    cfg.latency = 0.0;
    cfg.blocks = 10000;
    cfg.params = StrongchainParams::with_ratio(1024.0, 1.0 / 4096);
    sim::Rng rng(1, "honest-fair");
    auto r = simulate_attack(cfg, rng);
    CHECK(r.orphaned_blocks == 0);
    CHECK(r.main_chain_blocks == 10000);
    CHECK(r.relative_payoff / cfg.alpha == doctest::Approx(1.0).epsilon(0.03));
    CHECK(r.attacker_weak_included + r.honest_weak_included <= r.weak_headers_mined);
}

TEST_CASE("attack simulation is deterministic")
{
    AttackConfig cfg;
    cfg.alpha = 0.4;
    cfg.blocks = 2000;
    cfg.params = StrongchainParams::with_ratio(64.0, 1.0 / 1024);
    sim::Rng a(77, "det"), b(77, "det");
    auto x = simulate_attack(cfg, a);
    auto y = simulate_attack(cfg, b);
    CHECK(x.attacker_reward == y.attacker_reward);
    CHECK(x.honest_reward == y.honest_reward);
    CHECK(x.orphaned_blocks == y.orphaned_blocks);
}

TEST_CASE("selfish mining on Bitcoin follows the closed form")
{
    // Closed form for a selfish miner whose ties are always lost.
    auto closed = [](double a) {
        return (a * (1 - a) * (1 - a) * 4 * a - a * a * a) / (1 - a * (1 + (2 - a) * a));
    };
    AttackConfig cfg;
    cfg.alpha = 0.4;
    cfg.blocks = 50000;
    cfg.latency = 0.0;
    cfg.params = StrongchainParams::with_ratio(1.0, 1.0 / 4096);
    sim::Rng rng(2, "es");
    auto r = simulate_attack(cfg, rng);
    CHECK(r.relative_payoff == doctest::Approx(closed(0.4)).epsilon(0.03));
}

TEST_CASE("simulate_attack rejects bad input")
{
    AttackConfig cfg;
    sim::Rng rng(1, "bad");
    cfg.alpha = 1.5;
    CHECK_THROWS_AS(simulate_attack(cfg, rng), std::invalid_argument);
    cfg.alpha = 0.2;
    cfg.latency = -1.0;
    CHECK_THROWS_AS(simulate_attack(cfg, rng), std::invalid_argument);
}

namespace {

/** Closed-form relative std of the per-window reward. */
double analytic_relative_std(double alpha, const StrongchainParams& p, double n)
{
    const double r = p.ratio;
    const double w = p.weak_reward();
    const double var_strong = p.R * p.R * n * alpha * (1 - alpha);
    const double var_weak = w * w * (n * (r - 1) * alpha * (1 - alpha) + alpha * alpha * n * (r - 1) * r);
    const double mean = p.R * n * alpha + w * n * (r - 1) * alpha;
    return std::sqrt(var_strong + var_weak) / mean;
}

} // namespace

TEST_CASE("reward stats match the analytic variance")
{
    for (double ratio : {1.0, 4.0, 64.0, 1024.0}) {
        auto p = StrongchainParams::with_ratio(ratio, 1.0 / 4096 / ratio);
        for (double alpha : {0.00245, 0.05, 0.3}) {
            sim::Rng rng(4, "stats");
            auto s = estimate_reward_stats(alpha, p, 2016, rng, 40000);
            CHECK(s.relative_std == doctest::Approx(analytic_relative_std(alpha, p, 2016)).epsilon(0.03));
        }
    }
}

TEST_CASE("reward stats edge cases")
{
    auto p = StrongchainParams::with_ratio(1024.0, 1.0 / 4096 / 1024);
    sim::Rng rng(6, "edge");
    auto full = estimate_reward_stats(1.0, p, 10000, rng, 4000);
    CHECK(full.relative_std < 0.01);

    auto btc = StrongchainParams::with_ratio(1.0, 1.0 / 4096);
    auto s = estimate_reward_stats(0.1, btc, 1000, rng, 40000);
    CHECK(s.relative_std == doctest::Approx(bitcoin_relative_std(0.1, 1000)).epsilon(0.03));
    CHECK(s.mean == doctest::Approx(0.1 * 1000 * 12.5).epsilon(0.01));

    CHECK_THROWS_AS(estimate_reward_stats(0.1, p, 99, rng), std::invalid_argument);
    CHECK_THROWS_AS(estimate_reward_stats(0.0, p, 1000, rng), std::invalid_argument);
}

TEST_CASE("equivalent pool size")
{
    CHECK(equivalent_pool_size_for(bitcoin_relative_std(0.181, 2016), 2016) == doctest::Approx(0.181).epsilon(1e-8));
    auto btc = StrongchainParams::with_ratio(1.0, 1.0 / 4096);
    sim::Rng rng(9, "identity");
    CHECK(equivalent_pool_size(0.05, btc, 2016, rng, 1e-9, 40000) == doctest::Approx(0.05).epsilon(0.05));
}
