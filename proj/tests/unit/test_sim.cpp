// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/sim/event_queue.hpp>
#include <powlab/sim/lottery.hpp>
#include <powlab/sim/rng.hpp>
#include <powlab/sim/topology.hpp>

#include <doctest.h>

#include <stdexcept>
#include <vector>

using namespace powlab;
using namespace powlab::sim;

TEST_CASE("rng golden values")
{
    // Pinned with tests/oracles/rng_oracle.py.
    Rng r(42, "golden");
    CHECK(r.next() == 16589455034073618309ULL);
    CHECK(r.next() == 14324043818777750890ULL);
    CHECK(r.next() == 16315068150538669ULL);

    Rng e(42, "golden");
    CHECK(sample_exponential(e, 600.0) == doctest::Approx(63.672376405278861).epsilon(1e-15));
}

TEST_CASE("rng streams are independent and reproducible")
{
    Rng a(7, "run/0/miner/1");
    Rng b(7, "run/0/miner/1");
    Rng c(7, "run/0/miner/2");
    bool differs = false;
    for (int i = 0; i < 100; ++i) {
        auto x = a.next();
        CHECK(x == b.next());
        differs |= x != c.next();
    }
    CHECK(differs);
    CHECK(a.substream("x").stream() == "run/0/miner/1/x");
}

TEST_CASE("rng below is in range and roughly uniform")
{
    Rng r(3, "below");
    std::vector<int> counts(7, 0);
    for (int i = 0; i < 70000; ++i) counts[r.below(7)]++;
    for (int c : counts) CHECK(c == doctest::Approx(10000).epsilon(0.05));
    CHECK_THROWS_AS(r.below(0), std::invalid_argument);
}

TEST_CASE("sample_exponential")
{
    Rng r(1, "exp");
    double sum = 0.0;
    const int n = 1000000;
    for (int i = 0; i < n; ++i) sum += sample_exponential(r, 600.0);
    CHECK(sum / n >= 594.0);
    CHECK(sum / n <= 606.0);

    for (int i = 0; i < 10000; ++i) CHECK(sample_exponential(r, 20.0) > 0.0);
    CHECK_THROWS_AS(sample_exponential(r, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(sample_exponential(r, -1.0), std::invalid_argument);
}

TEST_CASE("event queue ordering")
{
    EventQueue<int> q;
    q.schedule(5.0, EventKind::Snapshot, 1);
    CHECK(q.pop().time == 5.0);

    EventQueue<int> f;
    f.schedule(3.0, EventKind::BlockFound, 1);
    f.schedule(3.0, EventKind::BlockFound, 2);
    f.schedule(1.0, EventKind::BlockFound, 0);
    CHECK(f.pop().payload == 0);
    CHECK(f.pop().payload == 1);
    CHECK(f.pop().payload == 2);

    EventQueue<int> late;
    late.schedule(4.0, EventKind::Snapshot, 0);
    late.pop();
    CHECK_THROWS_AS(late.schedule(2.0, EventKind::Snapshot, 0), std::logic_error);
}

TEST_CASE("event queue property: pops are monotone in (time, seq)")
{
    Rng r(11, "eq-prop");
    for (int trial = 0; trial < 50; ++trial) {
        EventQueue<int> q;
        int id = 0;
        for (int i = 0; i < 200; ++i) q.schedule(static_cast<double>(r.below(20)), EventKind::DeliverBlock, id++);
        double last_t = -1.0;
        std::uint64_t last_seq = 0;
        bool first = true;
        while (!q.empty()) {
            auto ev = q.pop();
            CHECK(ev.time >= last_t);
            if (!first && ev.time == last_t) CHECK(ev.seq > last_seq);
            // interleave new events at or after now
            if (r.below(4) == 0) q.schedule(q.now() + static_cast<double>(r.below(3)), EventKind::DeliverHeader, id++);
            last_t = ev.time;
            last_seq = ev.seq;
            first = false;
        }
    }
}

TEST_CASE("ring propagation delay")
{
    auto ring = Topology::ring(10, 1.0);
    CHECK(propagation_delay(ring, 0, 5) == 5.0);
    CHECK(propagation_delay(ring, 3, 3) == 0.0);
    CHECK(propagation_delay(ring, 0, 9) == 1.0);
    CHECK(ring.diameter() == 5);
    CHECK_THROWS_AS(propagation_delay(ring, 0, 10), std::out_of_range);
    CHECK_THROWS_AS(Topology::ring(10, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(Topology::ring(0, 1.0), std::invalid_argument);

    auto full = Topology::complete(4, 0.5);
    CHECK(propagation_delay(full, 0, 3) == 0.5);
    CHECK(propagation_delay(full, 2, 2) == 0.0);
}

TEST_CASE("ring distance is a metric")
{
    for (std::size_t n : {1u, 2u, 5u, 10u, 17u}) {
        auto ring = Topology::ring(n, 1.0);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(ring.hop_distance(i, i) == 0);
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(ring.hop_distance(i, j) == ring.hop_distance(j, i));
                CHECK(ring.hop_distance(i, j) <= n / 2);
                for (std::size_t k = 0; k < n; ++k) {
                    CHECK(ring.hop_distance(i, k) <= ring.hop_distance(i, j) + ring.hop_distance(j, k));
                }
            }
        }
    }
}

TEST_CASE("next_block_winner")
{
    Rng r(5, "lottery");
    std::vector<MinerSpec> solo{{4, 1.0, "honest", 0}};
    for (int i = 0; i < 100; ++i) CHECK(next_block_winner(r, solo, 600.0).winner == 4);

    std::vector<MinerSpec> two{{0, 0.3, "honest", 0}, {1, 0.7, "honest", 1}};
    HashLottery lottery(two, 600.0);
    const int n = 1000000;
    int zero_wins = 0;
    for (int i = 0; i < n; ++i) zero_wins += lottery.draw(r).winner == 0 ? 1 : 0;
    double freq = static_cast<double>(zero_wins) / n;
    CHECK(freq >= 0.297);
    CHECK(freq <= 0.303);

    std::vector<MinerSpec> half{{0, 0.5, "honest", 0}, {1, 0.5, "honest", 1}};
    HashLottery even(half, 600.0);
    double sum = 0.0;
    for (int i = 0; i < n; ++i) sum += even.draw(r).dt;
    CHECK(sum / n >= 594.0);
    CHECK(sum / n <= 606.0);

    std::vector<MinerSpec> none;
    CHECK_THROWS_AS(next_block_winner(r, none, 600.0), std::invalid_argument);
    std::vector<MinerSpec> bad{{0, 0.5, "honest", 0}, {1, 0.4, "honest", 1}};
    CHECK_THROWS_AS(next_block_winner(r, bad, 600.0), std::invalid_argument);
    CHECK_THROWS_AS(next_block_winner(r, half, 0.0), std::invalid_argument);
}
