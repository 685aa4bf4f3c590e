// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/chain/mempool.hpp>
#include <powlab/chain/merkle.hpp>
#include <powlab/chain/validate.hpp>

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace powlab;
using namespace powlab::chain;

namespace {

bool has_check(const std::vector<Violation>& v, Check c)
{
    return std::any_of(v.begin(), v.end(), [c](const Violation& x) { return x.check == c; });
}

Block make_block(const BlockHeader& tip, double T_s, double T_w)
{
    Block b;
    b.header.prev_hash = header_hash(tip);
    b.header.target = T_s;
    b.header.timestamp = 700.0;
    b.header.coinbase = 1;
    b.header.pow_value = T_s / 2;
    for (int i = 0; i < 3; ++i) {
        BlockHeader w = b.header;
        w.coinbase = static_cast<MinerId>(10 + i);
        w.nonce = static_cast<std::uint64_t>(i);
        w.pow_value = T_s + (T_w - T_s) * (i + 1) / 4.0;
        b.weak_headers.push_back(w);
    }
    b.txs = {{1, 5, 0.0}, {2, 7, 1.0}};
    seal(b);
    return b;
}

} // namespace

TEST_CASE("sha256 known vectors")
{
    CHECK(to_hex(sha256("")) == "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
    CHECK(to_hex(sha256("abc")) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("canonical serialization layout")
{
    BlockHeader h;
    h.nonce = 0x0102030405060708ULL;
    h.coinbase = 0xAABBCCDD;
    auto bytes = serialize(h);
    REQUIRE(bytes.size() == kHeaderEncodingBytes);
    CHECK(bytes[40] == 0x08); // nonce little-endian after prev_hash and target
    CHECK(bytes[47] == 0x01);
    CHECK(bytes[88] == 0xDD); // coinbase after timestamp and tx_root
    CHECK(bytes[91] == 0xAA);
    CHECK(serialize(Transaction{1, 2, 3.0}).size() == 24);
}

TEST_CASE("merkle root")
{
    Transaction x{1, 10, 0.0};
    Transaction y{2, 20, 0.0};
    std::vector<Transaction> one{x};
    CHECK(merkle_root(std::span<const Transaction>(one)) == tx_hash(x));
    CHECK(merkle_root(std::span<const Transaction>()) == sha256(""));
    std::vector<Transaction> xy{x, y};
    std::vector<Transaction> yx{y, x};
    CHECK(merkle_root(std::span<const Transaction>(xy)) != merkle_root(std::span<const Transaction>(yx)));

    // odd level duplicates its last node
    Digest a = sha256("a"), b = sha256("b"), c = sha256("c");
    auto pair = [](const Digest& l, const Digest& r) {
        std::vector<std::uint8_t> v(l.begin(), l.end());
        v.insert(v.end(), r.begin(), r.end());
        return sha256(v);
    };
    std::vector<Digest> abc{a, b, c};
    CHECK(merkle_root(std::span<const Digest>(abc)) == pair(pair(a, b), pair(c, c)));
}

TEST_CASE("merkle root changes when any item changes")
{
    sim::Rng rng(9, "merkle-prop");
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<Transaction> txs;
        const auto n = 1 + rng.below(17);
        for (std::uint64_t i = 0; i < n; ++i) txs.push_back({i, static_cast<Amount>(rng.below(1000)), 0.0});
        auto root = merkle_root(std::span<const Transaction>(txs));
        auto k = rng.below(n);
        txs[k].fee += 1;
        CHECK(merkle_root(std::span<const Transaction>(txs)) != root);
    }
}

TEST_CASE("reported header sizes")
{
    Block b;
    CHECK(reported_header_bytes(b) == 100);
    b.weak_headers.resize(5);
    CHECK(reported_header_bytes(b) == 400);
}

TEST_CASE("validate_block")
{
    const double T_s = 0.001, T_w = 0.01;
    BlockHeader tip;
    tip.timestamp = 100.0;
    tip.pow_value = 0.0001;

    Block ok = make_block(tip, T_s, T_w);
    CHECK(validate_block(ok, tip, T_s, T_w).empty());

    Block stray = ok;
    stray.weak_headers[1].prev_hash = sha256("elsewhere");
    stray.binding_digest = binding_digest(stray.weak_headers);
    auto v = validate_block(stray, tip, T_s, T_w);
    REQUIRE(v.size() == 1);
    CHECK(v[0].check == Check::WeakHeader);

    Block tampered = ok;
    tampered.weak_headers[0].coinbase = 99;
    v = validate_block(tampered, tip, T_s, T_w);
    REQUIRE(v.size() == 1);
    CHECK(v[0].check == Check::Binding);

    Block several = ok;
    several.header.pow_value = 0.5;
    several.weak_headers[2].pow_value = T_w;
    several.txs[0].fee = 6;
    v = validate_block(several, tip, T_s, T_w);
    CHECK(has_check(v, Check::StrongHeader));
    CHECK(has_check(v, Check::FieldSanity));
    CHECK(has_check(v, Check::Binding));
    CHECK(has_check(v, Check::WeakHeader));

    Block too_strong = ok;
    too_strong.weak_headers[0].pow_value = T_s / 2;
    too_strong.binding_digest = binding_digest(too_strong.weak_headers);
    v = validate_block(too_strong, tip, T_s, T_w);
    REQUIRE(v.size() == 1);
    CHECK(v[0].check == Check::WeakHeader);
}

TEST_CASE("mempool basics")
{
    Mempool pool(3);
    CHECK(pool.insert({1, 5, 0.0}));
    CHECK(pool.insert({2, 3, 0.0}));
    CHECK_FALSE(pool.insert({2, 3, 0.0}));
    CHECK(pool.insert({3, 9, 0.0}));
    CHECK_FALSE(pool.insert({4, 1, 0.0}));
    CHECK(pool.size() == 3);
    CHECK(pool.total_fees() == 17);

    auto top2 = pool.top(2);
    REQUIRE(top2.size() == 2);
    CHECK(top2[0].fee == 9);
    CHECK(top2[1].fee == 5);
    CHECK(pool.top(10).size() == 3);

    CHECK(pool.extract_max().id == 3);
    CHECK(pool.erase(1));
    CHECK_FALSE(pool.erase(1));
    CHECK(pool.size() == 1);
    CHECK(pool.total_fees() == 3);
}

TEST_CASE("mempool fee ties resolve to lowest id")
{
    Mempool pool(10);
    for (std::uint64_t id : {7u, 3u, 5u, 1u}) pool.insert({id, 4, 0.0});
    auto top = pool.top(2);
    CHECK(top[0].id == 1);
    CHECK(top[1].id == 3);
}

TEST_CASE("mempool extract_max matches a linear scan")
{
    sim::Rng rng(21, "mempool-prop");
    for (int trial = 0; trial < 100; ++trial) {
        Mempool pool(500);
        std::uint64_t id = 0;
        for (int op = 0; op < 400; ++op) {
            const auto r = rng.below(10);
            if (r < 6 || pool.empty()) {
                pool.insert({id++, static_cast<Amount>(rng.below(50)), 0.0});
            } else if (r < 8) {
                const auto& txs = pool.transactions();
                Amount best = -1;
                std::uint64_t best_id = 0;
                for (const auto& t : txs) {
                    if (t.fee > best || (t.fee == best && t.id < best_id)) {
                        best = t.fee;
                        best_id = t.id;
                    }
                }
                auto got = pool.extract_max();
                CHECK(got.fee == best);
                CHECK(got.id == best_id);
            } else {
                pool.extract_random(rng);
            }
            CHECK(pool.size() <= pool.capacity());
        }
        Amount total = 0;
        for (const auto& t : pool.transactions()) total += t.fee;
        CHECK(total == pool.total_fees());
    }
}

TEST_CASE("mempool sample draws distinct transactions")
{
    sim::Rng rng(4, "sample");
    Mempool pool(100);
    for (std::uint64_t i = 0; i < 50; ++i) pool.insert({i, 1, 0.0});
    CHECK(pool.sample(100, rng).size() == 50);
    for (int trial = 0; trial < 100; ++trial) {
        auto s = pool.sample(20, rng);
        std::set<std::uint64_t> ids;
        for (const auto& t : s) ids.insert(t.id);
        CHECK(ids.size() == 20);
    }
    sim::Rng a(4, "same"), b(4, "same");
    CHECK(pool.sample(10, a) == pool.sample(10, b));
}

TEST_CASE("refill_mempool")
{
    sim::Rng rng(8, "refill");
    std::uint64_t next_id = 0;

    Mempool full(10000);
    refill_mempool(full, rng, 10000, FeeDistribution::exponential(100.0), next_id, 0.0);
    CHECK(full.size() == 10000);
    auto before = full.transactions();
    refill_mempool(full, rng, 500, FeeDistribution::exponential(100.0), next_id, 60.0);
    CHECK(full.transactions() == before);

    Mempool flat(100);
    refill_mempool(flat, rng, 40, FeeDistribution::flat(7), next_id, 0.0);
    CHECK(flat.size() == 40);
    for (const auto& t : flat.transactions()) CHECK(t.fee == 7);

    Mempool topup(100, true);
    refill_mempool(topup, rng, 1, FeeDistribution::flat(1), next_id, 0.0);
    CHECK(topup.size() == 100);

    auto dist = FeeDistribution::exponential(100.0);
    double sum = 0.0;
    for (int i = 0; i < 1000000; ++i) sum += static_cast<double>(dist.draw(rng));
    CHECK(sum / 1e6 == doctest::Approx(100.0).epsilon(0.01));
}

TEST_CASE("identical refill content across views")
{
    sim::Rng rng(2, "views");
    std::uint64_t next_id = 0;
    auto batch = make_transactions(rng, 30, FeeDistribution::exponential(50.0), next_id, 60.0);
    Mempool a(100), b(20);
    a.insert_batch(batch);
    b.insert_batch(batch);
    CHECK(a.size() == 30);
    CHECK(b.size() == 20);
    for (const auto& t : b.transactions()) CHECK(a.contains(t.id));
}
