// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_CHAIN_TYPES_HPP
#define POWLAB_CHAIN_TYPES_HPP

#include <powlab/chain/digest.hpp>
#include <powlab/sim/lottery.hpp>

#include <cstdint>
#include <vector>

namespace powlab {

/** Token amounts in satoshi. */
using Amount = std::int64_t;

namespace chain {

/** Unit-size transaction; only the fee matters to reward computations. */
struct Transaction {
    std::uint64_t id{0};
    Amount fee{0};
    double created_at{0.0};

    bool operator==(const Transaction&) const = default;
};

/**
 * Header fields in serialization order. Targets and the simulated hash value
 * are fractions of the hash space in (0, 1]; a header is strong iff
 * pow_value < T_s and weak iff T_s <= pow_value < T_w.
 */
struct BlockHeader {
    Digest prev_hash{};
    double target{1.0};
    std::uint64_t nonce{0};
    double timestamp{0.0};
    Digest tx_root{};
    MinerId coinbase{0};
    double pow_value{0.0};

    bool operator==(const BlockHeader&) const = default;
};

struct Block {
    BlockHeader header;
    std::vector<BlockHeader> weak_headers;
    std::vector<Transaction> txs;
    Digest binding_digest{};
};

/** Reported header sizes; weak headers drop PrevHash, Target and Version. */
inline constexpr std::size_t kStrongHeaderBytes = 100;
inline constexpr std::size_t kWeakHeaderBytes = 60;

/**
 * Canonical encodings, little-endian fixed width:
 *   header: prev_hash[32] target:f64 nonce:u64 timestamp:f64 tx_root[32]
 *           coinbase[20] (u32 id then 16 zero bytes) pow_value:f64  = 116 bytes
 *   tx:     id:u64 fee:i64 created_at:f64                             = 24 bytes
 */
std::vector<std::uint8_t> serialize(const BlockHeader& header);
std::vector<std::uint8_t> serialize(const Transaction& tx);
inline constexpr std::size_t kHeaderEncodingBytes = 116;

Digest header_hash(const BlockHeader& header);
Digest tx_hash(const Transaction& tx);

/** H(serialize(w_0) || ... || serialize(w_n)). */
Digest binding_digest(const std::vector<BlockHeader>& weak_headers);

/** Reported on-chain size of the header part of a block. */
std::size_t reported_header_bytes(const Block& block);

/** Fill tx_root and binding_digest from the block contents. */
void seal(Block& block);

} // namespace chain
} // namespace powlab

#endif // POWLAB_CHAIN_TYPES_HPP
