// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/chain/merkle.hpp>
#include <powlab/chain/types.hpp>

namespace powlab::chain {

namespace {

void write_header(Writer& w, const BlockHeader& h)
{
    w.bytes(h.prev_hash).f64(h.target).u64(h.nonce).f64(h.timestamp).bytes(h.tx_root);
    w.u32(h.coinbase).zeros(16);
    w.f64(h.pow_value);
}

} // namespace

std::vector<std::uint8_t> serialize(const BlockHeader& header)
{
    Writer w;
    write_header(w, header);
    return w.take();
}

std::vector<std::uint8_t> serialize(const Transaction& tx)
{
    Writer w;
    w.u64(tx.id).i64(tx.fee).f64(tx.created_at);
    return w.take();
}

Digest header_hash(const BlockHeader& header) { return sha256(serialize(header)); }

Digest tx_hash(const Transaction& tx) { return sha256(serialize(tx)); }

Digest binding_digest(const std::vector<BlockHeader>& weak_headers)
{
    Writer w;
    for (const auto& h : weak_headers) write_header(w, h);
    return sha256(w.data());
}

std::size_t reported_header_bytes(const Block& block)
{
    return kStrongHeaderBytes + kWeakHeaderBytes * block.weak_headers.size();
}

void seal(Block& block)
{
    block.header.tx_root = merkle_root(std::span<const Transaction>(block.txs));
    block.binding_digest = binding_digest(block.weak_headers);
}

} // namespace powlab::chain
