// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/chain/merkle.hpp>
#include <powlab/chain/validate.hpp>

#include <cmath>

namespace powlab::chain {

std::vector<Violation> validate_block(const Block& block, const BlockHeader& tip, double T_s, double T_w)
{
    std::vector<Violation> out;
    const Digest tip_hash = header_hash(tip);
    const BlockHeader& h = block.header;

    if (!(h.pow_value < T_s)) out.push_back({Check::StrongHeader, "strong header hash does not meet T_s"});
    if (h.prev_hash != tip_hash) out.push_back({Check::StrongHeader, "strong header does not point to the tip"});

    if (!std::isfinite(h.timestamp) || h.timestamp < 0.0) {
        out.push_back({Check::FieldSanity, "timestamp is not a finite non-negative value"});
    }
    if (!(h.target > 0.0 && h.target <= 1.0) || h.target != T_s) {
        out.push_back({Check::FieldSanity, "header target differs from T_s"});
    }
    if (!(h.pow_value >= 0.0 && h.pow_value < 1.0)) {
        out.push_back({Check::FieldSanity, "hash value outside the hash space"});
    }
    for (const auto& tx : block.txs) {
        if (tx.fee < 0) {
            out.push_back({Check::FieldSanity, "transaction " + std::to_string(tx.id) + " has a negative fee"});
        }
    }
    if (merkle_root(std::span<const Transaction>(block.txs)) != h.tx_root) {
        out.push_back({Check::FieldSanity, "tx_root does not match the transactions"});
    }

    if (binding_digest(block.weak_headers) != block.binding_digest) {
        out.push_back({Check::Binding, "binding digest does not match the weak headers"});
    }

    for (std::size_t i = 0; i < block.weak_headers.size(); ++i) {
        const BlockHeader& w = block.weak_headers[i];
        if (!(w.pow_value >= T_s && w.pow_value < T_w)) {
            out.push_back({Check::WeakHeader, "weak header " + std::to_string(i) + " hash outside [T_s, T_w)"});
        }
        if (w.prev_hash != tip_hash) {
            out.push_back({Check::WeakHeader, "weak header " + std::to_string(i) + " does not point to the tip"});
        }
    }
    return out;
}

} // namespace powlab::chain
