// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_CHAIN_MERKLE_HPP
#define POWLAB_CHAIN_MERKLE_HPP

#include <powlab/chain/types.hpp>

#include <span>

namespace powlab::chain {

/**
 * Merkle root over leaf digests. Parents are H(left || right); an odd last
 * node is paired with itself. A single leaf is its own root and the empty
 * list maps to H("").
 */
Digest merkle_root(std::span<const Digest> leaves);

/** Root over transactions, leaves H(serialize(tx)). */
Digest merkle_root(std::span<const Transaction> txs);

} // namespace powlab::chain

#endif // POWLAB_CHAIN_MERKLE_HPP
