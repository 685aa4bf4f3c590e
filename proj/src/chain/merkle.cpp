// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/chain/merkle.hpp>

#include <vector>

namespace powlab::chain {

Digest merkle_root(std::span<const Digest> leaves)
{
    if (leaves.empty()) return empty_digest();
    std::vector<Digest> level(leaves.begin(), leaves.end());
    std::array<std::uint8_t, 64> pair{};
    while (level.size() > 1) {
        if (level.size() % 2 == 1) level.push_back(level.back());
        std::vector<Digest> next;
        next.reserve(level.size() / 2);
        for (std::size_t i = 0; i < level.size(); i += 2) {
            std::copy(level[i].begin(), level[i].end(), pair.begin());
            std::copy(level[i + 1].begin(), level[i + 1].end(), pair.begin() + 32);
            next.push_back(sha256(pair));
        }
        level.swap(next);
    }
    return level.front();
}

Digest merkle_root(std::span<const Transaction> txs)
{
    std::vector<Digest> leaves;
    leaves.reserve(txs.size());
    for (const auto& tx : txs) leaves.push_back(tx_hash(tx));
    return merkle_root(std::span<const Digest>(leaves));
}

} // namespace powlab::chain
