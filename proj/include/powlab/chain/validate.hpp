// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_CHAIN_VALIDATE_HPP
#define POWLAB_CHAIN_VALIDATE_HPP

#include <powlab/chain/types.hpp>

#include <string>
#include <vector>

namespace powlab::chain {

/** The four validation steps, in the order a receiving node performs them. */
enum class Check : int {
    StrongHeader = 1, ///< strong hash below T_s and prev_hash points to the tip
    FieldSanity = 2,  ///< finite fields, targets in range, tx_root, fees
    Binding = 3,      ///< binding_digest matches the attached weak headers
    WeakHeader = 4,   ///< T_s <= h < T_w and prev_hash points to the tip
};

struct Violation {
    Check check;
    std::string detail;
};

/** Empty result means the block is valid. All violations are reported. */
std::vector<Violation> validate_block(const Block& block, const BlockHeader& tip, double T_s, double T_w);

} // namespace powlab::chain

#endif // POWLAB_CHAIN_VALIDATE_HPP
