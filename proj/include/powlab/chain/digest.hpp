// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_CHAIN_DIGEST_HPP
#define POWLAB_CHAIN_DIGEST_HPP

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace powlab::chain {

using Digest = std::array<std::uint8_t, 32>;

/** SHA-256 of a byte string. */
Digest sha256(std::span<const std::uint8_t> bytes);
Digest sha256(std::string_view text);

/** SHA-256 of the empty input; the Merkle root of an empty list. */
const Digest& empty_digest();

std::string to_hex(const Digest& digest);

/**
 * Little-endian fixed-width writer for canonical serialization. Every
 * digest in the project is computed over bytes produced by this class.
 */
class Writer
{
public:
    Writer& u32(std::uint32_t v);
    Writer& u64(std::uint64_t v);
    Writer& i64(std::int64_t v);
    /** IEEE-754 binary64 bit pattern, little-endian. */
    Writer& f64(double v);
    Writer& bytes(std::span<const std::uint8_t> data);
    Writer& zeros(std::size_t n);

    const std::vector<std::uint8_t>& data() const { return m_buf; }
    std::vector<std::uint8_t> take() { return std::move(m_buf); }

private:
    std::vector<std::uint8_t> m_buf;
};

} // namespace powlab::chain

#endif // POWLAB_CHAIN_DIGEST_HPP
