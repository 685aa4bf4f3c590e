// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/chain/digest.hpp>

#include <openssl/sha.h>

#include <bit>
#include <cstring>

namespace powlab::chain {

Digest sha256(std::span<const std::uint8_t> bytes)
{
    Digest out{};
    SHA256(bytes.data(), bytes.size(), out.data());
    return out;
}

Digest sha256(std::string_view text)
{
    return sha256(std::span<const std::uint8_t>(reinterpret_cast<const std::uint8_t*>(text.data()), text.size()));
}

const Digest& empty_digest()
{
    static const Digest d = sha256(std::string_view{});
    return d;
}

std::string to_hex(const Digest& digest)
{
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(64);
    for (std::uint8_t b : digest) {
        out.push_back(kHex[b >> 4]);
        out.push_back(kHex[b & 0xf]);
    }
    return out;
}

Writer& Writer::u32(std::uint32_t v)
{
    for (int i = 0; i < 4; ++i) m_buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    return *this;
}

Writer& Writer::u64(std::uint64_t v)
{
    for (int i = 0; i < 8; ++i) m_buf.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
    return *this;
}

Writer& Writer::i64(std::int64_t v) { return u64(static_cast<std::uint64_t>(v)); }

Writer& Writer::f64(double v) { return u64(std::bit_cast<std::uint64_t>(v)); }

Writer& Writer::bytes(std::span<const std::uint8_t> data)
{
    m_buf.insert(m_buf.end(), data.begin(), data.end());
    return *this;
}

Writer& Writer::zeros(std::size_t n)
{
    m_buf.insert(m_buf.end(), n, 0);
    return *this;
}

} // namespace powlab::chain
