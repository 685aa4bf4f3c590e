// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/sim/rng.hpp>

#include <cmath>
#include <stdexcept>

namespace powlab::sim {

namespace {
constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
constexpr double kTwoPowMinus53 = 1.0 / 9007199254740992.0;
} // namespace

std::uint64_t fnv1a64(std::string_view bytes)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

std::uint64_t splitmix64(std::uint64_t& state)
{
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

Rng::Rng(std::uint64_t seed, std::string_view stream)
    : m_seed(seed), m_stream(stream)
{
    std::uint64_t sm = seed ^ fnv1a64(stream);
    for (auto& word : m_state) word = splitmix64(sm);
}

std::uint64_t Rng::next()
{
    const std::uint64_t result = rotl(m_state[1] * 5, 7) * 9;
    const std::uint64_t t = m_state[1] << 17;
    m_state[2] ^= m_state[0];
    m_state[3] ^= m_state[1];
    m_state[1] ^= m_state[2];
    m_state[0] ^= m_state[3];
    m_state[2] ^= t;
    m_state[3] = rotl(m_state[3], 45);
    return result;
}

double Rng::uniform()
{
    return static_cast<double>(next() >> 11) * kTwoPowMinus53;
}

double Rng::uniform_open()
{
    return (static_cast<double>(next() >> 11) + 0.5) * kTwoPowMinus53;
}

std::uint64_t Rng::below(std::uint64_t n)
{
    if (n == 0) throw std::invalid_argument("Rng::below: empty range");
    // Rejection on the top of the range keeps the result unbiased.
    const std::uint64_t limit = max() - (max() % n + 1) % n;
    std::uint64_t x = next();
    while (x > limit) x = next();
    return x % n;
}

double Rng::exponential(double mean)
{
    return -mean * std::log(uniform_open());
}

Rng Rng::substream(std::string_view name) const
{
    std::string path = m_stream;
    path += '/';
    path += name;
    return Rng(m_seed, path);
}

double sample_exponential(Rng& rng, double mean)
{
    if (!(mean > 0.0) || !std::isfinite(mean)) {
        throw std::invalid_argument("sample_exponential: mean must be positive");
    }
    return rng.exponential(mean);
}

} // namespace powlab::sim
