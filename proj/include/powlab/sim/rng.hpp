// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_SIM_RNG_HPP
#define POWLAB_SIM_RNG_HPP

#include <array>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

namespace powlab::sim {

/** 64-bit FNV-1a over the bytes of a stream name. */
std::uint64_t fnv1a64(std::string_view bytes);

/** One SplitMix64 step: advances `state` and returns the mixed output. */
std::uint64_t splitmix64(std::uint64_t& state);

/**
 * Seeded generator with named sub-streams.
 *
 * Engine: xoshiro256** 1.0 (Blackman & Vigna). The 256-bit state for a
 * (seed, stream) pair is produced by four SplitMix64 steps started from
 * `seed ^ fnv1a64(stream)`. Only integer arithmetic is involved, so the raw
 * 64-bit output sequence is identical on every platform.
 *
 * Derived real-valued draws:
 *   uniform()      = (next() >> 11) * 2^-53                  in [0, 1)
 *   uniform_open() = ((next() >> 11) + 0.5) * 2^-53          in (0, 1)
 *   exponential(m) = -m * log(uniform_open())                in (0, inf)
 *
 * Streams are addressed by name ("run/3/miner/7"), so adding a consumer of
 * randomness never shifts the draws of another stream.
 */
class Rng
{
public:
    using result_type = std::uint64_t;

    Rng(std::uint64_t seed, std::string_view stream);

    static constexpr result_type min() { return 0; }
    static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

    result_type operator()() { return next(); }
    result_type next();

    double uniform();
    double uniform_open();
    /** Unbiased integer in [0, n); n must be positive. */
    std::uint64_t below(std::uint64_t n);
    double exponential(double mean);

    /** A sibling stream named "<this stream>/<name>" under the same seed. */
    Rng substream(std::string_view name) const;

    std::uint64_t seed() const { return m_seed; }
    const std::string& stream() const { return m_stream; }

private:
    std::uint64_t m_seed;
    std::string m_stream;
    std::array<std::uint64_t, 4> m_state;
};

/** Draw from Exp(1/mean). Throws std::invalid_argument if mean <= 0. */
double sample_exponential(Rng& rng, double mean);

} // namespace powlab::sim

#endif // POWLAB_SIM_RNG_HPP
