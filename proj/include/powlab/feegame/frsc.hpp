// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_FEEGAME_FRSC_HPP
#define POWLAB_FEEGAME_FRSC_HPP

#include <powlab/chain/types.hpp>

#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace powlab::feegame {

/**
 * Arithmetic policy for contract amounts. The integer policy keeps amounts
 * in satoshi and fractions in parts per billion: products round down and
 * nu/lambda is floor division, the remainder staying in the contract.
 */
template <class T>
struct FrscArith;

template <>
struct FrscArith<Amount> {
    using Fraction = std::int64_t;
    static constexpr Fraction kOne = 1'000'000'000;

    static Fraction fraction(double f) { return static_cast<Fraction>(f * 1e9 + (f >= 0 ? 0.5 : -0.5)); }
    static Amount mul(Amount a, Fraction f)
    {
        // Exact floor for non-negative operands without a wider type.
        return (a / kOne) * f + ((a % kOne) * f) / kOne;
    }
    static Amount div(Amount a, std::int64_t lambda) { return a / lambda; }
    static Amount from_int(std::int64_t v) { return v; }
    static double to_double(Amount a) { return static_cast<double>(a); }
    static double fraction_to_double(Fraction f) { return static_cast<double>(f) / 1e9; }
};

template <class T>
struct BasicFrsc {
    using Fraction = typename FrscArith<T>::Fraction;
    T nu{};
    std::int64_t lambda{1};
    Fraction rho{};
};

template <class T>
struct BasicFeeSplit {
    using Fraction = typename FrscArith<T>::Fraction;
    /** Instant miner share; always one minus Cdep. */
    Fraction M{};
    Fraction Cdep{};

    static BasicFeeSplit from_deposit(Fraction cdep) { return {FrscArith<T>::kOne - cdep, cdep}; }
};

template <class T>
struct BlockOutcome {
    /** Sum of nu/lambda over the contracts before the block. */
    T claim{};
    /** claim + M * fees. */
    T reward_total{};
    /** fees * Cdep, spread over the contracts by rho. */
    T deposit{};
};

/** Throws std::invalid_argument unless lambda >= 1, nu >= 0 and the ratios sum to one. */
template <class T>
void validate_frscs(std::span<const BasicFrsc<T>> frscs)
{
    using A = FrscArith<T>;
    typename A::Fraction sum{};
    for (const auto& f : frscs) {
        if (f.lambda < 1) throw std::invalid_argument("frsc: lambda must be at least 1");
        if (f.nu < T{}) throw std::invalid_argument("frsc: nu must be non-negative");
        if (f.rho < typename A::Fraction{}) throw std::invalid_argument("frsc: rho must be non-negative");
        sum += f.rho;
    }
    if (!frscs.empty() && sum != A::kOne) throw std::invalid_argument("frscs.rho: redistribution ratios must sum to 1");
}

/** Genesis values: nu = mean_fees * Cdep * rho * lambda for every (lambda, rho). */
template <class T>
std::vector<BasicFrsc<T>> init_frscs(T mean_fees, typename FrscArith<T>::Fraction cdep,
                                     std::span<const std::pair<std::int64_t, typename FrscArith<T>::Fraction>> configs)
{
    using A = FrscArith<T>;
    std::vector<BasicFrsc<T>> out;
    const T per_block = A::mul(mean_fees, cdep);
    for (const auto& [lambda, rho] : configs) {
        out.push_back({A::mul(per_block, rho) * A::from_int(lambda), lambda, rho});
    }
    validate_frscs<T>(out);
    return out;
}

/** Sum of nu/lambda. */
template <class T>
T next_claim(std::span<const BasicFrsc<T>> frscs)
{
    T total{};
    for (const auto& f : frscs) total += FrscArith<T>::div(f.nu, f.lambda);
    return total;
}

/**
 * Pays the block: the miner receives next_claim + (fees - deposit); every
 * contract gives up nu/lambda and receives its share deposit * rho. Integer
 * rounding leftovers of the shares go to the contract with the largest rho,
 * so rewardT + sum(nu') == sum(nu) + fees holds exactly.
 */
template <class T>
BlockOutcome<T> apply_block(std::span<BasicFrsc<T>> frscs, T fees, const BasicFeeSplit<T>& split)
{
    using A = FrscArith<T>;
    if (fees < T{}) throw std::invalid_argument("apply_block: fees must be non-negative");
    BlockOutcome<T> out;
    out.deposit = frscs.empty() ? T{} : A::mul(fees, split.Cdep);
    T shared{};
    std::size_t largest = 0;
    for (std::size_t i = 0; i < frscs.size(); ++i) {
        auto& f = frscs[i];
        const T drain = A::div(f.nu, f.lambda);
        const T share = A::mul(out.deposit, f.rho);
        out.claim += drain;
        shared += share;
        f.nu = f.nu - drain + share;
        if (f.rho > frscs[largest].rho) largest = i;
    }
    if (!frscs.empty()) frscs[largest].nu += out.deposit - shared;
    out.reward_total = out.claim + (fees - out.deposit);
    return out;
}

/** Sum of rho * lambda. */
template <class T>
double effective_lambda(std::span<const BasicFrsc<T>> frscs)
{
    using A = FrscArith<T>;
    validate_frscs<T>(frscs);
    if (frscs.empty()) throw std::invalid_argument("effective_lambda: no contracts");
    typename A::Fraction acc{};
    for (const auto& f : frscs) acc += f.rho * A::from_int(f.lambda);
    return A::fraction_to_double(acc);
}

using FrscState = BasicFrsc<Amount>;
using FeeSplit = BasicFeeSplit<Amount>;

/** Converts (lambda, rho) pairs given as reals; ratios must sum to 1 within 1e-12. */
std::vector<std::pair<std::int64_t, FrscArith<Amount>::Fraction>> frsc_configs(
    std::span<const std::pair<std::int64_t, double>> configs);

} // namespace powlab::feegame

#endif // POWLAB_FEEGAME_FRSC_HPP
