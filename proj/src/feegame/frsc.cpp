// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/feegame/frsc.hpp>

#include <cmath>

namespace powlab::feegame {

std::vector<std::pair<std::int64_t, FrscArith<Amount>::Fraction>> frsc_configs(
    std::span<const std::pair<std::int64_t, double>> configs)
{
    using A = FrscArith<Amount>;
    std::vector<std::pair<std::int64_t, A::Fraction>> out;
    double sum = 0.0;
    A::Fraction ppb_sum = 0;
    std::size_t largest = 0;
    for (const auto& [lambda, rho] : configs) {
        if (lambda < 1) throw std::invalid_argument("frscs.lambda: must be at least 1");
        if (!(rho >= 0.0 && rho <= 1.0)) throw std::invalid_argument("frscs.rho: must lie in [0, 1]");
        sum += rho;
        out.emplace_back(lambda, A::fraction(rho));
        ppb_sum += out.back().second;
        if (out.back().second > out[largest].second) largest = out.size() - 1;
    }
    if (out.empty()) return out;
    if (std::abs(sum - 1.0) > 1e-12) throw std::invalid_argument("frscs.rho: redistribution ratios must sum to 1");
    // Rounding to parts per billion may leave one or two ppb; the largest ratio absorbs them.
    out[largest].second += A::kOne - ppb_sum;
    return out;
}

} // namespace powlab::feegame
