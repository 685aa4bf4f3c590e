// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_FEEGAME_EXP3_HPP
#define POWLAB_FEEGAME_EXP3_HPP

#include <powlab/sim/rng.hpp>

#include <cstddef>
#include <vector>

namespace powlab::feegame {

/**
 * exp3 bandit. Arm probabilities are (1 - gamma) * w_k / sum(w) + gamma / K;
 * weights are kept as logarithms and renormalised after every update.
 */
class Exp3
{
public:
    Exp3(std::size_t arms, double gamma);

    std::size_t arms() const { return m_logw.size(); }
    double gamma() const { return m_gamma; }
    double floor() const { return m_gamma / static_cast<double>(m_logw.size()); }

    std::vector<double> probabilities() const;
    std::size_t choose(sim::Rng& rng) const;
    /** reward must lie in [0, 1]. */
    void update(std::size_t arm, double reward);

private:
    std::vector<double> m_logw;
    double m_gamma;
};

} // namespace powlab::feegame

#endif // POWLAB_FEEGAME_EXP3_HPP
