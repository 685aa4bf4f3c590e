// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/feegame/exp3.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace powlab::feegame {

Exp3::Exp3(std::size_t arms, double gamma) : m_logw(arms, 0.0), m_gamma(gamma)
{
    if (arms == 0) throw std::invalid_argument("exp3: need at least one arm");
    if (!(gamma > 0.0 && gamma <= 1.0)) throw std::invalid_argument("exp3: exploration must lie in (0, 1]");
}

std::vector<double> Exp3::probabilities() const
{
    const double top = *std::max_element(m_logw.begin(), m_logw.end());
    std::vector<double> p(m_logw.size());
    double sum = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k) {
        p[k] = std::exp(m_logw[k] - top);
        sum += p[k];
    }
    const double k_arms = static_cast<double>(p.size());
    for (double& v : p) v = (1.0 - m_gamma) * v / sum + m_gamma / k_arms;
    return p;
}

std::size_t Exp3::choose(sim::Rng& rng) const
{
    const auto p = probabilities();
    double u = rng.uniform();
    for (std::size_t k = 0; k + 1 < p.size(); ++k) {
        if (u < p[k]) return k;
        u -= p[k];
    }
    return p.size() - 1;
}

void Exp3::update(std::size_t arm, double reward)
{
    if (arm >= m_logw.size()) throw std::out_of_range("exp3: arm");
    if (!(reward >= 0.0 && reward <= 1.0)) throw std::invalid_argument("exp3: reward must lie in [0, 1]");
    const double p = probabilities()[arm];
    m_logw[arm] += m_gamma * (reward / p) / static_cast<double>(m_logw.size());
    const double top = *std::max_element(m_logw.begin(), m_logw.end());
    for (double& w : m_logw) w -= top;
}

} // namespace powlab::feegame
