// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_SIM_TOPOLOGY_HPP
#define POWLAB_SIM_TOPOLOGY_HPP

#include <cstddef>

namespace powlab::sim {

enum class TopologyKind { Ring, Complete };

/** Static relay network. Messages travel hop by hop, each hop costing inter_node_delay. */
class Topology
{
public:
    static Topology ring(std::size_t node_count, double inter_node_delay);
    static Topology complete(std::size_t node_count, double inter_node_delay);

    std::size_t node_count() const { return m_node_count; }
    double inter_node_delay() const { return m_delay; }
    TopologyKind kind() const { return m_kind; }

    /** Hop count between two nodes; ring distance is min(|i-j|, n-|i-j|). */
    std::size_t hop_distance(std::size_t from, std::size_t to) const;
    /** Largest hop distance in the network (floor(n/2) on a ring). */
    std::size_t diameter() const;

private:
    Topology(std::size_t n, double delay, TopologyKind kind);

    std::size_t m_node_count;
    double m_delay;
    TopologyKind m_kind;
};

/** hop_distance(from, to) * inter_node_delay. Throws std::out_of_range on a bad index. */
double propagation_delay(const Topology& topology, std::size_t from, std::size_t to);

} // namespace powlab::sim

#endif // POWLAB_SIM_TOPOLOGY_HPP
