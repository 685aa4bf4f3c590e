// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#include <powlab/sim/event_queue.hpp>
#include <powlab/sim/topology.hpp>

#include <cmath>
#include <stdexcept>
#include <string>

namespace powlab::sim {

const char* to_string(EventKind kind)
{
    switch (kind) {
    case EventKind::BlockFound: return "block-found";
    case EventKind::WeakFound: return "weak-found";
    case EventKind::DeliverBlock: return "deliver-block";
    case EventKind::DeliverHeader: return "deliver-header";
    case EventKind::MempoolRefill: return "mempool-refill";
    case EventKind::Snapshot: return "snapshot";
    }
    return "unknown";
}

Topology::Topology(std::size_t n, double delay, TopologyKind kind)
    : m_node_count(n), m_delay(delay), m_kind(kind)
{
    if (n == 0) throw std::invalid_argument("Topology: node_count must be positive");
    if (!(delay > 0.0) || !std::isfinite(delay)) {
        throw std::invalid_argument("Topology: inter_node_delay must be positive");
    }
}

Topology Topology::ring(std::size_t node_count, double inter_node_delay)
{
    return Topology(node_count, inter_node_delay, TopologyKind::Ring);
}

Topology Topology::complete(std::size_t node_count, double inter_node_delay)
{
    return Topology(node_count, inter_node_delay, TopologyKind::Complete);
}

std::size_t Topology::hop_distance(std::size_t from, std::size_t to) const
{
    if (from >= m_node_count || to >= m_node_count) {
        throw std::out_of_range("Topology: node index " + std::to_string(from >= m_node_count ? from : to) +
                                " >= node_count " + std::to_string(m_node_count));
    }
    if (from == to) return 0;
    if (m_kind == TopologyKind::Complete) return 1;
    const std::size_t d = from > to ? from - to : to - from;
    return std::min(d, m_node_count - d);
}

std::size_t Topology::diameter() const
{
    if (m_node_count == 1) return 0;
    return m_kind == TopologyKind::Complete ? 1 : m_node_count / 2;
}

double propagation_delay(const Topology& topology, std::size_t from, std::size_t to)
{
    return static_cast<double>(topology.hop_distance(from, to)) * topology.inter_node_delay();
}

} // namespace powlab::sim
