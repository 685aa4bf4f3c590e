// Copyright (c) 2026 The powlab developers
// Distributed under the MIT software license, see the accompanying
// file COPYING or http://www.opensource.org/licenses/mit-license.php.

#ifndef POWLAB_SIM_EVENT_QUEUE_HPP
#define POWLAB_SIM_EVENT_QUEUE_HPP

#include <cstdint>
#include <functional>
#include <queue>
#include <stdexcept>
#include <string>
#include <vector>

namespace powlab::sim {

enum class EventKind : std::uint8_t {
    BlockFound,
    WeakFound,
    DeliverBlock,
    DeliverHeader,
    MempoolRefill,
    Snapshot,
};

const char* to_string(EventKind kind);

/** A future event. `payload` is owned by whichever module scheduled it. */
template <typename Payload>
struct SimEvent {
    double time{0.0};
    EventKind kind{EventKind::Snapshot};
    Payload payload{};
    std::uint64_t seq{0};
};

/**
 * Time-ordered queue of future events. Pops are ordered by (time, seq), where
 * seq is the insertion counter, so events scheduled for the same instant come
 * out in FIFO order.
 */
template <typename Payload>
class EventQueue
{
public:
    using Event = SimEvent<Payload>;

    /** Schedule an event. Throws std::logic_error if time < now(). */
    const Event& schedule(double time, EventKind kind, Payload payload)
    {
        if (time < m_now) {
            throw std::logic_error("EventQueue::schedule: event at t=" + std::to_string(time) +
                                   " is before now=" + std::to_string(m_now));
        }
        m_heap.push(Event{time, kind, std::move(payload), m_next_seq++});
        return m_heap.top();
    }

    bool empty() const { return m_heap.empty(); }
    std::size_t size() const { return m_heap.size(); }
    double now() const { return m_now; }

    const Event& peek() const { return m_heap.top(); }

    /** Remove the earliest event and advance the clock to its time. */
    Event pop()
    {
        if (m_heap.empty()) throw std::logic_error("EventQueue::pop: queue is empty");
        Event ev = m_heap.top();
        m_heap.pop();
        m_now = ev.time;
        return ev;
    }

private:
    struct Later {
        bool operator()(const Event& a, const Event& b) const
        {
            if (a.time != b.time) return a.time > b.time;
            return a.seq > b.seq;
        }
    };

    std::priority_queue<Event, std::vector<Event>, Later> m_heap;
    double m_now{0.0};
    std::uint64_t m_next_seq{0};
};

} // namespace powlab::sim

#endif // POWLAB_SIM_EVENT_QUEUE_HPP
