#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <string_view>
#include <utility>
#include <vector>

#include "avery/trace.hpp"

namespace avery {

// Tie-break rank for simultaneous events; lower rank processes first.
enum class EventKind {
    Sense = 0,
    InsightRequestOn = 1,
    InsightRequestOff = 2,
    Capture = 3,
    ComputeDone = 4,
    TxDone = 5,
    MissionEnd = 6,
};

std::string_view event_kind_string(EventKind kind);

struct Event {
    double t_s = 0.0;
    EventKind kind = EventKind::Sense;
    std::uint64_t seq = 0;     // insertion order, the final tie-break
    std::uint64_t payload = 0; // packet id or capture generation

    // Total order: time, then kind rank, then insertion sequence.
    bool after(const Event& other) const {
        if (t_s != other.t_s) return t_s > other.t_s;
        if (kind != other.kind) return kind > other.kind;
        return seq > other.seq;
    }
};

struct InFlight {
    std::uint64_t packet_id = 0;
    double remaining_megabits = 0.0;
    double tx_start_s = 0.0;
};

struct PendingPacket {
    std::uint64_t packet_id = 0;
    double size_mb = 0.0;
};

// Serial, non-preemptive fluid link: at most one packet drains at the
// instantaneous trace bandwidth; the queue holds ready packets FIFO.
struct LinkState {
    std::optional<InFlight> in_flight;
    std::deque<PendingPacket> queue;

    bool idle() const { return !in_flight.has_value(); }
};

// Advance the link over [t0_s, t1_s]: the in-flight packet drains by the
// trace integral, finished packets complete at their exact closed-form
// instants, and the next queued packet starts at the completion time.
// Returns (packet id, completion time) pairs in completion order.
std::vector<std::pair<std::uint64_t, double>> step_transmission(LinkState& link,
                                                                const BandwidthTrace& trace,
                                                                double t0_s, double t1_s);

} // namespace avery
