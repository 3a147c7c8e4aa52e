#include "avery/link.hpp"

namespace avery {

std::string_view event_kind_string(EventKind kind) {
    switch (kind) {
        case EventKind::Sense: return "sense";
        case EventKind::InsightRequestOn: return "insight_request_on";
        case EventKind::InsightRequestOff: return "insight_request_off";
        case EventKind::Capture: return "capture";
        case EventKind::ComputeDone: return "compute_done";
        case EventKind::TxDone: return "tx_done";
        case EventKind::MissionEnd: return "mission_end";
    }
    return "?";
}

std::vector<std::pair<std::uint64_t, double>> step_transmission(LinkState& link,
                                                                const BandwidthTrace& trace,
                                                                double t0_s, double t1_s) {
    if (t1_s < t0_s) {
        throw AveryError(ErrorCode::ReversedInterval, "t1 must be >= t0");
    }
    if (t0_s < 0.0 || t1_s > trace.duration_s()) {
        throw AveryError(ErrorCode::OutOfTraceRange, "step interval outside trace");
    }

    std::vector<std::pair<std::uint64_t, double>> completed;
    double cursor = t0_s;
    while (true) {
        if (!link.in_flight) {
            if (link.queue.empty()) break;
            const PendingPacket next = link.queue.front();
            link.queue.pop_front();
            link.in_flight = InFlight{next.packet_id, next.size_mb * 8.0, cursor};
        }
        const double done_at =
            solve_transfer_completion(trace, cursor, link.in_flight->remaining_megabits);
        if (done_at < 0.0 || done_at > t1_s) {
            // Drains partially within this step; account the delivered megabits.
            link.in_flight->remaining_megabits -= integrate_megabits(trace, cursor, t1_s);
            break;
        }
        completed.emplace_back(link.in_flight->packet_id, done_at);
        link.in_flight.reset();
        cursor = done_at;
    }
    return completed;
}

} // namespace avery
