#include "avery/simulator.hpp"

#include <algorithm>
#include <limits>
#include <queue>
#include <vector>

#include "avery/mission.hpp"

namespace avery {

namespace {

constexpr double kInfinity = std::numeric_limits<double>::infinity();
constexpr double kDueSlack = 1e-9;

// Internal queue entry: timeline events plus scheduler-only dispatch wakes.
// A wake fires try_dispatch at the exact instant the insight send-spacing
// gate elapses; it never appears in the timeline. Wakes rank after TxDone so
// a transmission completing at the same instant frees the link first.
struct QueueEntry {
    double t_s = 0.0;
    int rank = 0;
    std::uint64_t seq = 0;
    EventKind kind = EventKind::Sense;
    std::uint64_t payload = 0;
    bool wake = false;
};

int event_rank(EventKind kind) {
    switch (kind) {
        case EventKind::Sense: return 0;
        case EventKind::InsightRequestOn: return 1;
        case EventKind::InsightRequestOff: return 2;
        case EventKind::Capture: return 3;
        case EventKind::ComputeDone: return 4;
        case EventKind::TxDone: return 5;
        case EventKind::MissionEnd: return 7;
    }
    return 7;
}

constexpr int kWakeRank = 6;

struct EntryAfter {
    bool operator()(const QueueEntry& a, const QueueEntry& b) const {
        if (a.t_s != b.t_s) return a.t_s > b.t_s;
        if (a.rank != b.rank) return a.rank > b.rank;
        return a.seq > b.seq;
    }
};

class Simulator {
public:
    Simulator(const Scenario& scenario, const SystemLUT& lut, const BandwidthTrace& trace)
        : scenario_(scenario), lut_(lut), trace_(trace) {
        sched_.context_period_s = scenario.context_period_s;
    }

    MissionTimeline run() {
        schedule_world();
        while (!queue_.empty()) {
            const QueueEntry event = queue_.top();
            queue_.pop();
            if (event.wake) {
                if (event.t_s >= pending_wake_t_) pending_wake_t_ = kInfinity;
                try_dispatch(event.t_s);
                continue;
            }
            switch (event.kind) {
                case EventKind::Sense: handle_sense(event); break;
                case EventKind::InsightRequestOn:
                case EventKind::InsightRequestOff: handle_mode(event); break;
                case EventKind::Capture: handle_capture(event); break;
                case EventKind::ComputeDone: handle_compute_done(event); break;
                case EventKind::TxDone: handle_tx_done(event); break;
                case EventKind::MissionEnd:
                    append_row(event.t_s, EventKind::MissionEnd);
                    timeline_.duration_s = scenario_.duration_s;
                    return std::move(timeline_);
            }
        }
        timeline_.duration_s = scenario_.duration_s;
        return std::move(timeline_);
    }

private:
    void push(double t_s, EventKind kind, std::uint64_t payload = 0) {
        queue_.push(QueueEntry{t_s, event_rank(kind), next_seq_++, kind, payload, false});
    }

    void schedule_wake(double t_s) {
        if (t_s >= scenario_.duration_s || t_s >= pending_wake_t_ - 1e-12) return;
        pending_wake_t_ = t_s;
        queue_.push(QueueEntry{t_s, kWakeRank, next_seq_++, EventKind::TxDone, 0, true});
    }

    void schedule_world() {
        if (scenario_.policy != PolicyKind::FullEdge) {
            for (std::uint64_t k = 0;; ++k) {
                const double t = static_cast<double>(k) * scenario_.sensing_period_s;
                if (t >= scenario_.duration_s) break;
                push(t, EventKind::Sense);
            }
        }
        for (const ModeEvent& event : scenario_.insight_schedule) {
            push(event.t_s, event.mode == SchedulerMode::DualStream
                                ? EventKind::InsightRequestOn
                                : EventKind::InsightRequestOff);
        }
        push(scenario_.duration_s, EventKind::MissionEnd);
        reschedule_captures(0.0);
    }

    // --- capture scheduling -------------------------------------------------

    double insight_capture_due() const {
        if (sched_.mode != SchedulerMode::DualStream) return kInfinity;
        if (scenario_.policy == PolicyKind::FullEdge) return compute_free_at_;
        if (!(sched_.target_pps > 0.0)) return kInfinity;
        const double paced = last_insight_capture_ < 0.0
                                 ? 0.0
                                 : last_insight_capture_ + 1.0 / sched_.target_pps;
        return std::max(compute_free_at_, paced);
    }

    double context_capture_due() const {
        if (scenario_.policy == PolicyKind::FullEdge) return kInfinity;
        const double paced = last_context_capture_ < 0.0
                                 ? 0.0
                                 : last_context_capture_ + sched_.context_period_s;
        return std::max(compute_free_at_, paced);
    }

    void reschedule_captures(double now_s) {
        ++capture_generation_;
        const double due = std::min(insight_capture_due(), context_capture_due());
        if (due < kInfinity) {
            push(std::max(due, now_s), EventKind::Capture, capture_generation_);
        }
    }

    // --- handlers -----------------------------------------------------------

    void handle_sense(const QueueEntry& event) {
        const double bandwidth = scenario_.sensing_mode == SensingMode::Ewma &&
                                         ewma_estimate_ >= 0.0
                                     ? ewma_estimate_
                                     : sense_bandwidth(trace_, event.t_s);
        ControllerDecision decision = select_optimal_tier(bandwidth, scenario_.goal, lut_);
        if (auto pinned = policy_fixed_tier(scenario_.policy)) {
            decision.tier = *pinned;
            for (const OperatingPoint& point : decision.evaluated_points) {
                if (point.tier == *pinned) decision.target_pps = point.max_pps;
            }
        }
        timeline_.decisions.push_back({event.t_s, bandwidth, decision});
        sched_.target_pps = decision.target_pps;
        current_tier_ = decision.tier;

        TimelineRow row;
        row.t_s = event.t_s;
        row.event = EventKind::Sense;
        row.tier = decision.tier;
        row.bandwidth_mbps = bandwidth;
        row.target_pps = decision.target_pps;
        timeline_.rows.push_back(row);

        reschedule_captures(event.t_s);
        try_dispatch(event.t_s);
    }

    void handle_mode(const QueueEntry& event) {
        sched_.mode = event.kind == EventKind::InsightRequestOn ? SchedulerMode::DualStream
                                                                : SchedulerMode::ContextOnly;
        if (event.kind == EventKind::InsightRequestOn) {
            sched_.insight_request_log.push_back(event.t_s);
        }
        append_row(event.t_s, event.kind);
        reschedule_captures(event.t_s);
        try_dispatch(event.t_s);
    }

    void handle_capture(const QueueEntry& event) {
        if (event.payload != capture_generation_) return; // superseded schedule

        const double now = event.t_s;
        StreamKind stream;
        if (insight_capture_due() <= now + kDueSlack) {
            stream = StreamKind::Insight; // insight wins when both are due
        } else if (context_capture_due() <= now + kDueSlack) {
            stream = StreamKind::Context;
        } else {
            reschedule_captures(now);
            return;
        }

        Packet packet;
        packet.id = timeline_.packets.size();
        packet.stream = stream;
        packet.t_capture_s = now;
        double latency = 0.0;
        if (stream == StreamKind::Insight) {
            packet.dataset = assign_dataset(insight_ordinal_++);
            if (scenario_.policy == PolicyKind::FullEdge) {
                latency = scenario_.profile.full_edge_latency_s;
            } else {
                packet.tier = current_tier_;
                packet.size_mb = lut_.tier(current_tier_).data_size_mb;
                latency = scenario_.profile.insight_compute_latency_s;
            }
            last_insight_capture_ = now;
        } else {
            packet.dataset = assign_dataset(context_ordinal_++);
            packet.size_mb = scenario_.profile.context_size_mb;
            latency = scenario_.profile.context_compute_latency_s();
            last_context_capture_ = now;
        }
        timeline_.packets.push_back(packet);
        compute_free_at_ = now + latency;
        push(compute_free_at_, EventKind::ComputeDone, packet.id);

        TimelineRow row = packet_row(now, EventKind::Capture, packet);
        row.energy_j = frame_energy(packet, scenario_.profile, scenario_.policy);
        timeline_.rows.push_back(row);

        reschedule_captures(now);
    }

    void handle_compute_done(const QueueEntry& event) {
        Packet& packet = timeline_.packets[event.payload];
        packet.t_compute_done_s = event.t_s;
        timeline_.rows.push_back(packet_row(event.t_s, EventKind::ComputeDone, packet));
        if (scenario_.policy == PolicyKind::FullEdge) return; // produced locally
        link_.queue.push_back({packet.id, packet.size_mb});
        try_dispatch(event.t_s);
    }

    void handle_tx_done(const QueueEntry& event) {
        Packet& packet = timeline_.packets[event.payload];
        packet.t_tx_done_s = event.t_s;
        timeline_.rows.push_back(packet_row(event.t_s, EventKind::TxDone, packet));
        link_.in_flight.reset();
        const double elapsed = packet.t_tx_done_s - packet.t_tx_start_s;
        if (elapsed > 0.0) {
            const double observed = packet.size_mb * 8.0 / elapsed;
            ewma_estimate_ = ewma_estimate_ < 0.0
                                 ? observed
                                 : scenario_.ewma_alpha * observed +
                                       (1.0 - scenario_.ewma_alpha) * ewma_estimate_;
        }
        try_dispatch(event.t_s);
    }

    // --- link dispatch ------------------------------------------------------

    void try_dispatch(double now_s) {
        if (!link_.idle()) return;
        maybe_schedule_gate_wake(now_s);
        const auto choice = select_stream(sched_, now_s, /*link_idle=*/true);
        if (!choice) return;
        const auto it = std::find_if(link_.queue.begin(), link_.queue.end(),
                                     [&](const PendingPacket& pending) {
                                         return timeline_.packets[pending.packet_id].stream ==
                                                *choice;
                                     });
        if (it == link_.queue.end()) return; // chosen stream has nothing ready

        const PendingPacket pending = *it;
        link_.queue.erase(it);
        Packet& packet = timeline_.packets[pending.packet_id];
        packet.t_tx_start_s = now_s;
        if (packet.stream == StreamKind::Insight) {
            sched_.last_insight_send_s = now_s;
        } else {
            sched_.last_context_send_s = now_s;
        }
        link_.in_flight = InFlight{packet.id, packet.size_mb * 8.0, now_s};
        const double done = solve_transfer_completion(trace_, now_s, packet.size_mb * 8.0);
        if (done >= 0.0) {
            push(done, EventKind::TxDone, packet.id);
        }
        // A transfer the trace cannot finish stays in flight; the mission ends first.
    }

    // A computed insight packet can be held back only by the send-spacing
    // gate; revisit the dispatcher at the exact instant the gate opens.
    void maybe_schedule_gate_wake(double now_s) {
        if (sched_.mode != SchedulerMode::DualStream || !(sched_.target_pps > 0.0)) return;
        if (sched_.last_insight_send_s < 0.0) return;
        const double gate_opens = sched_.last_insight_send_s + 1.0 / sched_.target_pps;
        if (gate_opens <= now_s) return;
        const bool insight_ready =
            std::any_of(link_.queue.begin(), link_.queue.end(),
                        [&](const PendingPacket& pending) {
                            return timeline_.packets[pending.packet_id].stream ==
                                   StreamKind::Insight;
                        });
        if (insight_ready) schedule_wake(gate_opens);
    }

    // --- rows ---------------------------------------------------------------

    void append_row(double t_s, EventKind kind) {
        TimelineRow row;
        row.t_s = t_s;
        row.event = kind;
        timeline_.rows.push_back(row);
    }

    TimelineRow packet_row(double t_s, EventKind kind, const Packet& packet) const {
        TimelineRow row;
        row.t_s = t_s;
        row.event = kind;
        row.stream = packet.stream;
        row.tier = packet.tier;
        row.dataset = packet.dataset;
        row.packet_id = packet.id;
        row.size_mb = packet.size_mb;
        return row;
    }

    const Scenario& scenario_;
    const SystemLUT& lut_;
    const BandwidthTrace& trace_;

    std::priority_queue<QueueEntry, std::vector<QueueEntry>, EntryAfter> queue_;
    std::uint64_t next_seq_ = 0;
    double pending_wake_t_ = kInfinity;

    SchedulerState sched_;
    TierName current_tier_ = TierName::HighAccuracy;
    double compute_free_at_ = 0.0;
    double last_insight_capture_ = -1.0;
    double last_context_capture_ = -1.0;
    std::uint64_t capture_generation_ = 0;
    std::uint64_t insight_ordinal_ = 0;
    std::uint64_t context_ordinal_ = 0;
    double ewma_estimate_ = -1.0; // bandwidth from completed transmissions
    LinkState link_;

    MissionTimeline timeline_;
};

} // namespace

MissionTimeline run_event_loop(const Scenario& scenario, const SystemLUT& lut,
                               const BandwidthTrace& trace) {
    validate_scenario(scenario, trace);
    return Simulator(scenario, lut, trace).run();
}

} // namespace avery
