#pragma once

#include <array>
#include <optional>
#include <vector>

#include "avery/lut.hpp"
#include "avery/packet.hpp"
#include "avery/trace.hpp"

namespace avery {

// One evaluated operating point: a tier and its maximum feasible rate under
// the sensed bandwidth.
struct OperatingPoint {
    TierName tier = TierName::HighAccuracy;
    double max_pps = 0.0;

    bool operator==(const OperatingPoint&) const = default;
};

// Output of the tier-selection pass: the chosen tier, its target rate, and
// the full set of evaluated points (one per LUT tier, in LUT order).
struct ControllerDecision {
    TierName tier = TierName::HighAccuracy;
    double target_pps = 0.0;
    std::array<OperatingPoint, kTierCount> evaluated_points{};

    bool operator==(const ControllerDecision&) const = default;
};

// Maximum feasible packet rate: (bandwidth / 8) / payload size.
double compute_max_pps(double bandwidth_mbps, double data_size_mb);

// Sense -> Evaluate -> Decide. PrioritizeAccuracy picks HighAccuracy when
// bandwidth >= threshold (ties go to HighAccuracy) and falls back to Balanced
// below it; PrioritizeThroughput always picks HighThroughput. Pure function.
ControllerDecision select_optimal_tier(double bandwidth_mbps, MissionGoal goal,
                                       const SystemLUT& lut);

// Oracle bandwidth sensing: the trace value at the decision instant.
double sense_bandwidth(const BandwidthTrace& trace, double now_s);

enum class SchedulerMode { ContextOnly, DualStream };

// Stream-selection state for the send-side dispatcher. Insight sends are
// spaced at 1/target_pps; context sends fill remaining link-idle time at
// context_period_s. Negative "last" timestamps mean "never yet".
struct SchedulerState {
    SchedulerMode mode = SchedulerMode::ContextOnly;
    double context_period_s = 1.0;
    double target_pps = 0.0;
    double last_insight_send_s = -1.0;
    double last_context_send_s = -1.0;
    std::vector<double> insight_request_log;
};

// What the dispatcher should put on the link next; nullopt = NoSend.
// Insight wins whenever both streams are due.
std::optional<StreamKind> select_stream(const SchedulerState& state, double now_s,
                                        bool link_idle);

} // namespace avery
