#include "avery/controller.hpp"

namespace avery {

namespace {

// Due-time comparisons tolerate accumulated floating-point rounding so that
// boundary-equal instants (send spacing exactly equal to transmit time)
// resolve as "due".
constexpr double kDueSlack = 1e-9;

} // namespace

double compute_max_pps(double bandwidth_mbps, double data_size_mb) {
    if (!(data_size_mb > 0.0)) {
        throw AveryError(ErrorCode::NonPositiveDataSize, "data_size_mb must be > 0");
    }
    if (bandwidth_mbps < 0.0) {
        throw AveryError(ErrorCode::NonPositiveInput, "bandwidth_mbps must be >= 0");
    }
    return (bandwidth_mbps / 8.0) / data_size_mb;
}

ControllerDecision select_optimal_tier(double bandwidth_mbps, MissionGoal goal,
                                       const SystemLUT& lut) {
    try {
        validate_lut(lut);
    } catch (const AveryError& e) {
        throw AveryError(ErrorCode::InvalidLut, e.detail());
    }
    if (bandwidth_mbps < 0.0) {
        throw AveryError(ErrorCode::NonPositiveInput, "bandwidth_mbps must be >= 0");
    }

    ControllerDecision decision;
    for (std::size_t i = 0; i < kTierCount; ++i) {
        decision.evaluated_points[i] = {
            lut.tiers[i].name, compute_max_pps(bandwidth_mbps, lut.tiers[i].data_size_mb)};
    }

    switch (goal) {
        case MissionGoal::PrioritizeAccuracy:
            decision.tier = bandwidth_mbps >= lut.bandwidth_threshold_mbps
                                ? TierName::HighAccuracy
                                : TierName::Balanced;
            break;
        case MissionGoal::PrioritizeThroughput:
            decision.tier = TierName::HighThroughput;
            break;
    }
    for (const OperatingPoint& point : decision.evaluated_points) {
        if (point.tier == decision.tier) decision.target_pps = point.max_pps;
    }
    return decision;
}

double sense_bandwidth(const BandwidthTrace& trace, double now_s) {
    return bandwidth_at(trace, now_s);
}

std::optional<StreamKind> select_stream(const SchedulerState& state, double now_s,
                                        bool link_idle) {
    if (!link_idle) return std::nullopt;

    if (state.mode == SchedulerMode::DualStream && state.target_pps > 0.0) {
        const bool insight_due =
            state.last_insight_send_s < 0.0 ||
            now_s - state.last_insight_send_s + kDueSlack >= 1.0 / state.target_pps;
        if (insight_due) return StreamKind::Insight;
    }

    const bool context_due =
        state.last_context_send_s < 0.0 ||
        now_s - state.last_context_send_s + kDueSlack >= state.context_period_s;
    if (context_due) return StreamKind::Context;

    return std::nullopt;
}

} // namespace avery
