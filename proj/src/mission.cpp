#include "avery/mission.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <future>
#include <limits>
#include <thread>

#include "avery/rng.hpp"

namespace avery {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

// Deterministic per-packet jitter stream keyed off the scenario seed; off by
// default, in which case a packet scores exactly its LUT value.
double scored_iou(const Packet& packet, const SystemLUT& lut, const Scenario& scenario) {
    double iou = score_packet(packet, lut).iou_percent;
    if (scenario.accuracy_jitter_stddev > 0.0) {
        SplitMix64 rng(scenario.trace.seed + 0x51ED2701ULL * (packet.id + 1));
        iou = std::clamp(iou + scenario.accuracy_jitter_stddev * next_gaussian(rng), 0.0,
                         100.0);
    }
    return iou;
}

} // namespace

DatasetKind assign_dataset(std::uint64_t packet_index) {
    return packet_index % 2 == 0 ? DatasetKind::Original : DatasetKind::Finetuned;
}

AccuracySample score_packet(const Packet& packet, const SystemLUT& lut) {
    if (packet.stream != StreamKind::Insight || !packet.tier.has_value()) {
        throw AveryError(ErrorCode::ContextPacketNotScorable,
                         "packet " + std::to_string(packet.id) + " carries no insight mask");
    }
    const TierSpec& tier = lut.tier(*packet.tier);
    return AccuracySample{packet.id, packet.dataset == DatasetKind::Original
                                         ? tier.accuracy_original
                                         : tier.accuracy_finetuned};
}

double frame_energy(const Packet& packet, const StageProfile& profile, PolicyKind policy) {
    if (policy == PolicyKind::FullEdge) {
        return profile.full_edge_energy_j;
    }
    const double compute = packet.stream == StreamKind::Insight ? profile.insight_energy_j
                                                                : profile.context_energy_j;
    return compute + profile.tx_energy_j_per_mb * packet.size_mb;
}

std::optional<TierName> policy_fixed_tier(PolicyKind policy) {
    switch (policy) {
        case PolicyKind::StaticHighAccuracy: return TierName::HighAccuracy;
        case PolicyKind::StaticBalanced: return TierName::Balanced;
        case PolicyKind::StaticHighThroughput: return TierName::HighThroughput;
        case PolicyKind::Avery:
        case PolicyKind::FullEdge: return std::nullopt;
    }
    return std::nullopt;
}

MissionSummary summarize(const MissionTimeline& timeline, const Scenario& scenario,
                         const SystemLUT& lut) {
    MissionSummary summary;
    summary.policy = scenario.policy;
    summary.goal = scenario.goal;

    double iou_sum = 0.0;
    double iou_sum_original = 0.0;
    double iou_sum_finetuned = 0.0;
    for (const Packet& packet : timeline.packets) {
        summary.total_energy_j += frame_energy(packet, scenario.profile, scenario.policy);
        if (packet.stream == StreamKind::Context) {
            if (packet.delivered()) summary.delivered_context++;
            continue;
        }
        // FullEdge produces its result on compute completion; split policies
        // deliver on transmit completion.
        const bool produced = scenario.policy == PolicyKind::FullEdge
                                  ? packet.t_compute_done_s >= 0.0
                                  : packet.delivered();
        if (!produced) continue;
        summary.delivered_insight++;
        if (packet.tier.has_value()) {
            const double iou = scored_iou(packet, lut, scenario);
            iou_sum += iou;
            if (packet.dataset == DatasetKind::Original) {
                summary.original.delivered++;
                iou_sum_original += iou;
            } else {
                summary.finetuned.delivered++;
                iou_sum_finetuned += iou;
            }
        }
    }

    const std::uint64_t scored = summary.original.delivered + summary.finetuned.delivered;
    summary.avg_iou_percent = scored > 0 ? iou_sum / static_cast<double>(scored) : kNaN;
    summary.original.mean_iou =
        summary.original.delivered > 0
            ? iou_sum_original / static_cast<double>(summary.original.delivered)
            : kNaN;
    summary.finetuned.mean_iou =
        summary.finetuned.delivered > 0
            ? iou_sum_finetuned / static_cast<double>(summary.finetuned.delivered)
            : kNaN;
    summary.avg_pps =
        static_cast<double>(summary.delivered_insight) / timeline.duration_s;
    summary.energy_per_insight_frame_j =
        summary.delivered_insight > 0
            ? summary.total_energy_j / static_cast<double>(summary.delivered_insight)
            : kNaN;

    for (std::size_t i = 1; i < timeline.decisions.size(); ++i) {
        if (timeline.decisions[i].decision.tier != timeline.decisions[i - 1].decision.tier) {
            summary.tier_switch_count++;
            summary.switch_times_s.push_back(timeline.decisions[i].t_s);
        }
    }
    return summary;
}

MissionResult run_scenario_with(const Scenario& scenario, const SystemLUT& lut,
                                const BandwidthTrace& trace) {
    MissionResult result;
    result.timeline = run_event_loop(scenario, lut, trace);
    result.summary = summarize(result.timeline, scenario, lut);
    return result;
}

MissionResult run_scenario(const Scenario& scenario) {
    const SystemLUT lut = load_lut_file(scenario.lut_path);
    const BandwidthTrace trace = build_trace(scenario.trace);
    return run_scenario_with(scenario, lut, trace);
}

unsigned comparison_thread_cap() {
    const char* raw = std::getenv("AVERY_SIM_THREADS");
    if (raw == nullptr) return 0;
    const long parsed = std::strtol(raw, nullptr, 10);
    return parsed > 0 ? static_cast<unsigned>(parsed) : 0;
}

ComparisonResult run_comparison(const Scenario& scenario) {
    const SystemLUT lut = load_lut_file(scenario.lut_path);
    ComparisonResult result;
    result.trace = build_trace(scenario.trace);

    const PolicyKind policies[] = {PolicyKind::Avery, PolicyKind::StaticHighAccuracy,
                                   PolicyKind::StaticBalanced,
                                   PolicyKind::StaticHighThroughput};
    std::vector<Scenario> variants;
    for (PolicyKind policy : policies) {
        Scenario variant = scenario;
        variant.policy = policy;
        variants.push_back(variant);
    }

    unsigned cap = comparison_thread_cap();
    if (cap == 0) cap = std::max(1u, std::thread::hardware_concurrency());
    result.runs.resize(variants.size());

    // Bounded fan-out; runs share only the immutable lut/trace.
    std::size_t next = 0;
    while (next < variants.size()) {
        std::vector<std::future<MissionResult>> batch;
        const std::size_t batch_end = std::min(variants.size(), next + cap);
        for (std::size_t i = next; i < batch_end; ++i) {
            batch.push_back(std::async(std::launch::async, [&, i] {
                return run_scenario_with(variants[i], lut, result.trace);
            }));
        }
        for (std::size_t i = next; i < batch_end; ++i) {
            result.runs[i] = batch[i - next].get();
        }
        next = batch_end;
    }
    return result;
}

} // namespace avery
