#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "avery/profile.hpp"
#include "avery/scenario.hpp"
#include "avery/simulator.hpp"
#include "avery/timeline.hpp"

namespace avery {

struct DatasetStats {
    std::uint64_t delivered = 0;
    double mean_iou = 0.0; // NaN when no packets were delivered
};

// Aggregate metrics for one policy run.
struct MissionSummary {
    PolicyKind policy = PolicyKind::Avery;
    MissionGoal goal = MissionGoal::PrioritizeAccuracy;
    double avg_iou_percent = 0.0; // blended over delivered insight packets
    double avg_pps = 0.0;
    double total_energy_j = 0.0;
    double energy_per_insight_frame_j = 0.0;
    std::uint64_t tier_switch_count = 0;
    std::vector<double> switch_times_s;
    std::uint64_t delivered_insight = 0;
    std::uint64_t delivered_context = 0;
    DatasetStats original;
    DatasetStats finetuned;
};

struct MissionResult {
    MissionTimeline timeline;
    MissionSummary summary;
};

struct ComparisonResult {
    BandwidthTrace trace;
    std::vector<MissionResult> runs; // Avery, StaticHighAccuracy, StaticBalanced, StaticHighThroughput
};

// Round-robin frame source: even ordinals stream the original-model dataset,
// odd ordinals the fine-tuned one.
DatasetKind assign_dataset(std::uint64_t packet_index);

// Deterministic accuracy model: the packet's tier accuracy for its dataset
// column. Context packets carry no mask and are not scorable.
AccuracySample score_packet(const Packet& packet, const SystemLUT& lut);

// Per-frame energy: full-edge frames cost the full backbone execution; split
// frames cost their stream's compute energy plus the transmit coefficient
// times payload size.
double frame_energy(const Packet& packet, const StageProfile& profile, PolicyKind policy);

// Tier pinned by a static policy; nullopt for Avery and FullEdge.
std::optional<TierName> policy_fixed_tier(PolicyKind policy);

// Reduce a timeline to its mission metrics.
MissionSummary summarize(const MissionTimeline& timeline, const Scenario& scenario,
                         const SystemLUT& lut);

// Build the LUT and trace from the scenario, simulate, summarize.
MissionResult run_scenario(const Scenario& scenario);

// Same, but over pre-built shared inputs (used by comparisons and sweeps).
MissionResult run_scenario_with(const Scenario& scenario, const SystemLUT& lut,
                                const BandwidthTrace& trace);

// Run Avery plus the three static baselines over one identical trace and
// schedule. Runs fan out across threads (capped by AVERY_SIM_THREADS).
ComparisonResult run_comparison(const Scenario& scenario);

// Thread cap from AVERY_SIM_THREADS; 0 or unset means auto.
unsigned comparison_thread_cap();

} // namespace avery
