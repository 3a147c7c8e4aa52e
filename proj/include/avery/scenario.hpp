#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "avery/controller.hpp"
#include "avery/lut.hpp"
#include "avery/profile.hpp"
#include "avery/trace.hpp"

namespace avery {

enum class PolicyKind {
    Avery,
    StaticHighAccuracy,
    StaticBalanced,
    StaticHighThroughput,
    FullEdge,
};

std::string_view policy_kind_string(PolicyKind policy);
PolicyKind parse_policy_kind(std::string_view text); // throws Parse

// Operator-intent script entry: toggles the insight stream on or off.
struct ModeEvent {
    double t_s = 0.0;
    SchedulerMode mode = SchedulerMode::ContextOnly;
};

// Trace source: a CSV file or a scripted segment list.
struct TraceSpec {
    std::string file; // empty when segments are used
    std::vector<TraceSegmentSpec> segments;
    Band band;
    std::uint64_t seed = 0;
    double resolution_s = 1.0;
};

// How the controller acquires bandwidth: an oracle read of the trace at the
// decision instant (default), or an EWMA over completed transmissions for
// sensitivity studies (falls back to the oracle until the first completion).
enum class SensingMode { Oracle, Ewma };

struct Scenario {
    std::string name = "scenario";
    double duration_s = 1200.0;
    MissionGoal goal = MissionGoal::PrioritizeAccuracy;
    PolicyKind policy = PolicyKind::Avery;
    std::string lut_path;
    TraceSpec trace;
    StageProfile profile;
    double sensing_period_s = 1.0;
    double context_period_s = 1.0;
    SensingMode sensing_mode = SensingMode::Oracle;
    double ewma_alpha = 0.3;
    // Zero-mean Gaussian IoU jitter per scored packet; 0 keeps the accuracy
    // model deterministic (each packet scores exactly its LUT value).
    double accuracy_jitter_stddev = 0.0;
    // Server-side processing delay; recorded for end-to-end interpretation
    // but excluded from PPS, which counts uplink deliveries.
    double cloud_tail_latency_s = 0.0;
    // No default operator profile: an empty schedule means ContextOnly for
    // the whole mission.
    std::vector<ModeEvent> insight_schedule;
};

// Parse a scenario JSON file; file references (lut, trace CSV) are resolved
// relative to the scenario's directory.
Scenario load_scenario_file(const std::string& path);

// Materialize the bandwidth trace (generate from segments or load the CSV).
// Loaded traces are checked against the declared band.
BandwidthTrace build_trace(const TraceSpec& spec);

// Structural checks shared by every entry point: positive durations, trace
// covering the mission, context period above the context compute latency,
// ordered schedule. Throws TraceTooShort / InvalidScenario.
void validate_scenario(const Scenario& scenario, const BandwidthTrace& trace);

} // namespace avery
