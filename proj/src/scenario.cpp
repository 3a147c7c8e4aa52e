#include "avery/scenario.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace avery {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

double require_number(const json& obj, const char* key) {
    if (!obj.contains(key) || !obj.at(key).is_number()) {
        throw AveryError(ErrorCode::Parse,
                         std::string("scenario field '") + key + "' must be a number");
    }
    return obj.at(key).get<double>();
}

TraceSegmentSpec parse_segment(const json& seg) {
    TraceSegmentSpec spec;
    spec.kind = parse_segment_kind(seg.at("kind").get<std::string>());
    spec.duration_s = require_number(seg, "duration_s");
    switch (spec.kind) {
        case SegmentKind::Constant:
            spec.level = require_number(seg, "level");
            break;
        case SegmentKind::LinearRamp:
            spec.start = require_number(seg, "start");
            spec.end = require_number(seg, "end");
            break;
        case SegmentKind::RandomWalk:
            spec.start = require_number(seg, "start");
            spec.step_stddev = require_number(seg, "step_stddev");
            break;
        case SegmentKind::StepDrop:
            spec.high = require_number(seg, "high");
            spec.low = require_number(seg, "low");
            break;
    }
    return spec;
}

TraceSpec parse_trace_spec(const json& obj, const fs::path& base_dir) {
    TraceSpec spec;
    if (obj.contains("band")) {
        const auto& band = obj.at("band");
        if (!band.is_array() || band.size() != 2) {
            throw AveryError(ErrorCode::Parse, "trace.band must be [min, max]");
        }
        spec.band.min_mbps = band[0].get<double>();
        spec.band.max_mbps = band[1].get<double>();
    }
    if (obj.contains("seed")) spec.seed = obj.at("seed").get<std::uint64_t>();
    if (obj.contains("resolution_s")) spec.resolution_s = require_number(obj, "resolution_s");

    if (obj.contains("file")) {
        spec.file = (base_dir / obj.at("file").get<std::string>()).string();
    } else if (obj.contains("segments")) {
        for (const auto& seg : obj.at("segments")) {
            spec.segments.push_back(parse_segment(seg));
        }
    } else {
        throw AveryError(ErrorCode::Parse, "trace needs either 'file' or 'segments'");
    }
    return spec;
}

StageProfile parse_profile(const json& obj) {
    StageProfile profile;
    auto maybe = [&obj](const char* key, double& field) {
        if (obj.contains(key)) field = obj.at(key).get<double>();
    };
    maybe("insight_compute_latency_s", profile.insight_compute_latency_s);
    maybe("context_speedup", profile.context_speedup);
    maybe("insight_energy_j", profile.insight_energy_j);
    maybe("context_energy_j", profile.context_energy_j);
    maybe("full_edge_energy_j", profile.full_edge_energy_j);
    maybe("full_edge_latency_s", profile.full_edge_latency_s);
    maybe("context_size_mb", profile.context_size_mb);
    maybe("tx_energy_j_per_mb", profile.tx_energy_j_per_mb);
    return profile;
}

} // namespace

std::string_view policy_kind_string(PolicyKind policy) {
    switch (policy) {
        case PolicyKind::Avery: return "avery";
        case PolicyKind::StaticHighAccuracy: return "static_high_accuracy";
        case PolicyKind::StaticBalanced: return "static_balanced";
        case PolicyKind::StaticHighThroughput: return "static_high_throughput";
        case PolicyKind::FullEdge: return "full_edge";
    }
    return "?";
}

PolicyKind parse_policy_kind(std::string_view text) {
    for (PolicyKind policy :
         {PolicyKind::Avery, PolicyKind::StaticHighAccuracy, PolicyKind::StaticBalanced,
          PolicyKind::StaticHighThroughput, PolicyKind::FullEdge}) {
        if (text == policy_kind_string(policy)) return policy;
    }
    throw AveryError(ErrorCode::Parse, "unknown policy '" + std::string(text) + "'");
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw AveryError(ErrorCode::Io, "cannot open scenario file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();

    json doc;
    try {
        doc = json::parse(buffer.str());
    } catch (const json::exception& e) {
        throw AveryError(ErrorCode::Parse, std::string("scenario JSON: ") + e.what());
    }

    const fs::path base_dir = fs::path(path).parent_path();
    Scenario scenario;
    try {
        scenario.name = doc.value("name", fs::path(path).stem().string());
        scenario.duration_s = require_number(doc, "duration_s");
        scenario.goal = parse_mission_goal(doc.at("goal").get<std::string>());
        scenario.policy = parse_policy_kind(doc.at("policy").get<std::string>());
        scenario.lut_path = (base_dir / doc.at("lut").get<std::string>()).string();
        scenario.trace = parse_trace_spec(doc.at("trace"), base_dir);
        if (doc.contains("stage_profile")) {
            scenario.profile = parse_profile(doc.at("stage_profile"));
        }
        if (doc.contains("sensing_period_s")) {
            scenario.sensing_period_s = require_number(doc, "sensing_period_s");
        }
        if (doc.contains("context_period_s")) {
            scenario.context_period_s = require_number(doc, "context_period_s");
        }
        if (doc.contains("sensing_mode")) {
            const std::string mode = doc.at("sensing_mode").get<std::string>();
            if (mode == "oracle") {
                scenario.sensing_mode = SensingMode::Oracle;
            } else if (mode == "ewma") {
                scenario.sensing_mode = SensingMode::Ewma;
            } else {
                throw AveryError(ErrorCode::Parse, "sensing_mode must be oracle or ewma");
            }
        }
        if (doc.contains("ewma_alpha")) {
            scenario.ewma_alpha = require_number(doc, "ewma_alpha");
        }
        if (doc.contains("accuracy_jitter_stddev")) {
            scenario.accuracy_jitter_stddev = require_number(doc, "accuracy_jitter_stddev");
        }
        if (doc.contains("cloud_tail_latency_s")) {
            scenario.cloud_tail_latency_s = require_number(doc, "cloud_tail_latency_s");
        }
        if (doc.contains("insight_schedule")) {
            for (const auto& entry : doc.at("insight_schedule")) {
                ModeEvent event;
                event.t_s = require_number(entry, "t_s");
                const std::string mode = entry.at("mode").get<std::string>();
                if (mode == "dual_stream") {
                    event.mode = SchedulerMode::DualStream;
                } else if (mode == "context_only") {
                    event.mode = SchedulerMode::ContextOnly;
                } else {
                    throw AveryError(ErrorCode::Parse,
                                     "insight_schedule mode must be dual_stream or context_only");
                }
                scenario.insight_schedule.push_back(event);
            }
        }
    } catch (const json::exception& e) {
        throw AveryError(ErrorCode::Parse, std::string("scenario JSON: ") + e.what());
    }
    return scenario;
}

BandwidthTrace build_trace(const TraceSpec& spec) {
    if (!spec.file.empty()) {
        BandwidthTrace trace = load_trace_csv(spec.file);
        for (double sample : trace.samples) {
            if (sample < spec.band.min_mbps - 1e-9 || sample > spec.band.max_mbps + 1e-9) {
                std::ostringstream oss;
                oss << "trace sample " << sample << " outside declared band ["
                    << spec.band.min_mbps << ", " << spec.band.max_mbps << "]";
                throw AveryError(ErrorCode::InvalidBand, oss.str());
            }
        }
        return trace;
    }
    return generate_trace(spec.segments, spec.band, spec.seed, spec.resolution_s);
}

void validate_scenario(const Scenario& scenario, const BandwidthTrace& trace) {
    if (!(scenario.duration_s > 0.0)) {
        throw AveryError(ErrorCode::InvalidScenario, "duration_s must be > 0");
    }
    if (trace.duration_s() < scenario.duration_s) {
        std::ostringstream oss;
        oss << "trace covers " << trace.duration_s() << "s but the mission needs "
            << scenario.duration_s << "s";
        throw AveryError(ErrorCode::TraceTooShort, oss.str());
    }
    if (!(scenario.sensing_period_s > 0.0)) {
        throw AveryError(ErrorCode::InvalidScenario, "sensing_period_s must be > 0");
    }
    validate_profile(scenario.profile);
    if (scenario.context_period_s < scenario.profile.context_compute_latency_s()) {
        throw AveryError(ErrorCode::InvalidScenario,
                         "context_period_s below the context compute latency");
    }
    if (!(scenario.ewma_alpha > 0.0) || scenario.ewma_alpha > 1.0) {
        throw AveryError(ErrorCode::InvalidScenario, "ewma_alpha must be in (0, 1]");
    }
    if (scenario.accuracy_jitter_stddev < 0.0) {
        throw AveryError(ErrorCode::InvalidScenario, "accuracy_jitter_stddev must be >= 0");
    }
    if (scenario.cloud_tail_latency_s < 0.0) {
        throw AveryError(ErrorCode::InvalidScenario, "cloud_tail_latency_s must be >= 0");
    }
    double previous = -1.0;
    for (const ModeEvent& event : scenario.insight_schedule) {
        if (event.t_s < 0.0 || event.t_s >= scenario.duration_s) {
            throw AveryError(ErrorCode::InvalidScenario,
                             "insight_schedule event outside the mission window");
        }
        if (event.t_s < previous) {
            throw AveryError(ErrorCode::InvalidScenario,
                             "insight_schedule must be sorted by t_s");
        }
        previous = event.t_s;
    }
}

} // namespace avery
