// Command-line front end for the split-computing mission simulator:
// run single missions, policy comparisons, bandwidth sweeps, trace
// generation, and LUT utilities. All randomness flows from scenario seeds.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "avery/csvio.hpp"
#include "avery/mission.hpp"
#include "avery/svg.hpp"

namespace fs = std::filesystem;
using namespace avery;

namespace {

// Exit codes: 1 = parse/validation failure, 2 = runtime simulation failure.
struct SetupError {
    AveryError inner;
};

[[noreturn]] void fail(const AveryError& error, int exit_code) {
    std::cerr << "ERROR " << error_code_name(error.code()) << ": " << error.detail() << "\n";
    std::exit(exit_code);
}

std::string policy_color(PolicyKind policy) {
    switch (policy) {
        case PolicyKind::Avery: return "#1f77b4";
        case PolicyKind::StaticHighAccuracy: return "#2ca02c";
        case PolicyKind::StaticBalanced: return "#ff7f0e";
        case PolicyKind::StaticHighThroughput: return "#d62728";
        case PolicyKind::FullEdge: return "#9467bd";
    }
    return "#777777";
}

double tier_level(TierName tier) {
    switch (tier) {
        case TierName::HighAccuracy: return 3.0;
        case TierName::Balanced: return 2.0;
        case TierName::HighThroughput: return 1.0;
    }
    return 0.0;
}

void print_summaries(const std::vector<MissionSummary>& summaries) {
    std::printf("%-24s %-22s %10s %8s %12s %8s %10s %10s\n", "policy", "goal", "avg_iou",
                "avg_pps", "energy_j", "switches", "iou_orig", "iou_ft");
    for (const MissionSummary& s : summaries) {
        std::printf("%-24s %-22s %10.4f %8.4f %12.2f %8llu %10.4f %10.4f\n",
                    std::string(policy_kind_string(s.policy)).c_str(),
                    std::string(mission_goal_string(s.goal)).c_str(), s.avg_iou_percent,
                    s.avg_pps, s.total_energy_j,
                    static_cast<unsigned long long>(s.tier_switch_count), s.original.mean_iou,
                    s.finetuned.mean_iou);
    }
}

SvgChart bandwidth_chart(const BandwidthTrace& trace, double threshold) {
    SvgChart chart;
    chart.title = "Bandwidth over time";
    chart.x_label = "time (s)";
    chart.y_label = "bandwidth (Mbps)";
    chart.h_line = threshold;
    SvgSeries series;
    series.label = "bandwidth";
    series.color = "#1f77b4";
    series.step = true;
    for (std::size_t k = 0; k < trace.samples.size(); ++k) {
        series.points.emplace_back(trace.resolution_s * static_cast<double>(k),
                                   trace.samples[k]);
    }
    chart.series.push_back(std::move(series));
    return chart;
}

SvgChart tier_chart(const MissionTimeline& timeline) {
    SvgChart chart;
    chart.title = "Selected tier over time";
    chart.x_label = "time (s)";
    chart.y_label = "tier";
    chart.y_min = 0.5;
    chart.y_max = 3.5;
    chart.y_ticks = {{1.0, "high_throughput"}, {2.0, "balanced"}, {3.0, "high_accuracy"}};
    SvgSeries series;
    series.label = "tier";
    series.color = "#2ca02c";
    series.step = true;
    for (const DecisionRecord& record : timeline.decisions) {
        series.points.emplace_back(record.t_s, tier_level(record.decision.tier));
    }
    chart.series.push_back(std::move(series));
    return chart;
}

// Bucketed delivered-insight metrics for the accuracy/throughput panels.
struct BucketSeries {
    std::vector<std::pair<double, double>> iou;
    std::vector<std::pair<double, double>> pps;
};

BucketSeries bucket_metrics(const MissionResult& run, const SystemLUT& lut,
                            PolicyKind policy, double bucket_s) {
    BucketSeries out;
    const double duration = run.timeline.duration_s;
    const auto buckets = static_cast<std::size_t>(duration / bucket_s);
    std::vector<double> iou_sum(buckets, 0.0);
    std::vector<std::uint64_t> counts(buckets, 0);
    for (const Packet& packet : run.timeline.packets) {
        const bool produced = policy == PolicyKind::FullEdge
                                  ? packet.t_compute_done_s >= 0.0
                                  : packet.delivered();
        if (packet.stream != StreamKind::Insight || !produced) continue;
        const double t = policy == PolicyKind::FullEdge ? packet.t_compute_done_s
                                                        : packet.t_tx_done_s;
        const auto idx = std::min(buckets - 1, static_cast<std::size_t>(t / bucket_s));
        counts[idx]++;
        if (packet.tier) iou_sum[idx] += score_packet(packet, lut).iou_percent;
    }
    for (std::size_t k = 0; k < buckets; ++k) {
        const double t = (static_cast<double>(k) + 0.5) * bucket_s;
        out.pps.emplace_back(t, static_cast<double>(counts[k]) / bucket_s);
        if (counts[k] > 0) {
            out.iou.emplace_back(t, iou_sum[k] / static_cast<double>(counts[k]));
        }
    }
    return out;
}

void write_mission_charts(const fs::path& out_dir, const BandwidthTrace& trace,
                          const SystemLUT& lut, const std::vector<MissionResult>& runs) {
    write_text_file((out_dir / "bandwidth.svg").string(),
                    render_svg(bandwidth_chart(trace, lut.bandwidth_threshold_mbps)));

    // Tier panel: the adaptive run if present, else the first run.
    const MissionResult* tier_run = &runs.front();
    for (const MissionResult& run : runs) {
        if (run.summary.policy == PolicyKind::Avery) tier_run = &run;
    }
    write_text_file((out_dir / "tiers.svg").string(), render_svg(tier_chart(tier_run->timeline)));

    SvgChart accuracy;
    accuracy.title = "Delivered accuracy (60 s buckets)";
    accuracy.x_label = "time (s)";
    accuracy.y_label = "average IoU (%)";
    SvgChart throughput;
    throughput.title = "Delivered insight throughput (60 s buckets)";
    throughput.x_label = "time (s)";
    throughput.y_label = "PPS";
    for (const MissionResult& run : runs) {
        const BucketSeries buckets = bucket_metrics(run, lut, run.summary.policy, 60.0);
        SvgSeries iou_series;
        iou_series.label = std::string(policy_kind_string(run.summary.policy));
        iou_series.color = policy_color(run.summary.policy);
        iou_series.points = buckets.iou;
        accuracy.series.push_back(std::move(iou_series));
        SvgSeries pps_series;
        pps_series.label = std::string(policy_kind_string(run.summary.policy));
        pps_series.color = policy_color(run.summary.policy);
        pps_series.points = buckets.pps;
        throughput.series.push_back(std::move(pps_series));
    }
    write_text_file((out_dir / "accuracy.svg").string(), render_svg(accuracy));
    write_text_file((out_dir / "throughput.svg").string(), render_svg(throughput));
}

void ensure_dir(const fs::path& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) {
        throw AveryError(ErrorCode::Io, "cannot create output directory '" + dir.string() + "'");
    }
}

int cmd_run(const std::string& scenario_path, const std::string& out_dir_raw, bool plot) {
    Scenario scenario;
    SystemLUT lut;
    BandwidthTrace trace;
    fs::path out_dir(out_dir_raw);
    try {
        scenario = load_scenario_file(scenario_path);
        lut = load_lut_file(scenario.lut_path);
        trace = build_trace(scenario.trace);
        validate_scenario(scenario, trace);
        ensure_dir(out_dir);
    } catch (const AveryError& e) {
        fail(e, 1);
    }

    try {
        const MissionResult result = run_scenario_with(scenario, lut, trace);
        write_text_file((out_dir / "timeline.csv").string(), timeline_csv(result.timeline));
        write_text_file((out_dir / "summary.csv").string(), summary_csv({result.summary}));
        if (plot) {
            write_mission_charts(out_dir, trace, lut, {result});
        }
        print_summaries({result.summary});
        std::printf("wrote %s\n", (out_dir / "summary.csv").string().c_str());
    } catch (const AveryError& e) {
        fail(e, 2);
    }
    return 0;
}

int cmd_compare(const std::string& scenario_path, const std::string& out_dir_raw, bool plot) {
    Scenario scenario;
    SystemLUT lut;
    fs::path out_dir(out_dir_raw);
    try {
        scenario = load_scenario_file(scenario_path);
        lut = load_lut_file(scenario.lut_path);
        const BandwidthTrace trace = build_trace(scenario.trace);
        validate_scenario(scenario, trace);
        ensure_dir(out_dir);
    } catch (const AveryError& e) {
        fail(e, 1);
    }

    try {
        const ComparisonResult comparison = run_comparison(scenario);
        std::vector<MissionSummary> summaries;
        for (const MissionResult& run : comparison.runs) {
            summaries.push_back(run.summary);
            const std::string name =
                "timeline_" + std::string(policy_kind_string(run.summary.policy)) + ".csv";
            write_text_file((out_dir / name).string(), timeline_csv(run.timeline));
        }
        write_text_file((out_dir / "summary.csv").string(), summary_csv(summaries));
        if (plot) {
            write_mission_charts(out_dir, comparison.trace, lut, comparison.runs);
        }
        print_summaries(summaries);
        std::printf("wrote %s\n", (out_dir / "summary.csv").string().c_str());
    } catch (const AveryError& e) {
        fail(e, 2);
    }
    return 0;
}

int cmd_sweep(double from, double to, double step, const std::string& goal_raw,
              double duration, const std::string& lut_path, const std::string& out_dir_raw,
              bool plot) {
    MissionGoal goal = MissionGoal::PrioritizeAccuracy;
    SystemLUT lut;
    fs::path out_dir(out_dir_raw);
    try {
        goal = parse_mission_goal(goal_raw);
        if (!(from > 0.0) || !(to >= from)) {
            throw AveryError(ErrorCode::NonPositiveInput,
                             "sweep range must satisfy 0 < from <= to");
        }
        if (!(step > 0.0)) {
            throw AveryError(ErrorCode::NonPositiveInput, "sweep step must be > 0");
        }
        if (!(duration > 0.0)) {
            throw AveryError(ErrorCode::NonPositiveInput, "duration must be > 0");
        }
        lut = load_lut_file(lut_path);
        ensure_dir(out_dir);
    } catch (const AveryError& e) {
        fail(e, 1);
    }

    try {
        std::vector<FrontierPoint> points;
        for (double b = from; b <= to + 1e-9; b += step) {
            Scenario scenario;
            scenario.name = "sweep";
            scenario.duration_s = duration;
            scenario.goal = goal;
            scenario.lut_path = lut_path;
            scenario.trace.band = {std::min(8.0, b - 1.0), std::max(20.0, b + 1.0)};
            scenario.trace.segments = {
                {SegmentKind::Constant, duration, b, 0.0, 0.0, 0.0, 0.0, 0.0}};
            scenario.insight_schedule = {{0.0, SchedulerMode::DualStream}};
            const ComparisonResult comparison = run_comparison(scenario);
            for (const MissionResult& run : comparison.runs) {
                points.push_back({b, run.summary.policy, run.summary.avg_iou_percent,
                                  run.summary.avg_pps});
            }
        }
        write_text_file((out_dir / "frontier.csv").string(), frontier_csv(points));

        if (plot) {
            SvgChart chart;
            chart.title = "Average accuracy vs average throughput";
            chart.x_label = "avg throughput (PPS)";
            chart.y_label = "avg IoU (%)";
            for (PolicyKind policy :
                 {PolicyKind::Avery, PolicyKind::StaticHighAccuracy, PolicyKind::StaticBalanced,
                  PolicyKind::StaticHighThroughput}) {
                SvgSeries series;
                series.label = std::string(policy_kind_string(policy));
                series.color = policy_color(policy);
                series.scatter = true;
                for (const FrontierPoint& point : points) {
                    if (point.policy == policy) {
                        series.points.emplace_back(point.avg_pps, point.avg_iou);
                    }
                }
                chart.series.push_back(std::move(series));
            }
            write_text_file((out_dir / "frontier.svg").string(), render_svg(chart));
        }
        std::printf("wrote %s\n", (out_dir / "frontier.csv").string().c_str());
    } catch (const AveryError& e) {
        fail(e, 2);
    }
    return 0;
}

int cmd_gen_trace(const std::string& spec_path, const std::string& out_path) {
    try {
        std::ifstream in(spec_path);
        if (!in) {
            throw AveryError(ErrorCode::Io, "cannot open trace spec '" + spec_path + "'");
        }
        std::ostringstream buffer;
        buffer << in.rdbuf();
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(buffer.str());
        } catch (const nlohmann::json::exception& e) {
            throw AveryError(ErrorCode::Parse, std::string("trace spec JSON: ") + e.what());
        }
        // Accept either a bare trace spec or a scenario file with a trace field.
        if (doc.contains("trace")) doc = doc.at("trace");

        TraceSpec spec;
        if (doc.contains("band")) {
            spec.band.min_mbps = doc.at("band")[0].get<double>();
            spec.band.max_mbps = doc.at("band")[1].get<double>();
        }
        if (doc.contains("seed")) spec.seed = doc.at("seed").get<std::uint64_t>();
        if (doc.contains("resolution_s")) {
            spec.resolution_s = doc.at("resolution_s").get<double>();
        }
        if (!doc.contains("segments")) {
            throw AveryError(ErrorCode::Parse, "trace spec needs 'segments'");
        }
        std::vector<TraceSegmentSpec> segments;
        for (const auto& seg : doc.at("segments")) {
            TraceSegmentSpec s;
            s.kind = parse_segment_kind(seg.at("kind").get<std::string>());
            s.duration_s = seg.at("duration_s").get<double>();
            if (seg.contains("level")) s.level = seg.at("level").get<double>();
            if (seg.contains("start")) s.start = seg.at("start").get<double>();
            if (seg.contains("end")) s.end = seg.at("end").get<double>();
            if (seg.contains("step_stddev")) s.step_stddev = seg.at("step_stddev").get<double>();
            if (seg.contains("high")) s.high = seg.at("high").get<double>();
            if (seg.contains("low")) s.low = seg.at("low").get<double>();
            segments.push_back(s);
        }
        const BandwidthTrace trace =
            generate_trace(segments, spec.band, spec.seed, spec.resolution_s);
        save_trace_csv(trace, out_path);
        std::printf("wrote %s (%zu samples)\n", out_path.c_str(), trace.samples.size());
    } catch (const AveryError& e) {
        fail(e, 1);
    }
    return 0;
}

int cmd_validate_lut(const std::string& path) {
    try {
        const SystemLUT lut = load_lut_file(path);
        std::printf("%-16s %8s %10s %10s %10s\n", "tier", "ratio", "iou_orig", "iou_ft",
                    "size_mb");
        for (const TierSpec& tier : lut.tiers) {
            std::printf("%-16s %8.2f %10.2f %10.2f %10.2f\n",
                        std::string(tier_name_string(tier.name)).c_str(),
                        tier.compression_ratio, tier.accuracy_original, tier.accuracy_finetuned,
                        tier.data_size_mb);
        }
        std::printf("bandwidth_threshold_mbps %.6g\n", lut.bandwidth_threshold_mbps);
        if (lut.has_min_insight_pps) {
            std::printf("min_insight_pps %.6g\n", lut.min_insight_pps);
        }
    } catch (const AveryError& e) {
        fail(e, 1);
    }
    return 0;
}

int cmd_derive_threshold(double size_mb, double pps) {
    try {
        std::printf("%g\n", derive_threshold(size_mb, pps));
    } catch (const AveryError& e) {
        fail(e, 1);
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Split-computing mission simulator"};
    app.require_subcommand(1);

    std::string scenario_path;
    std::string out_dir = "out";
    bool plot = false;

    auto* run = app.add_subcommand("run", "Run one scenario and write timeline/summary CSVs");
    run->add_option("scenario", scenario_path, "scenario JSON file")->required();
    run->add_option("--out", out_dir, "output directory (default: out)");
    run->add_flag("--plot", plot, "also write SVG charts");

    auto* compare =
        app.add_subcommand("compare", "Run the adaptive policy plus the three static baselines");
    compare->add_option("scenario", scenario_path, "scenario JSON file")->required();
    compare->add_option("--out", out_dir, "output directory (default: out)");
    compare->add_flag("--plot", plot, "also write SVG charts");

    double sweep_from = 8.0, sweep_to = 20.0, sweep_step = 1.0, sweep_duration = 300.0;
    std::string sweep_goal = "prioritize_accuracy";
    std::string sweep_lut = "data/table1.lut.json";
    auto* sweep = app.add_subcommand("sweep",
                                     "Run all policies over a constant-bandwidth grid and write "
                                     "the accuracy/throughput frontier");
    sweep->add_option("--from", sweep_from, "first bandwidth in Mbps (default 8)");
    sweep->add_option("--to", sweep_to, "last bandwidth in Mbps (default 20)");
    sweep->add_option("--step", sweep_step, "grid step in Mbps (default 1)");
    sweep->add_option("--goal", sweep_goal, "mission goal (default prioritize_accuracy)");
    sweep->add_option("--duration", sweep_duration, "mission seconds per point (default 300)");
    sweep->add_option("--lut", sweep_lut, "LUT file (default data/table1.lut.json)");
    sweep->add_option("--out", out_dir, "output directory (default: out)");
    sweep->add_flag("--plot", plot, "also write the frontier SVG");

    std::string trace_spec_path, trace_out_path = "trace.csv";
    auto* gen = app.add_subcommand("gen-trace", "Generate a bandwidth trace CSV from a spec");
    gen->add_option("--spec", trace_spec_path, "trace spec or scenario JSON")->required();
    gen->add_option("--out", trace_out_path, "output CSV path (default trace.csv)");

    std::string lut_path;
    auto* validate = app.add_subcommand("validate-lut", "Validate and print a LUT file");
    validate->add_option("lut", lut_path, "LUT JSON file")->required();

    double size_mb = 0.0, pps = 0.0;
    auto* derive = app.add_subcommand("derive-threshold",
                                      "Print the bandwidth viability threshold in Mbps");
    derive->add_option("--size-mb", size_mb, "payload size in MB")->required();
    derive->add_option("--pps", pps, "minimum insight rate in packets/second")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "ERROR E_PARSE: " << e.what() << "\n";
        return 1;
    }

    if (run->parsed()) return cmd_run(scenario_path, out_dir, plot);
    if (compare->parsed()) return cmd_compare(scenario_path, out_dir, plot);
    if (sweep->parsed()) {
        return cmd_sweep(sweep_from, sweep_to, sweep_step, sweep_goal, sweep_duration,
                         sweep_lut, out_dir, plot);
    }
    if (gen->parsed()) return cmd_gen_trace(trace_spec_path, trace_out_path);
    if (validate->parsed()) return cmd_validate_lut(lut_path);
    if (derive->parsed()) return cmd_derive_threshold(size_mb, pps);
    return 1;
}
