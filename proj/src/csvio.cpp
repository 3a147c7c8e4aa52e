#include "avery/csvio.hpp"

#include <cstdio>
#include <fstream>

namespace avery {

std::string format_fixed(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.6f", value);
    return buffer;
}

namespace {

std::string cell(const std::optional<double>& value) {
    return value ? format_fixed(*value) : std::string();
}

} // namespace

std::string timeline_csv(const MissionTimeline& timeline) {
    std::string out =
        "t_s,event,stream,tier,dataset,packet_id,size_mb,bandwidth_mbps,target_pps,energy_j\n";
    for (const TimelineRow& row : timeline.rows) {
        out += format_fixed(row.t_s);
        out += ',';
        out += event_kind_string(row.event);
        out += ',';
        if (row.stream) out += stream_kind_string(*row.stream);
        out += ',';
        if (row.tier) out += tier_name_string(*row.tier);
        out += ',';
        if (row.dataset) out += dataset_kind_string(*row.dataset);
        out += ',';
        if (row.packet_id) out += std::to_string(*row.packet_id);
        out += ',';
        out += cell(row.size_mb);
        out += ',';
        out += cell(row.bandwidth_mbps);
        out += ',';
        out += cell(row.target_pps);
        out += ',';
        out += cell(row.energy_j);
        out += '\n';
    }
    return out;
}

std::string summary_csv(const std::vector<MissionSummary>& summaries) {
    std::string out = "policy,goal,avg_iou,avg_pps,total_energy_j,switches\n";
    for (const MissionSummary& summary : summaries) {
        out += policy_kind_string(summary.policy);
        out += ',';
        out += mission_goal_string(summary.goal);
        out += ',';
        out += format_fixed(summary.avg_iou_percent);
        out += ',';
        out += format_fixed(summary.avg_pps);
        out += ',';
        out += format_fixed(summary.total_energy_j);
        out += ',';
        out += std::to_string(summary.tier_switch_count);
        out += '\n';
    }
    return out;
}

std::string frontier_csv(const std::vector<FrontierPoint>& points) {
    std::string out = "bandwidth_mbps,policy,avg_iou,avg_pps\n";
    for (const FrontierPoint& point : points) {
        out += format_fixed(point.bandwidth_mbps);
        out += ',';
        out += policy_kind_string(point.policy);
        out += ',';
        out += format_fixed(point.avg_iou);
        out += ',';
        out += format_fixed(point.avg_pps);
        out += '\n';
    }
    return out;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw AveryError(ErrorCode::Io, "cannot write '" + path + "'");
    }
    out << content;
}

} // namespace avery
