#pragma once

#include <string>
#include <vector>

#include "avery/mission.hpp"
#include "avery/timeline.hpp"

namespace avery {

// Fixed 6-decimal rendering so CSV bytes are identical across platforms.
std::string format_fixed(double value);

std::string timeline_csv(const MissionTimeline& timeline);
std::string summary_csv(const std::vector<MissionSummary>& summaries);

struct FrontierPoint {
    double bandwidth_mbps = 0.0;
    PolicyKind policy = PolicyKind::Avery;
    double avg_iou = 0.0;
    double avg_pps = 0.0;
};

std::string frontier_csv(const std::vector<FrontierPoint>& points);

void write_text_file(const std::string& path, const std::string& content);

} // namespace avery
