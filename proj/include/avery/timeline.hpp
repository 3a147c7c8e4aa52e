#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "avery/controller.hpp"
#include "avery/link.hpp"
#include "avery/packet.hpp"

namespace avery {

// One controller decision taken at a Sense event.
struct DecisionRecord {
    double t_s = 0.0;
    double bandwidth_mbps = 0.0;
    ControllerDecision decision;
};

// One timeline CSV row. Optional fields render as empty cells.
struct TimelineRow {
    double t_s = 0.0;
    EventKind event = EventKind::Sense;
    std::optional<StreamKind> stream;
    std::optional<TierName> tier;
    std::optional<DatasetKind> dataset;
    std::optional<std::uint64_t> packet_id;
    std::optional<double> size_mb;
    std::optional<double> bandwidth_mbps;
    std::optional<double> target_pps;
    std::optional<double> energy_j;
};

// Complete record of one mission run.
struct MissionTimeline {
    std::vector<TimelineRow> rows;
    std::vector<Packet> packets; // indexed by packet id
    std::vector<DecisionRecord> decisions;
    double duration_s = 0.0;
};

} // namespace avery
