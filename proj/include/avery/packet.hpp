#pragma once

#include <cstdint>
#include <optional>
#include <string_view>

#include "avery/lut.hpp"

namespace avery {

enum class StreamKind { Context, Insight };

constexpr std::string_view stream_kind_string(StreamKind kind) {
    return kind == StreamKind::Context ? "context" : "insight";
}

// Which profiling column a frame is scored against under the round-robin
// frame source.
enum class DatasetKind { Original, Finetuned };

constexpr std::string_view dataset_kind_string(DatasetKind kind) {
    return kind == DatasetKind::Original ? "original" : "finetuned";
}

// One transmission unit. tier is present iff stream == Insight.
// Timestamps are seconds since mission start; unset stages are negative.
struct Packet {
    std::uint64_t id = 0;
    StreamKind stream = StreamKind::Context;
    std::optional<TierName> tier;
    double size_mb = 0.0;
    DatasetKind dataset = DatasetKind::Original;
    double t_capture_s = -1.0;
    double t_compute_done_s = -1.0;
    double t_tx_start_s = -1.0;
    double t_tx_done_s = -1.0;

    bool delivered() const { return t_tx_done_s >= 0.0; }
};

struct AccuracySample {
    std::uint64_t packet_id = 0;
    double iou_percent = 0.0;
};

} // namespace avery
