#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "avery/errors.hpp"

namespace avery {

// Piecewise-constant (sample-and-hold) bandwidth signal. samples[k] holds on
// [k * resolution_s, (k + 1) * resolution_s).
struct BandwidthTrace {
    double resolution_s = 1.0;
    std::vector<double> samples;
    std::uint64_t seed = 0; // 0 when loaded from a file

    double duration_s() const { return resolution_s * static_cast<double>(samples.size()); }
};

enum class SegmentKind { Constant, LinearRamp, RandomWalk, StepDrop };

std::string_view segment_kind_string(SegmentKind kind);
SegmentKind parse_segment_kind(std::string_view text); // throws Parse

// One scripted regime of the link emulation. Parameter use by kind:
//   Constant:   level
//   LinearRamp: start, end
//   RandomWalk: start, step_stddev (Gaussian steps, clamped into the band)
//   StepDrop:   high for the first half of the segment, low for the rest
struct TraceSegmentSpec {
    SegmentKind kind = SegmentKind::Constant;
    double duration_s = 0.0;
    double level = 0.0;
    double start = 0.0;
    double end = 0.0;
    double step_stddev = 0.0;
    double high = 0.0;
    double low = 0.0;
};

struct Band {
    double min_mbps = 8.0;
    double max_mbps = 20.0;
};

// Deterministic for fixed (segments, band, seed, resolution); every sample is
// clamped into the band. Each segment draws from its own SplitMix64 substream.
BandwidthTrace generate_trace(const std::vector<TraceSegmentSpec>& segments, Band band,
                              std::uint64_t seed, double resolution_s = 1.0);

// Sample-and-hold lookup; valid for 0 <= t_s < duration.
double bandwidth_at(const BandwidthTrace& trace, double t_s);

// Integral of bandwidth over [t0_s, t1_s] in megabits, 0 <= t0 <= t1 <= duration.
double integrate_megabits(const BandwidthTrace& trace, double t0_s, double t1_s);

// Earliest t' >= t_start_s with integrate_megabits(trace, t_start_s, t') ==
// megabits. Returns a negative value when the trace ends first.
double solve_transfer_completion(const BandwidthTrace& trace, double t_start_s,
                                 double megabits);

// Two-column CSV `time_s,bandwidth_mbps`; loader validates uniform
// monotonically increasing time steps.
BandwidthTrace load_trace_csv(const std::string& path);
void save_trace_csv(const BandwidthTrace& trace, const std::string& path);

} // namespace avery
