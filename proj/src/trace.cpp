#include "avery/trace.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "avery/rng.hpp"

namespace avery {

namespace {

double clamp_to_band(double value, Band band) {
    return std::clamp(value, band.min_mbps, band.max_mbps);
}

std::size_t sample_index(const BandwidthTrace& trace, double t_s) {
    return static_cast<std::size_t>(std::floor(t_s / trace.resolution_s));
}

} // namespace

std::string_view segment_kind_string(SegmentKind kind) {
    switch (kind) {
        case SegmentKind::Constant: return "constant";
        case SegmentKind::LinearRamp: return "linear_ramp";
        case SegmentKind::RandomWalk: return "random_walk";
        case SegmentKind::StepDrop: return "step_drop";
    }
    return "?";
}

SegmentKind parse_segment_kind(std::string_view text) {
    if (text == "constant") return SegmentKind::Constant;
    if (text == "linear_ramp") return SegmentKind::LinearRamp;
    if (text == "random_walk") return SegmentKind::RandomWalk;
    if (text == "step_drop") return SegmentKind::StepDrop;
    throw AveryError(ErrorCode::Parse, "unknown segment kind '" + std::string(text) + "'");
}

BandwidthTrace generate_trace(const std::vector<TraceSegmentSpec>& segments, Band band,
                              std::uint64_t seed, double resolution_s) {
    if (segments.empty()) {
        throw AveryError(ErrorCode::EmptySegments, "trace needs at least one segment");
    }
    if (!(band.min_mbps < band.max_mbps)) {
        throw AveryError(ErrorCode::InvalidBand, "band.min must be below band.max");
    }
    if (!(resolution_s > 0.0)) {
        throw AveryError(ErrorCode::NonPositiveField, "resolution_s must be > 0");
    }

    BandwidthTrace trace;
    trace.resolution_s = resolution_s;
    trace.seed = seed;

    SplitMix64 master(seed);
    for (const TraceSegmentSpec& segment : segments) {
        SplitMix64 stream = master.split();
        if (!(segment.duration_s > 0.0)) {
            throw AveryError(ErrorCode::NonPositiveField, "segment duration_s must be > 0");
        }
        const auto count =
            static_cast<std::size_t>(std::llround(segment.duration_s / resolution_s));
        if (count == 0) {
            throw AveryError(ErrorCode::NonPositiveField,
                             "segment shorter than one trace resolution step");
        }
        switch (segment.kind) {
            case SegmentKind::Constant:
                for (std::size_t k = 0; k < count; ++k) {
                    trace.samples.push_back(clamp_to_band(segment.level, band));
                }
                break;
            case SegmentKind::LinearRamp:
                for (std::size_t k = 0; k < count; ++k) {
                    const double frac =
                        static_cast<double>(k) * resolution_s / segment.duration_s;
                    trace.samples.push_back(clamp_to_band(
                        segment.start + (segment.end - segment.start) * frac, band));
                }
                break;
            case SegmentKind::RandomWalk: {
                double value = clamp_to_band(segment.start, band);
                for (std::size_t k = 0; k < count; ++k) {
                    trace.samples.push_back(value);
                    value = clamp_to_band(
                        value + segment.step_stddev * next_gaussian(stream), band);
                }
                break;
            }
            case SegmentKind::StepDrop: {
                const std::size_t high_count = (count + 1) / 2;
                for (std::size_t k = 0; k < count; ++k) {
                    trace.samples.push_back(
                        clamp_to_band(k < high_count ? segment.high : segment.low, band));
                }
                break;
            }
        }
    }
    return trace;
}

double bandwidth_at(const BandwidthTrace& trace, double t_s) {
    if (t_s < 0.0 || t_s >= trace.duration_s()) {
        std::ostringstream oss;
        oss << "t=" << t_s << "s outside trace [0, " << trace.duration_s() << ")";
        throw AveryError(ErrorCode::OutOfTraceRange, oss.str());
    }
    return trace.samples[std::min(sample_index(trace, t_s), trace.samples.size() - 1)];
}

double integrate_megabits(const BandwidthTrace& trace, double t0_s, double t1_s) {
    if (t1_s < t0_s) {
        throw AveryError(ErrorCode::ReversedInterval, "t1 must be >= t0");
    }
    if (t0_s < 0.0 || t1_s > trace.duration_s()) {
        std::ostringstream oss;
        oss << "interval [" << t0_s << ", " << t1_s << "] outside trace [0, "
            << trace.duration_s() << "]";
        throw AveryError(ErrorCode::OutOfTraceRange, oss.str());
    }
    if (t0_s == t1_s) return 0.0;

    const double res = trace.resolution_s;
    double total = 0.0;
    std::size_t idx = sample_index(trace, t0_s);
    double cursor = t0_s;
    while (cursor < t1_s && idx < trace.samples.size()) {
        const double interval_end = std::min(t1_s, res * static_cast<double>(idx + 1));
        total += trace.samples[idx] * (interval_end - cursor);
        cursor = interval_end;
        ++idx;
    }
    return total;
}

double solve_transfer_completion(const BandwidthTrace& trace, double t_start_s,
                                 double megabits) {
    if (t_start_s < 0.0 || t_start_s > trace.duration_s()) {
        throw AveryError(ErrorCode::OutOfTraceRange, "transfer start outside trace");
    }
    if (megabits <= 0.0) return t_start_s;

    const double res = trace.resolution_s;
    double remaining = megabits;
    double cursor = t_start_s;
    std::size_t idx = sample_index(trace, t_start_s);
    while (idx < trace.samples.size()) {
        const double interval_end = res * static_cast<double>(idx + 1);
        const double rate = trace.samples[idx];
        const double capacity = rate * (interval_end - cursor);
        if (rate > 0.0 && capacity >= remaining) {
            return cursor + remaining / rate;
        }
        remaining -= capacity;
        cursor = interval_end;
        ++idx;
    }
    return -1.0; // trace exhausted before the transfer finished
}

BandwidthTrace load_trace_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw AveryError(ErrorCode::Io, "cannot open trace file '" + path + "'");
    }

    std::string line;
    if (!std::getline(in, line)) {
        throw AveryError(ErrorCode::Parse, "trace file is empty");
    }
    if (line != "time_s,bandwidth_mbps") {
        throw AveryError(ErrorCode::Parse,
                         "trace header must be 'time_s,bandwidth_mbps', got '" + line + "'");
    }

    BandwidthTrace trace;
    trace.seed = 0;
    std::vector<double> times;
    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const std::size_t comma = line.find(',');
        if (comma == std::string::npos) {
            throw AveryError(ErrorCode::Parse,
                             "trace line " + std::to_string(line_no) + " has no comma");
        }
        try {
            times.push_back(std::stod(line.substr(0, comma)));
            trace.samples.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::exception&) {
            throw AveryError(ErrorCode::Parse,
                             "trace line " + std::to_string(line_no) + " is not numeric");
        }
    }
    if (trace.samples.empty()) {
        throw AveryError(ErrorCode::Parse, "trace file has no samples");
    }

    trace.resolution_s = times.size() > 1 ? times[1] - times[0] : 1.0;
    if (!(trace.resolution_s > 0.0)) {
        throw AveryError(ErrorCode::Parse, "trace time steps must increase");
    }
    for (std::size_t k = 0; k < times.size(); ++k) {
        const double expected = trace.resolution_s * static_cast<double>(k) + times[0];
        if (std::fabs(times[k] - expected) > 1e-9) {
            throw AveryError(ErrorCode::Parse,
                             "trace time steps must be uniform; row " + std::to_string(k + 2) +
                                 " breaks the grid");
        }
    }
    if (std::fabs(times[0]) > 1e-9) {
        throw AveryError(ErrorCode::Parse, "trace must start at time_s = 0");
    }
    return trace;
}

void save_trace_csv(const BandwidthTrace& trace, const std::string& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw AveryError(ErrorCode::Io, "cannot write trace file '" + path + "'");
    }
    out << "time_s,bandwidth_mbps\n";
    char buffer[64];
    for (std::size_t k = 0; k < trace.samples.size(); ++k) {
        std::snprintf(buffer, sizeof(buffer), "%.6f,%.6f\n",
                      trace.resolution_s * static_cast<double>(k), trace.samples[k]);
        out << buffer;
    }
}

} // namespace avery
