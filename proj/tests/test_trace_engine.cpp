#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <filesystem>

#include "avery/rng.hpp"
#include "avery/trace.hpp"

using namespace avery;

namespace {

BandwidthTrace constant_trace(double level, std::size_t samples, double resolution = 1.0) {
    BandwidthTrace trace;
    trace.resolution_s = resolution;
    trace.samples.assign(samples, level);
    return trace;
}

// Independent integration oracle: brute-force Riemann sum on a fine grid.
double riemann_megabits(const BandwidthTrace& trace, double t0, double t1, int steps = 200000) {
    double total = 0.0;
    const double dt = (t1 - t0) / steps;
    for (int i = 0; i < steps; ++i) {
        const double t = t0 + (i + 0.5) * dt;
        total += bandwidth_at(trace, std::min(t, trace.duration_s() - 1e-12)) * dt;
    }
    return total;
}

} // namespace

TEST_CASE("constant segment produces identical samples") {
    const BandwidthTrace trace =
        generate_trace({{SegmentKind::Constant, 60.0, 12.0, 0, 0, 0, 0, 0}}, {8.0, 20.0}, 1, 1.0);
    REQUIRE(trace.samples.size() == 60);
    for (double sample : trace.samples) CHECK(sample == 12.0);
}

TEST_CASE("random walk stays in band and regenerates identically for a seed") {
    const std::vector<TraceSegmentSpec> segments = {
        {SegmentKind::RandomWalk, 600.0, 0, 14.0, 0, 2.0, 0, 0}};
    const BandwidthTrace a = generate_trace(segments, {8.0, 20.0}, 42, 1.0);
    const BandwidthTrace b = generate_trace(segments, {8.0, 20.0}, 42, 1.0);
    REQUIRE(a.samples.size() == 600);
    CHECK(a.samples == b.samples);
    CHECK(*std::min_element(a.samples.begin(), a.samples.end()) >= 8.0);
    CHECK(*std::max_element(a.samples.begin(), a.samples.end()) <= 20.0);

    const BandwidthTrace c = generate_trace(segments, {8.0, 20.0}, 43, 1.0);
    CHECK(a.samples != c.samples);
}

TEST_CASE("step drop splits the segment between high and low levels") {
    const BandwidthTrace trace =
        generate_trace({{SegmentKind::StepDrop, 10.0, 0, 0, 0, 0, 18.0, 9.0}}, {8.0, 20.0}, 0);
    REQUIRE(trace.samples.size() == 10);
    for (std::size_t k = 0; k < 5; ++k) CHECK(trace.samples[k] == 18.0);
    for (std::size_t k = 5; k < 10; ++k) CHECK(trace.samples[k] == 9.0);
}

TEST_CASE("generate_trace rejects empty segments and inverted bands") {
    CHECK_THROWS_AS(generate_trace({}, {8.0, 20.0}, 0), AveryError);
    CHECK_THROWS_AS(
        generate_trace({{SegmentKind::Constant, 10.0, 12.0, 0, 0, 0, 0, 0}}, {20.0, 8.0}, 0),
        AveryError);
}

TEST_CASE("bandwidth_at holds each sample over its interval") {
    const BandwidthTrace trace = constant_trace(12.0, 60);
    CHECK(bandwidth_at(trace, 5.7) == 12.0);

    BandwidthTrace two = constant_trace(10.0, 2);
    two.samples[1] = 16.0;
    CHECK(bandwidth_at(two, 0.999999) == 10.0);
    CHECK(bandwidth_at(two, 1.0) == 16.0); // boundary belongs to the later sample

    CHECK_THROWS_AS(bandwidth_at(two, 2.0), AveryError); // exclusive upper bound
    CHECK_THROWS_AS(bandwidth_at(two, -0.1), AveryError);
    try {
        bandwidth_at(two, two.duration_s() + 1.0);
        FAIL("expected OutOfTraceRange");
    } catch (const AveryError& e) {
        CHECK(e.code() == ErrorCode::OutOfTraceRange);
    }
}

TEST_CASE("integrate_megabits matches hand-computed rectangles") {
    const BandwidthTrace trace = constant_trace(12.0, 10);
    CHECK(integrate_megabits(trace, 0.0, 2.0) == doctest::Approx(24.0).epsilon(1e-12));
    CHECK(integrate_megabits(trace, 3.0, 3.0) == 0.0);

    BandwidthTrace two = constant_trace(8.0, 2);
    two.samples[1] = 20.0;
    // Two half rectangles: 0.5*8 + 0.5*20.
    CHECK(integrate_megabits(two, 0.5, 1.5) == doctest::Approx(14.0).epsilon(1e-12));

    CHECK_THROWS_AS(integrate_megabits(two, 1.5, 0.5), AveryError);
    CHECK_THROWS_AS(integrate_megabits(two, 0.0, 3.0), AveryError);
}

TEST_CASE("integral is additive and consistent with the lookup") {
    SplitMix64 rng(2024);
    const BandwidthTrace trace = generate_trace(
        {{SegmentKind::RandomWalk, 120.0, 0, 13.0, 0, 1.5, 0, 0}}, {8.0, 20.0}, 5, 1.0);
    for (int i = 0; i < 200; ++i) {
        double t0 = trace.duration_s() * rng.next_unit();
        double t1 = trace.duration_s() * rng.next_unit();
        double t2 = trace.duration_s() * rng.next_unit();
        if (t0 > t1) std::swap(t0, t1);
        if (t1 > t2) std::swap(t1, t2);
        if (t0 > t1) std::swap(t0, t1);
        const double whole = integrate_megabits(trace, t0, t2);
        const double split =
            integrate_megabits(trace, t0, t1) + integrate_megabits(trace, t1, t2);
        CHECK(whole == doctest::Approx(split).epsilon(1e-9));
    }
    // Sample-aligned intervals: integral equals resolution * sum exactly.
    double sum = 0.0;
    for (std::size_t k = 10; k < 20; ++k) sum += trace.samples[k];
    CHECK(integrate_megabits(trace, 10.0, 20.0) == doctest::Approx(sum).epsilon(1e-12));
}

TEST_CASE("integral matches a brute-force Riemann oracle") {
    const BandwidthTrace trace = generate_trace(
        {{SegmentKind::RandomWalk, 40.0, 0, 12.0, 0, 2.5, 0, 0}}, {8.0, 20.0}, 11, 1.0);
    const double exact = integrate_megabits(trace, 3.25, 31.75);
    const double oracle = riemann_megabits(trace, 3.25, 31.75);
    CHECK(exact == doctest::Approx(oracle).epsilon(1e-4));
}

TEST_CASE("trace CSV round-trips through save and load") {
    const BandwidthTrace trace = generate_trace(
        {{SegmentKind::RandomWalk, 50.0, 0, 15.0, 0, 1.0, 0, 0}}, {8.0, 20.0}, 9, 1.0);
    const std::string path =
        (std::filesystem::temp_directory_path() / "avery_trace_roundtrip.csv").string();
    save_trace_csv(trace, path);
    const BandwidthTrace loaded = load_trace_csv(path);
    REQUIRE(loaded.samples.size() == trace.samples.size());
    CHECK(loaded.resolution_s == doctest::Approx(trace.resolution_s));
    for (std::size_t k = 0; k < trace.samples.size(); ++k) {
        CHECK(loaded.samples[k] == doctest::Approx(trace.samples[k]).epsilon(1e-6));
    }
    std::filesystem::remove(path);
}

TEST_CASE("trace loader rejects malformed files") {
    namespace fs = std::filesystem;
    const auto write = [](const std::string& path, const std::string& text) {
        std::FILE* f = std::fopen(path.c_str(), "wb");
        REQUIRE(f != nullptr);
        std::fwrite(text.data(), 1, text.size(), f);
        std::fclose(f);
    };
    const std::string bad_header = (fs::temp_directory_path() / "avery_bad_header.csv").string();
    write(bad_header, "time,bw\n0,12\n");
    CHECK_THROWS_AS(load_trace_csv(bad_header), AveryError);

    const std::string uneven = (fs::temp_directory_path() / "avery_uneven.csv").string();
    write(uneven, "time_s,bandwidth_mbps\n0.0,12\n1.0,13\n2.5,14\n");
    CHECK_THROWS_AS(load_trace_csv(uneven), AveryError);

    fs::remove(bad_header);
    fs::remove(uneven);
}

TEST_CASE("transfer completion solves the piecewise-constant drain in closed form") {
    // 2.92 MB at a constant 11.68 Mbps drains in exactly 2 s.
    const BandwidthTrace trace = constant_trace(11.68, 10);
    CHECK(solve_transfer_completion(trace, 0.0, 2.92 * 8.0) ==
          doctest::Approx(2.0).epsilon(1e-12));

    // 1 MB = 8 Mb completes exactly as the first 8 Mbps second ends.
    BandwidthTrace mixed = constant_trace(8.0, 3);
    mixed.samples[2] = 16.0;
    CHECK(solve_transfer_completion(mixed, 0.0, 8.0) == doctest::Approx(1.0).epsilon(1e-12));

    // Trace too short to finish: flagged with a negative completion.
    CHECK(solve_transfer_completion(mixed, 0.0, 1000.0) < 0.0);
}
