#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <functional>

#include "avery/lut.hpp"
#include "avery/profile.hpp"
#include "avery/rng.hpp"

using namespace avery;

namespace {

SystemLUT table1() {
    return load_lut_file(std::string(AVERY_DATA_DIR) + "/table1.lut.json");
}

std::string tweak_table1(const std::function<void(SystemLUT&)>& mutate) {
    SystemLUT lut = table1();
    mutate(lut);
    return serialize_lut(lut);
}

} // namespace

TEST_CASE("bundled table1 LUT loads with the published values") {
    const SystemLUT lut = table1();
    CHECK(lut.tier(TierName::HighAccuracy).compression_ratio == doctest::Approx(0.25));
    CHECK(lut.tier(TierName::Balanced).compression_ratio == doctest::Approx(0.10));
    CHECK(lut.tier(TierName::HighThroughput).compression_ratio == doctest::Approx(0.05));
    CHECK(lut.tier(TierName::HighAccuracy).accuracy_original == doctest::Approx(84.42));
    CHECK(lut.tier(TierName::Balanced).accuracy_original == doctest::Approx(82.89));
    CHECK(lut.tier(TierName::HighThroughput).accuracy_original == doctest::Approx(80.67));
    CHECK(lut.tier(TierName::HighAccuracy).accuracy_finetuned == doctest::Approx(81.12));
    CHECK(lut.tier(TierName::Balanced).accuracy_finetuned == doctest::Approx(79.20));
    CHECK(lut.tier(TierName::HighThroughput).accuracy_finetuned == doctest::Approx(78.48));
    CHECK(lut.tier(TierName::HighAccuracy).data_size_mb == doctest::Approx(2.92));
    CHECK(lut.tier(TierName::Balanced).data_size_mb == doctest::Approx(1.35));
    CHECK(lut.tier(TierName::HighThroughput).data_size_mb == doctest::Approx(0.83));
    CHECK(lut.bandwidth_threshold_mbps == doctest::Approx(11.68));
    CHECK(lut.has_min_insight_pps);
}

TEST_CASE("stored threshold equals the derived one exactly for table1") {
    const SystemLUT lut = table1();
    // Not just approximately: the derivation 2.92 * 8 * 0.5 only scales by
    // powers of two, so it must reproduce the stored double bit-for-bit.
    CHECK(derive_threshold(2.92, 0.5) == lut.bandwidth_threshold_mbps);
}

TEST_CASE("load_lut rejects a non-decreasing balanced data size") {
    const std::string doc = tweak_table1([](SystemLUT& lut) {
        lut.tiers[1].data_size_mb = 3.0; // above high_accuracy's 2.92
        lut.has_min_insight_pps = false;
    });
    try {
        load_lut_text(doc);
        FAIL("expected MonotonicityViolation");
    } catch (const AveryError& e) {
        CHECK(e.code() == ErrorCode::MonotonicityViolation);
        CHECK(e.detail().find("data_size_mb") != std::string::npos);
    }
}

TEST_CASE("load_lut reports the missing tier by name") {
    const std::string doc = R"({
      "tiers": [
        {"name": "high_accuracy", "compression_ratio": 0.25,
         "accuracy_original": 84.42, "accuracy_finetuned": 81.12, "data_size_mb": 2.92},
        {"name": "balanced", "compression_ratio": 0.10,
         "accuracy_original": 82.89, "accuracy_finetuned": 79.20, "data_size_mb": 1.35}
      ],
      "bandwidth_threshold_mbps": 11.68
    })";
    try {
        load_lut_text(doc);
        FAIL("expected MissingTier");
    } catch (const AveryError& e) {
        CHECK(e.code() == ErrorCode::MissingTier);
        CHECK(e.detail().find("high_throughput") != std::string::npos);
    }
}

TEST_CASE("load_lut rejects duplicated tiers") {
    const std::string doc = R"({
      "tiers": [
        {"name": "high_accuracy", "compression_ratio": 0.25,
         "accuracy_original": 84.42, "accuracy_finetuned": 81.12, "data_size_mb": 2.92},
        {"name": "high_accuracy", "compression_ratio": 0.20,
         "accuracy_original": 83.00, "accuracy_finetuned": 80.00, "data_size_mb": 2.00},
        {"name": "balanced", "compression_ratio": 0.10,
         "accuracy_original": 82.89, "accuracy_finetuned": 79.20, "data_size_mb": 1.35}
      ],
      "bandwidth_threshold_mbps": 11.68
    })";
    try {
        load_lut_text(doc);
        FAIL("expected DuplicateTier");
    } catch (const AveryError& e) {
        CHECK(e.code() == ErrorCode::DuplicateTier);
    }
}

TEST_CASE("load_lut rejects non-positive fields and names the field") {
    const std::string doc = tweak_table1([](SystemLUT& lut) {
        lut.tiers[2].data_size_mb = 0.0;
        lut.has_min_insight_pps = false;
    });
    try {
        load_lut_text(doc);
        FAIL("expected NonPositiveField");
    } catch (const AveryError& e) {
        CHECK(e.code() == ErrorCode::NonPositiveField);
        CHECK(e.detail().find("high_throughput.data_size_mb") != std::string::npos);
    }
}

TEST_CASE("load_lut rejects a threshold that disagrees with its derivation") {
    const std::string doc = tweak_table1([](SystemLUT& lut) {
        lut.bandwidth_threshold_mbps = 12.0; // derived is 11.68
    });
    try {
        load_lut_text(doc);
        FAIL("expected InvalidLut");
    } catch (const AveryError& e) {
        CHECK(e.code() == ErrorCode::InvalidLut);
    }
}

TEST_CASE("derive_threshold matches the published and hand-computed points") {
    CHECK(derive_threshold(2.92, 0.5) == doctest::Approx(11.68).epsilon(1e-12));
    CHECK(derive_threshold(1.0, 1.0) == doctest::Approx(8.0).epsilon(1e-12));
    CHECK(derive_threshold(0.83, 0.5) == doctest::Approx(3.32).epsilon(1e-12));
    CHECK_THROWS_AS(derive_threshold(0.0, 0.5), AveryError);
    CHECK_THROWS_AS(derive_threshold(2.92, -1.0), AveryError);
}

TEST_CASE("derive_threshold is linear in both arguments") {
    SplitMix64 rng(99);
    for (int i = 0; i < 200; ++i) {
        const double size = 0.05 + 10.0 * rng.next_unit();
        const double pps = 0.05 + 5.0 * rng.next_unit();
        CHECK(derive_threshold(2.0 * size, pps) ==
              doctest::Approx(2.0 * derive_threshold(size, pps)).epsilon(1e-12));
        CHECK(derive_threshold(size, 2.0 * pps) ==
              doctest::Approx(2.0 * derive_threshold(size, pps)).epsilon(1e-12));
    }
}

TEST_CASE("serialize/load round-trips random valid LUTs exactly") {
    SplitMix64 rng(4242);
    for (int i = 0; i < 100; ++i) {
        SystemLUT lut;
        // Strictly decreasing draws per column keep the LUT valid.
        double ratio = 0.9, acc_o = 95.0, acc_f = 90.0, size = 8.0;
        for (std::size_t t = 0; t < kTierCount; ++t) {
            TierSpec spec;
            spec.name = kTierOrder[t];
            spec.compression_ratio = ratio;
            spec.accuracy_original = acc_o;
            spec.accuracy_finetuned = acc_f;
            spec.data_size_mb = size;
            lut.tiers[t] = spec;
            ratio *= 0.3 + 0.5 * rng.next_unit();
            acc_o -= 0.5 + 5.0 * rng.next_unit();
            acc_f -= 0.5 + 5.0 * rng.next_unit();
            size *= 0.2 + 0.6 * rng.next_unit();
        }
        lut.bandwidth_threshold_mbps = derive_threshold(lut.tiers[0].data_size_mb, 0.5);
        lut.min_insight_pps = 0.5;
        lut.has_min_insight_pps = true;
        validate_lut(lut);

        const SystemLUT reloaded = load_lut_text(serialize_lut(lut));
        CHECK(reloaded == lut);
    }
}

TEST_CASE("stage profile defaults encode the calibration arithmetic") {
    const StageProfile profile;
    validate_profile(profile);
    // 3.12 J is a 93.98% cut from full edge execution: 3.12 / (1 - 0.9398).
    CHECK(3.12 / (1.0 - 0.9398) == doctest::Approx(51.83).epsilon(1e-4));
    CHECK(1.0 - profile.insight_energy_j / profile.full_edge_energy_j ==
          doctest::Approx(0.9398).epsilon(1e-4));
    // Context stage: 6.4x faster, energy scaled by the same factor.
    CHECK(profile.context_compute_latency_s() == doctest::Approx(0.5 / 6.4).epsilon(1e-12));
    CHECK(profile.context_energy_j == doctest::Approx(0.4875).epsilon(1e-12));
    CHECK(profile.insight_energy_j < profile.full_edge_energy_j);
}

TEST_CASE("stage profile validation rejects an insight energy above full edge") {
    StageProfile profile;
    profile.insight_energy_j = 60.0;
    CHECK_THROWS_AS(validate_profile(profile), AveryError);
}
