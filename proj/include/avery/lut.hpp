#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <string_view>

#include "avery/errors.hpp"

namespace avery {

enum class TierName { HighAccuracy, Balanced, HighThroughput };

constexpr std::size_t kTierCount = 3;

constexpr std::array<TierName, kTierCount> kTierOrder = {
    TierName::HighAccuracy, TierName::Balanced, TierName::HighThroughput};

std::string_view tier_name_string(TierName name);
TierName parse_tier_name(std::string_view text); // throws Parse

enum class MissionGoal { PrioritizeAccuracy, PrioritizeThroughput };

std::string_view mission_goal_string(MissionGoal goal);
MissionGoal parse_mission_goal(std::string_view text); // throws Parse

// One operational tier: a pre-trained compression model's profile.
struct TierSpec {
    TierName name = TierName::HighAccuracy;
    double compression_ratio = 0.0;  // fraction of raw activation size, (0, 1]
    double accuracy_original = 0.0;  // average IoU %, base model
    double accuracy_finetuned = 0.0; // average IoU %, fine-tuned model
    double data_size_mb = 0.0;       // compressed payload size

    bool operator==(const TierSpec&) const = default;
};

// The controller's offline-profiled self-model: three tiers ordered
// HighAccuracy, Balanced, HighThroughput, plus the bandwidth viability
// threshold for the accuracy-prioritizing policy.
struct SystemLUT {
    std::array<TierSpec, kTierCount> tiers{};
    double bandwidth_threshold_mbps = 0.0;
    // Present when the threshold is declared as derived from the
    // HighAccuracy payload size and a minimum insight update rate.
    double min_insight_pps = 0.0;
    bool has_min_insight_pps = false;

    const TierSpec& tier(TierName name) const;

    bool operator==(const SystemLUT&) const = default;
};

// Viability threshold in Mbps for sustaining `min_insight_pps` packets per
// second of `high_accuracy_size_mb`-sized payloads: size * 8 * pps.
double derive_threshold(double high_accuracy_size_mb, double min_insight_pps);

// Validates tier ordering, field ranges, and threshold/derivation agreement.
// Throws MissingTier / DuplicateTier / MonotonicityViolation /
// NonPositiveField / InvalidLut with the offending field named.
void validate_lut(const SystemLUT& lut);

// Parse + validate a JSON LUT document (schema in README).
SystemLUT load_lut_text(const std::string& json_text);
SystemLUT load_lut_file(const std::string& path);

// Inverse of load_lut_text; load_lut_text(serialize_lut(lut)) == lut.
std::string serialize_lut(const SystemLUT& lut);

} // namespace avery
