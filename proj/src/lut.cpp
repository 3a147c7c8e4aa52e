#include "avery/lut.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace avery {

namespace {

using nlohmann::json;

void require_positive(double value, std::string_view field) {
    if (!(value > 0.0) || !std::isfinite(value)) {
        throw AveryError(ErrorCode::NonPositiveField,
                         std::string(field) + " must be > 0");
    }
}

void require_strictly_decreasing(double hi, double lo, std::string_view field) {
    if (!(hi > lo)) {
        throw AveryError(ErrorCode::MonotonicityViolation,
                         std::string(field) +
                             " must strictly decrease from high_accuracy to high_throughput");
    }
}

} // namespace

std::string_view tier_name_string(TierName name) {
    switch (name) {
        case TierName::HighAccuracy: return "high_accuracy";
        case TierName::Balanced: return "balanced";
        case TierName::HighThroughput: return "high_throughput";
    }
    return "?";
}

TierName parse_tier_name(std::string_view text) {
    for (TierName name : kTierOrder) {
        if (text == tier_name_string(name)) return name;
    }
    throw AveryError(ErrorCode::Parse, "unknown tier name '" + std::string(text) + "'");
}

std::string_view mission_goal_string(MissionGoal goal) {
    switch (goal) {
        case MissionGoal::PrioritizeAccuracy: return "prioritize_accuracy";
        case MissionGoal::PrioritizeThroughput: return "prioritize_throughput";
    }
    return "?";
}

MissionGoal parse_mission_goal(std::string_view text) {
    if (text == "prioritize_accuracy") return MissionGoal::PrioritizeAccuracy;
    if (text == "prioritize_throughput") return MissionGoal::PrioritizeThroughput;
    throw AveryError(ErrorCode::Parse, "unknown mission goal '" + std::string(text) + "'");
}

const TierSpec& SystemLUT::tier(TierName name) const {
    for (const TierSpec& spec : tiers) {
        if (spec.name == name) return spec;
    }
    throw AveryError(ErrorCode::InvalidLut,
                     "tier '" + std::string(tier_name_string(name)) + "' not present");
}

double derive_threshold(double high_accuracy_size_mb, double min_insight_pps) {
    if (!(high_accuracy_size_mb > 0.0)) {
        throw AveryError(ErrorCode::NonPositiveInput, "high_accuracy_size_mb must be > 0");
    }
    if (!(min_insight_pps > 0.0)) {
        throw AveryError(ErrorCode::NonPositiveInput, "min_insight_pps must be > 0");
    }
    return high_accuracy_size_mb * 8.0 * min_insight_pps;
}

void validate_lut(const SystemLUT& lut) {
    std::array<int, kTierCount> seen{};
    for (const TierSpec& spec : lut.tiers) {
        seen[static_cast<std::size_t>(spec.name)]++;
    }
    for (std::size_t i = 0; i < kTierCount; ++i) {
        if (seen[i] == 0) {
            throw AveryError(ErrorCode::MissingTier,
                             "tier '" + std::string(tier_name_string(kTierOrder[i])) +
                                 "' missing");
        }
        if (seen[i] > 1) {
            throw AveryError(ErrorCode::DuplicateTier,
                             "tier '" + std::string(tier_name_string(kTierOrder[i])) +
                                 "' duplicated");
        }
    }
    for (std::size_t i = 0; i < kTierCount; ++i) {
        if (lut.tiers[i].name != kTierOrder[i]) {
            throw AveryError(ErrorCode::InvalidLut,
                             "tiers must be ordered high_accuracy, balanced, high_throughput");
        }
    }

    for (const TierSpec& spec : lut.tiers) {
        const std::string prefix = std::string(tier_name_string(spec.name)) + ".";
        require_positive(spec.compression_ratio, prefix + "compression_ratio");
        require_positive(spec.data_size_mb, prefix + "data_size_mb");
        if (spec.compression_ratio > 1.0) {
            throw AveryError(ErrorCode::InvalidLut,
                             prefix + "compression_ratio must be in (0, 1]");
        }
        for (auto [value, field] : {std::pair{spec.accuracy_original, "accuracy_original"},
                                    std::pair{spec.accuracy_finetuned, "accuracy_finetuned"}}) {
            if (!(value >= 0.0 && value <= 100.0)) {
                throw AveryError(ErrorCode::InvalidLut,
                                 prefix + field + " must be in [0, 100]");
            }
        }
    }

    const TierSpec& ha = lut.tiers[0];
    const TierSpec& bal = lut.tiers[1];
    const TierSpec& ht = lut.tiers[2];
    require_strictly_decreasing(ha.data_size_mb, bal.data_size_mb, "data_size_mb");
    require_strictly_decreasing(bal.data_size_mb, ht.data_size_mb, "data_size_mb");
    require_strictly_decreasing(ha.accuracy_original, bal.accuracy_original, "accuracy_original");
    require_strictly_decreasing(bal.accuracy_original, ht.accuracy_original, "accuracy_original");
    require_strictly_decreasing(ha.accuracy_finetuned, bal.accuracy_finetuned,
                                "accuracy_finetuned");
    require_strictly_decreasing(bal.accuracy_finetuned, ht.accuracy_finetuned,
                                "accuracy_finetuned");
    require_strictly_decreasing(ha.compression_ratio, bal.compression_ratio, "compression_ratio");
    require_strictly_decreasing(bal.compression_ratio, ht.compression_ratio, "compression_ratio");

    require_positive(lut.bandwidth_threshold_mbps, "bandwidth_threshold_mbps");
    if (lut.has_min_insight_pps) {
        require_positive(lut.min_insight_pps, "min_insight_pps");
        const double derived = derive_threshold(ha.data_size_mb, lut.min_insight_pps);
        if (std::fabs(derived - lut.bandwidth_threshold_mbps) > 1e-6) {
            std::ostringstream oss;
            oss << "bandwidth_threshold_mbps " << lut.bandwidth_threshold_mbps
                << " disagrees with derived value " << derived;
            throw AveryError(ErrorCode::InvalidLut, oss.str());
        }
    }
}

SystemLUT load_lut_text(const std::string& json_text) {
    json doc;
    try {
        doc = json::parse(json_text);
    } catch (const json::exception& e) {
        throw AveryError(ErrorCode::Parse, std::string("LUT JSON: ") + e.what());
    }

    SystemLUT lut;
    try {
        const auto& tiers = doc.at("tiers");
        if (!tiers.is_array()) {
            throw AveryError(ErrorCode::Parse, "'tiers' must be an array");
        }
        if (tiers.size() != kTierCount) {
            // Distinguish missing vs duplicated by name below when possible.
            if (tiers.size() < kTierCount) {
                std::array<bool, kTierCount> present{};
                for (const auto& t : tiers) {
                    present[static_cast<std::size_t>(
                        parse_tier_name(t.at("name").get<std::string>()))] = true;
                }
                for (std::size_t i = 0; i < kTierCount; ++i) {
                    if (!present[i]) {
                        throw AveryError(ErrorCode::MissingTier,
                                         "tier '" +
                                             std::string(tier_name_string(kTierOrder[i])) +
                                             "' missing");
                    }
                }
            }
            throw AveryError(ErrorCode::InvalidLut, "'tiers' must have exactly 3 entries");
        }
        std::size_t slot = 0;
        std::array<TierSpec, kTierCount> parsed{};
        std::array<int, kTierCount> seen{};
        for (const auto& t : tiers) {
            TierSpec spec;
            spec.name = parse_tier_name(t.at("name").get<std::string>());
            spec.compression_ratio = t.at("compression_ratio").get<double>();
            spec.accuracy_original = t.at("accuracy_original").get<double>();
            spec.accuracy_finetuned = t.at("accuracy_finetuned").get<double>();
            spec.data_size_mb = t.at("data_size_mb").get<double>();
            seen[static_cast<std::size_t>(spec.name)]++;
            parsed[slot++] = spec;
        }
        for (std::size_t i = 0; i < kTierCount; ++i) {
            if (seen[i] > 1) {
                throw AveryError(ErrorCode::DuplicateTier,
                                 "tier '" + std::string(tier_name_string(kTierOrder[i])) +
                                     "' duplicated");
            }
        }
        // Accept any input order; canonicalize to HighAccuracy, Balanced, HighThroughput.
        for (const TierSpec& spec : parsed) {
            lut.tiers[static_cast<std::size_t>(spec.name)] = spec;
        }
        lut.bandwidth_threshold_mbps = doc.at("bandwidth_threshold_mbps").get<double>();
        if (doc.contains("min_insight_pps")) {
            lut.min_insight_pps = doc.at("min_insight_pps").get<double>();
            lut.has_min_insight_pps = true;
        }
    } catch (const json::exception& e) {
        throw AveryError(ErrorCode::Parse, std::string("LUT JSON: ") + e.what());
    }

    validate_lut(lut);
    return lut;
}

SystemLUT load_lut_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw AveryError(ErrorCode::Io, "cannot open LUT file '" + path + "'");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return load_lut_text(buffer.str());
}

std::string serialize_lut(const SystemLUT& lut) {
    json doc;
    doc["tiers"] = json::array();
    for (const TierSpec& spec : lut.tiers) {
        doc["tiers"].push_back({{"name", std::string(tier_name_string(spec.name))},
                                {"compression_ratio", spec.compression_ratio},
                                {"accuracy_original", spec.accuracy_original},
                                {"accuracy_finetuned", spec.accuracy_finetuned},
                                {"data_size_mb", spec.data_size_mb}});
    }
    doc["bandwidth_threshold_mbps"] = lut.bandwidth_threshold_mbps;
    if (lut.has_min_insight_pps) {
        doc["min_insight_pps"] = lut.min_insight_pps;
    }
    return doc.dump(2) + "\n";
}

} // namespace avery
