#include "elfscan/hazard.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

#include "elfscan/stats.hpp"

namespace elfscan {

double unit_to_microtesla(Unit unit) {
    switch (unit) {
        case Unit::NanoTesla: return 1e-3;
        case Unit::MicroTesla: return 1.0;
        case Unit::MilliTesla: return 1e3;
        case Unit::Tesla: return 1e6;
    }
    throw InvalidInputError("unknown unit");
}

Unit unit_from_string(std::string_view text) {
    if (text == "nT") return Unit::NanoTesla;
    if (text == "uT") return Unit::MicroTesla;
    if (text == "mT") return Unit::MilliTesla;
    if (text == "T") return Unit::Tesla;
    throw UnitError("unknown unit '" + std::string(text) + "'");
}

std::string to_string(Unit unit) {
    switch (unit) {
        case Unit::NanoTesla: return "nT";
        case Unit::MicroTesla: return "uT";
        case Unit::MilliTesla: return "mT";
        case Unit::Tesla: return "T";
    }
    return "?";
}

SafetyStandard SafetyStandard::fixed(double limit_uT) {
    SafetyStandard s;
    s.kind = StandardKind::FixedLimit;
    s.limit_uT = limit_uT;
    return s;
}

SafetyStandard SafetyStandard::icnirp_public(double frequency_hz, Unit unit) {
    SafetyStandard s;
    s.kind = StandardKind::IcnirpPublic;
    s.frequency_hz = frequency_hz;
    s.icnirp_unit = unit;
    return s;
}

SafetyStandard SafetyStandard::icnirp_occupational(double frequency_hz, Unit unit) {
    SafetyStandard s;
    s.kind = StandardKind::IcnirpOccupational;
    s.frequency_hz = frequency_hz;
    s.icnirp_unit = unit;
    return s;
}

SafetyStandard SafetyStandard::tco2() {
    SafetyStandard s;
    s.kind = StandardKind::Tco2;
    return s;
}

SafetyStandard parse_standard(const std::string& spec, double frequency_hz, Unit icnirp_unit) {
    if (spec.rfind("fixed:", 0) == 0) {
        const std::string value = spec.substr(6);
        char* end = nullptr;
        const double limit = std::strtod(value.c_str(), &end);
        if (end == value.c_str() || *end != '\0' || !std::isfinite(limit) || limit <= 0.0) {
            throw InvalidStandardError("bad fixed limit '" + value + "'");
        }
        return SafetyStandard::fixed(limit);
    }
    if (spec == "icnirp-public") return SafetyStandard::icnirp_public(frequency_hz, icnirp_unit);
    if (spec == "icnirp-occupational") {
        return SafetyStandard::icnirp_occupational(frequency_hz, icnirp_unit);
    }
    if (spec == "tco2") return SafetyStandard::tco2();
    throw InvalidStandardError("unknown standard '" + spec +
                               "' (expected fixed:<uT>, icnirp-public, "
                               "icnirp-occupational or tco2)");
}

double limit_for(const SafetyStandard& standard) {
    switch (standard.kind) {
        case StandardKind::FixedLimit:
            if (!std::isfinite(standard.limit_uT) || standard.limit_uT <= 0.0) {
                throw InvalidStandardError("fixed limit must be positive");
            }
            return standard.limit_uT;
        case StandardKind::IcnirpPublic:
        case StandardKind::IcnirpOccupational: {
            if (!std::isfinite(standard.frequency_hz) || standard.frequency_hz <= 0.0) {
                throw InvalidStandardError("ICNIRP limits require a positive frequency");
            }
            const double quotient = standard.kind == StandardKind::IcnirpPublic ? 5.0 : 25.0;
            return quotient / standard.frequency_hz * unit_to_microtesla(standard.icnirp_unit);
        }
        case StandardKind::Tco2:
            return 0.025;  // 25 nT
    }
    throw InvalidStandardError("unknown standard kind");
}

PointClass classify_point(double value_uT, double limit_uT) {
    return value_uT > limit_uT ? PointClass::Dangerous : PointClass::NonDangerous;
}

std::vector<HazardLabel> label_clusters(const std::vector<double>& data,
                                        const ClusteringResult& result, double limit_uT) {
    const int k = static_cast<int>(result.centroids.size());
    if (k == 0) throw InvalidInputError("result has no clusters");
    if (result.assignments.size() != data.size()) {
        throw InvalidInputError("assignments and data differ in length");
    }
    for (int j = 1; j < k; ++j) {
        if (result.centroids[static_cast<std::size_t>(j)] >
            result.centroids[static_cast<std::size_t>(j - 1)]) {
            throw InvalidInputError("centroids must be sorted descending");
        }
    }

    static const char* kFiveNames[] = {"High", "LowHigh", "Middle", "Safe", "VerySafe"};
    std::vector<HazardLabel> labels(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        auto& label = labels[static_cast<std::size_t>(j)];
        label.name = k == 5 ? kFiveNames[j] : "Rank" + std::to_string(j + 1);
        label.centroid_uT = result.centroids[static_cast<std::size_t>(j)];
    }

    std::vector<bool> seen(static_cast<std::size_t>(k), false);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int a = result.assignments[i];
        if (a < 0 || a >= k) throw InvalidInputError("assignment index outside 0..k-1");
        auto& label = labels[static_cast<std::size_t>(a)];
        if (!seen[static_cast<std::size_t>(a)]) {
            label.min_uT = label.max_uT = data[i];
            seen[static_cast<std::size_t>(a)] = true;
        } else {
            label.min_uT = std::min(label.min_uT, data[i]);
            label.max_uT = std::max(label.max_uT, data[i]);
        }
        label.count++;
    }

    for (auto& label : labels) {
        if (label.count == 0) throw InvalidInputError("cluster without members");
        const bool all_above = label.min_uT > limit_uT;
        const bool any_above = label.max_uT > limit_uT;
        label.mixed = any_above && !all_above;
        // A straddling cluster is treated as dangerous.
        label.dangerous = any_above;
    }
    return labels;
}

ZoneReport zone_summary(const SurveyDataset& dataset, double limit_uT) {
    ZoneReport report;
    if (dataset.records.empty()) return report;

    std::map<int, std::vector<double>> values_by_point;
    for (const auto& rec : dataset.records) {
        values_by_point[rec.point.index].push_back(rec.feature_value());
    }

    for (const auto& [index, values] : values_by_point) {
        ZoneStats stats;
        stats.point_id = MeasurementPoint(dataset.side, index).id();
        stats.peak_uT = *std::max_element(values.begin(), values.end());
        stats.median_uT = median_of(values);
        for (double v : values) {
            if (classify_point(v, limit_uT) == PointClass::Dangerous) {
                stats.dangerous_count++;
            } else {
                stats.safe_count++;
            }
        }
        report.points.push_back(std::move(stats));
    }

    // Rank by dangerous count, then peak, then point index.
    std::vector<std::size_t> order(report.points.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const ZoneStats& za = report.points[a];
        const ZoneStats& zb = report.points[b];
        if (za.dangerous_count != zb.dangerous_count) {
            return za.dangerous_count > zb.dangerous_count;
        }
        if (za.peak_uT != zb.peak_uT) return za.peak_uT > zb.peak_uT;
        return a < b;  // points are already in index order
    });
    for (std::size_t i : order) report.dangerous_ranking.push_back(report.points[i].point_id);
    return report;
}

}  // namespace elfscan
