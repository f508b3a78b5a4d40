#pragma once

#include <string>
#include <vector>

#include "elfscan/field_model.hpp"
#include "elfscan/kmedians.hpp"

namespace elfscan {

enum class Unit { NanoTesla, MicroTesla, MilliTesla, Tesla };

// Factor converting one unit to microtesla.
double unit_to_microtesla(Unit unit);
Unit unit_from_string(std::string_view text);  // "nT" | "uT" | "mT" | "T"
std::string to_string(Unit unit);

enum class StandardKind { FixedLimit, IcnirpPublic, IcnirpOccupational, Tco2 };

// A reference-limit rule. The ICNIRP quotients 5/f (general public) and
// 25/f (occupational) carry no unit of their own; icnirp_unit says how to
// read them (mT reproduces the published 100 uT level at 50 Hz).
struct SafetyStandard {
    StandardKind kind = StandardKind::FixedLimit;
    double limit_uT = 0.3;                     // FixedLimit only
    double frequency_hz = 50.0;                // ICNIRP kinds only
    Unit icnirp_unit = Unit::MilliTesla;

    static SafetyStandard fixed(double limit_uT);
    static SafetyStandard icnirp_public(double frequency_hz, Unit unit = Unit::MilliTesla);
    static SafetyStandard icnirp_occupational(double frequency_hz, Unit unit = Unit::MilliTesla);
    static SafetyStandard tco2();
};

// Parses a CLI-style selector: "fixed:<uT>", "icnirp-public",
// "icnirp-occupational" or "tco2". Throws InvalidStandardError.
SafetyStandard parse_standard(const std::string& spec, double frequency_hz,
                              Unit icnirp_unit = Unit::MilliTesla);

// The standard's limit in microtesla. Throws InvalidStandardError for a
// non-positive fixed limit or ICNIRP frequency.
double limit_for(const SafetyStandard& standard);

enum class PointClass { Dangerous, NonDangerous };

// Dangerous iff value strictly exceeds the limit; equality is compliant.
PointClass classify_point(double value_uT, double limit_uT);

// Hazard category of one cluster, most severe first. With k = 5 the names
// are High, LowHigh, Middle, Safe, VerySafe; other k use Rank1..Rankk.
struct HazardLabel {
    std::string name;
    bool dangerous = false;
    bool mixed = false;  // cluster straddles the limit; flagged dangerous
    double centroid_uT = 0.0;
    double min_uT = 0.0;
    double max_uT = 0.0;
    int count = 0;
};

// Labels the clusters of a result (centroids sorted descending) against a
// limit. A cluster is dangerous iff its minimum member exceeds the limit;
// a straddling cluster is conservatively dangerous and flagged mixed.
std::vector<HazardLabel> label_clusters(const std::vector<double>& data,
                                        const ClusteringResult& result, double limit_uT);

struct ZoneStats {
    std::string point_id;
    int dangerous_count = 0;
    int safe_count = 0;
    double peak_uT = 0.0;
    double median_uT = 0.0;
};

// Per-point aggregates plus a ranking of point ids by dangerous count,
// then peak value, then point index.
struct ZoneReport {
    std::vector<ZoneStats> points;  // point-index order
    std::vector<std::string> dangerous_ranking;
    bool empty() const { return points.empty(); }
};

ZoneReport zone_summary(const SurveyDataset& dataset, double limit_uT);

}  // namespace elfscan
