#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "elfscan/errors.hpp"

namespace elfscan {

enum class Side { TopBody, BottomBody };
enum class PowerSource { AC, Battery };

std::string to_string(Side side);
std::string to_string(PowerSource power);
Side side_from_string(std::string_view text);
PowerSource power_from_string(std::string_view text);

// Tri-axial magnetic induction components at one point, microtesla.
// Components are signed projections; negative values are fine.
struct FieldSample {
    double bx_uT = 0.0;
    double by_uT = 0.0;
    double bz_uT = 0.0;
};

// Scalar field value combining the three axis components.
// Throws InvalidInputError if any component is non-finite.
double rms(const FieldSample& sample);

// One of the 18 chassis grid labels: tbmp1..tbmp9 / bbmp1..bbmp9.
struct MeasurementPoint {
    Side side = Side::TopBody;
    int index = 1;  // 1..9

    MeasurementPoint() = default;
    MeasurementPoint(Side s, int idx);

    // Parses "tbmp3" / "bbmp7"; throws InvalidInputError otherwise.
    static MeasurementPoint parse(std::string_view id);

    std::string id() const;
    bool operator==(const MeasurementPoint& o) const { return side == o.side && index == o.index; }
};

// One laptop's measurement at one grid point under one power condition.
// Exactly one of sample / rms_uT should be present.
struct SurveyRecord {
    std::string laptop_id;
    double screen_size_in = 15.6;
    PowerSource power_source = PowerSource::AC;
    MeasurementPoint point;
    std::optional<FieldSample> sample;
    std::optional<double> rms_uT;

    // Stored rms when present, otherwise computed from the components.
    double feature_value() const;
};

// All records of one experiment cell (side x power source).
struct SurveyDataset {
    Side side = Side::TopBody;
    PowerSource power_source = PowerSource::AC;
    std::vector<SurveyRecord> records;
};

struct Feature {
    std::string laptop_id;
    std::string point_id;
    double value_uT = 0.0;
};

// One scalar feature per record, ordered by (laptop_id asc, point index asc).
// Throws InvalidInputError for a record with neither rms nor components.
std::vector<Feature> feature_vector(const SurveyDataset& dataset);

struct Finding {
    std::string code;
    std::string message;
};

struct ValidationReport {
    std::vector<Finding> errors;    // invariant violations
    std::vector<Finding> warnings;  // partial-dataset notices
    bool valid() const { return errors.empty(); }
    bool empty() const { return errors.empty() && warnings.empty(); }
};

// Lists every invariant violation: side/power mismatches, duplicate
// (laptop, point) pairs, negative stored rms, non-finite values, records
// missing a measurement. Violations are data, not exceptions.
ValidationReport validate_dataset(const SurveyDataset& dataset);

// Expected complete cell: 13 laptops x 9 points.
inline constexpr int kExpectedLaptops = 13;
inline constexpr int kGridPointsPerSide = 9;

}  // namespace elfscan
