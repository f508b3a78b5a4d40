#include "elfscan/field_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace elfscan {

std::string to_string(Side side) {
    return side == Side::TopBody ? "TopBody" : "BottomBody";
}

std::string to_string(PowerSource power) {
    return power == PowerSource::AC ? "AC" : "Battery";
}

Side side_from_string(std::string_view text) {
    if (text == "TopBody") return Side::TopBody;
    if (text == "BottomBody") return Side::BottomBody;
    throw InvalidInputError("unknown side '" + std::string(text) + "'");
}

PowerSource power_from_string(std::string_view text) {
    if (text == "AC") return PowerSource::AC;
    if (text == "Battery") return PowerSource::Battery;
    throw InvalidInputError("unknown power source '" + std::string(text) + "'");
}

double rms(const FieldSample& sample) {
    if (!std::isfinite(sample.bx_uT) || !std::isfinite(sample.by_uT) ||
        !std::isfinite(sample.bz_uT)) {
        throw InvalidInputError("non-finite field component");
    }
    return std::sqrt(sample.bx_uT * sample.bx_uT + sample.by_uT * sample.by_uT +
                     sample.bz_uT * sample.bz_uT);
}

MeasurementPoint::MeasurementPoint(Side s, int idx) : side(s), index(idx) {
    if (idx < 1 || idx > kGridPointsPerSide) {
        throw InvalidInputError("measurement point index " + std::to_string(idx) +
                                " outside 1..9");
    }
}

MeasurementPoint MeasurementPoint::parse(std::string_view id) {
    Side side;
    if (id.substr(0, 4) == "tbmp") {
        side = Side::TopBody;
    } else if (id.substr(0, 4) == "bbmp") {
        side = Side::BottomBody;
    } else {
        throw InvalidInputError("unknown measurement point '" + std::string(id) + "'");
    }
    const std::string_view digits = id.substr(4);
    if (digits.size() != 1 || digits[0] < '1' || digits[0] > '9') {
        throw InvalidInputError("measurement point index in '" + std::string(id) +
                                "' outside 1..9");
    }
    return MeasurementPoint(side, digits[0] - '0');
}

std::string MeasurementPoint::id() const {
    return (side == Side::TopBody ? "tbmp" : "bbmp") + std::to_string(index);
}

double SurveyRecord::feature_value() const {
    if (rms_uT) return *rms_uT;
    if (sample) return rms(*sample);
    throw InvalidInputError("record " + laptop_id + "/" + point.id() +
                            " has neither rms nor components");
}

std::vector<Feature> feature_vector(const SurveyDataset& dataset) {
    std::vector<const SurveyRecord*> order;
    order.reserve(dataset.records.size());
    for (const auto& rec : dataset.records) order.push_back(&rec);
    std::stable_sort(order.begin(), order.end(), [](const SurveyRecord* a, const SurveyRecord* b) {
        if (a->laptop_id != b->laptop_id) return a->laptop_id < b->laptop_id;
        return a->point.index < b->point.index;
    });

    std::vector<Feature> out;
    out.reserve(order.size());
    for (const SurveyRecord* rec : order) {
        out.push_back({rec->laptop_id, rec->point.id(), rec->feature_value()});
    }
    return out;
}

ValidationReport validate_dataset(const SurveyDataset& dataset) {
    ValidationReport report;
    auto error = [&](const std::string& code, const std::string& message) {
        report.errors.push_back({code, message});
    };

    std::set<std::pair<std::string, std::string>> seen;
    std::map<std::string, int> points_per_laptop;
    for (const auto& rec : dataset.records) {
        const std::string where = rec.laptop_id + "/" + rec.point.id();
        if (rec.point.side != dataset.side) {
            error("side-mismatch", where + ": point side does not match the dataset's " +
                                       to_string(dataset.side));
        }
        if (rec.power_source != dataset.power_source) {
            error("power-mismatch", where + ": record power source does not match the dataset's " +
                                        to_string(dataset.power_source));
        }
        if (!seen.insert({rec.laptop_id, rec.point.id()}).second) {
            error("duplicate", "duplicate record for " + where);
        }
        points_per_laptop[rec.laptop_id]++;

        if (rec.sample && rec.rms_uT) {
            error("conflicting-measurement", where + ": both components and rms stored");
        } else if (!rec.sample && !rec.rms_uT) {
            error("missing-measurement", where + ": neither components nor rms stored");
        }
        if (rec.rms_uT) {
            if (!std::isfinite(*rec.rms_uT)) {
                error("non-finite", where + ": rms is not finite");
            } else if (*rec.rms_uT < 0.0) {
                error("negative-rms", where + ": rms is negative");
            }
        }
        if (rec.sample && (!std::isfinite(rec.sample->bx_uT) || !std::isfinite(rec.sample->by_uT) ||
                           !std::isfinite(rec.sample->bz_uT))) {
            error("non-finite", where + ": field component is not finite");
        }
    }

    // Partial cells are usable; flag them so reports show what was missing.
    const int laptops = static_cast<int>(points_per_laptop.size());
    bool incomplete = laptops < kExpectedLaptops;
    for (const auto& [id, count] : points_per_laptop) {
        if (count < kGridPointsPerSide) incomplete = true;
    }
    if (incomplete && !dataset.records.empty()) {
        std::ostringstream msg;
        msg << "partial dataset: " << laptops << " laptop(s), " << dataset.records.size()
            << " record(s); a complete cell has " << kExpectedLaptops << " x "
            << kGridPointsPerSide;
        report.warnings.push_back({"partial-dataset", msg.str()});
    }
    return report;
}

}  // namespace elfscan
