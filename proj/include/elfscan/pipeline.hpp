#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "elfscan/field_model.hpp"
#include "elfscan/hazard.hpp"
#include "elfscan/kmedians.hpp"

namespace elfscan {

struct RunConfig {
    std::vector<std::filesystem::path> inputs;
    int k = 5;
    SafetyStandard standard;            // default: fixed 0.3 uT
    std::string standard_spec = "fixed:0.3";  // echoed into the report
    InitStrategy init = InitStrategy::QuantileSeed;
    std::uint64_t seed = 0;
    int restarts = 5;
    int max_iterations = 100;
    double tolerance = 0.0;
    std::filesystem::path out_dir = ".";
    bool plots = false;
};

// Analysis of one experiment cell. A failed cell (e.g. infeasible k) keeps
// its validation findings and the error text; other cells are unaffected.
struct CellAnalysis {
    Side side = Side::TopBody;
    PowerSource power_source = PowerSource::AC;
    bool ok = false;
    std::string error;
    ValidationReport validation;
    std::vector<Feature> features;
    ClusteringResult clustering;
    std::vector<HazardLabel> labels;
    ZoneReport zones;
};

struct AnalysisReport {
    std::string tool_version;
    RunConfig config;
    double limit_uT = 0.0;
    std::vector<CellAnalysis> cells;  // canonical cell order
    bool all_ok() const;
    bool any_ok() const;
};

// Ingests every input, then per cell: features -> K-Medians -> hazard
// labels -> zone summary. Deterministic: identical inputs, config and seed
// reproduce the report byte for byte.
AnalysisReport analyze(const RunConfig& config);

// Report serialization (stable field order, schema_version tag).
std::string report_to_json(const AnalysisReport& report);
void write_report(const AnalysisReport& report, const std::filesystem::path& file);

}  // namespace elfscan
