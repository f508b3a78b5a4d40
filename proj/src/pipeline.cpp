#include "elfscan/pipeline.hpp"

#include <fstream>
#include <map>

#include <json.hpp>

#include "elfscan/survey_io.hpp"
#include "elfscan/version.hpp"

namespace elfscan {

using ordered_json = nlohmann::ordered_json;

bool AnalysisReport::all_ok() const {
    for (const auto& cell : cells) {
        if (!cell.ok) return false;
    }
    return true;
}

bool AnalysisReport::any_ok() const {
    for (const auto& cell : cells) {
        if (cell.ok) return true;
    }
    return false;
}

AnalysisReport analyze(const RunConfig& config) {
    if (config.k < 1) throw ConfigError("k must be >= 1");
    if (config.restarts < 1) throw ConfigError("restarts must be >= 1");
    if (config.inputs.empty()) throw ConfigError("no input files given");

    AnalysisReport report;
    report.tool_version = kVersion;
    report.config = config;
    report.limit_uT = limit_for(config.standard);

    // Merge every input into per-cell datasets, canonical order.
    std::map<std::pair<int, int>, SurveyDataset> cells;
    for (const auto& input : config.inputs) {
        for (auto& dataset : ingest_csv(input)) {
            const auto key = std::make_pair(static_cast<int>(dataset.side),
                                            static_cast<int>(dataset.power_source));
            auto [it, inserted] = cells.try_emplace(key, dataset);
            if (!inserted) {
                for (auto& rec : dataset.records) it->second.records.push_back(std::move(rec));
            }
        }
    }

    for (auto& [key, dataset] : cells) {
        CellAnalysis cell;
        cell.side = dataset.side;
        cell.power_source = dataset.power_source;
        cell.validation = validate_dataset(dataset);
        try {
            cell.features = feature_vector(dataset);
            std::vector<double> values;
            values.reserve(cell.features.size());
            for (const auto& f : cell.features) values.push_back(f.value_uT);

            ClusteringParams params;
            params.k = config.k;
            params.max_iterations = config.max_iterations;
            params.tolerance = config.tolerance;
            params.init = config.init;
            params.seed = config.seed;
            params.restarts = config.restarts;

            cell.clustering = run_kmedians(values, params);
            cell.labels = label_clusters(values, cell.clustering, report.limit_uT);
            cell.zones = zone_summary(dataset, report.limit_uT);
            cell.ok = true;
        } catch (const Error& e) {
            // One bad cell must not take the others down.
            cell.ok = false;
            cell.error = e.what();
        }
        report.cells.push_back(std::move(cell));
    }
    return report;
}

namespace {

ordered_json findings_json(const std::vector<Finding>& findings) {
    ordered_json arr = ordered_json::array();
    for (const auto& f : findings) arr.push_back({{"code", f.code}, {"message", f.message}});
    return arr;
}

ordered_json cell_json(const CellAnalysis& cell) {
    ordered_json j;
    j["side"] = to_string(cell.side);
    j["power_source"] = to_string(cell.power_source);
    j["status"] = cell.ok ? "ok" : "failed";
    if (!cell.ok) j["error"] = cell.error;
    j["validation"] = {{"errors", findings_json(cell.validation.errors)},
                       {"warnings", findings_json(cell.validation.warnings)}};
    if (!cell.ok) return j;

    j["feature_count"] = cell.features.size();
    ordered_json features = ordered_json::array();
    for (std::size_t i = 0; i < cell.features.size(); ++i) {
        const Feature& f = cell.features[i];
        features.push_back({{"laptop_id", f.laptop_id},
                            {"point_id", f.point_id},
                            {"value_uT", f.value_uT},
                            {"cluster", cell.clustering.assignments[i]}});
    }
    j["features"] = std::move(features);

    j["clustering"] = {{"k", cell.clustering.centroids.size()},
                       {"centroids_uT", cell.clustering.centroids},
                       {"objective_uT", cell.clustering.objective},
                       {"iterations", cell.clustering.iterations},
                       {"converged", cell.clustering.converged}};

    ordered_json labels = ordered_json::array();
    for (const auto& label : cell.labels) {
        labels.push_back({{"name", label.name},
                          {"dangerous", label.dangerous},
                          {"mixed", label.mixed},
                          {"centroid_uT", label.centroid_uT},
                          {"min_uT", label.min_uT},
                          {"max_uT", label.max_uT},
                          {"count", label.count}});
    }
    j["labels"] = std::move(labels);

    ordered_json points = ordered_json::array();
    for (const auto& z : cell.zones.points) {
        points.push_back({{"point_id", z.point_id},
                          {"dangerous_count", z.dangerous_count},
                          {"safe_count", z.safe_count},
                          {"peak_uT", z.peak_uT},
                          {"median_uT", z.median_uT}});
    }
    j["zones"] = {{"points", std::move(points)},
                  {"dangerous_ranking", cell.zones.dangerous_ranking}};
    return j;
}

}  // namespace

std::string report_to_json(const AnalysisReport& report) {
    ordered_json j;
    j["schema_version"] = kReportSchemaVersion;
    j["tool"] = {{"name", kToolName}, {"version", report.tool_version}};

    ordered_json inputs = ordered_json::array();
    for (const auto& p : report.config.inputs) inputs.push_back(p.string());
    j["config"] = {
        {"inputs", std::move(inputs)},
        {"k", report.config.k},
        {"standard", report.config.standard_spec},
        {"frequency_hz", report.config.standard.frequency_hz},
        {"icnirp_unit", to_string(report.config.standard.icnirp_unit)},
        {"limit_uT", report.limit_uT},
        {"init", report.config.init == InitStrategy::QuantileSeed ? "quantile" : "random"},
        {"seed", report.config.seed},
        {"restarts", report.config.restarts},
    };

    ordered_json cells = ordered_json::array();
    for (const auto& cell : report.cells) cells.push_back(cell_json(cell));
    j["cells"] = std::move(cells);
    return j.dump(2) + "\n";
}

void write_report(const AnalysisReport& report, const std::filesystem::path& file) {
    std::ofstream out(file);
    if (!out) throw IoError("cannot write " + file.string());
    out << report_to_json(report);
    if (!out) throw IoError("short write to " + file.string());
}

}  // namespace elfscan
