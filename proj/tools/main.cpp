#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "elfscan/biot_savart.hpp"
#include "elfscan/pipeline.hpp"
#include "elfscan/plot.hpp"
#include "elfscan/survey_io.hpp"
#include "elfscan/version.hpp"

namespace fs = std::filesystem;
using namespace elfscan;

namespace {

// Exit codes: 0 ok, 1 usage/config, 2 data/file error, 3 some cell failed.
constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitData = 2;
constexpr int kExitPartial = 3;

int run_analyze(const RunConfig& config) {
    const AnalysisReport report = analyze(config);

    fs::create_directories(config.out_dir);
    const fs::path report_path = config.out_dir / "report.json";
    write_report(report, report_path);

    for (const auto& cell : report.cells) {
        std::cout << to_string(cell.side) << "/" << to_string(cell.power_source) << ": ";
        if (!cell.ok) {
            std::cout << "FAILED (" << cell.error << ")\n";
            continue;
        }
        int dangerous_clusters = 0;
        for (const auto& label : cell.labels) dangerous_clusters += label.dangerous ? 1 : 0;
        std::cout << cell.features.size() << " features, k=" << cell.clustering.centroids.size()
                  << ", J=" << cell.clustering.objective << " uT, " << dangerous_clusters
                  << " dangerous cluster(s)";
        if (!cell.zones.dangerous_ranking.empty()) {
            std::cout << ", hottest zone " << cell.zones.dangerous_ranking.front();
        }
        std::cout << "\n";
    }
    std::cout << "report: " << report_path.string() << "\n";

    if (config.plots) {
        const auto files = render_plots(report, config.out_dir);
        std::cout << "plots: " << files.size() << " svg file(s) in " << config.out_dir.string()
                  << "\n";
    }
    return report.all_ok() ? kExitOk : kExitPartial;
}

int run_generate(const fs::path& models_path, const std::string& grid_choice, double noise_sd,
                 std::uint64_t seed, double battery_scale, const fs::path& out_path) {
    const auto models = read_model_file(models_path);

    auto scaled = [&](double factor) {
        std::map<std::string, LaptopModel> copy = models;
        for (auto& [id, model] : copy) {
            for (auto& path : model.wires.paths) path.current_A *= factor;
        }
        return copy;
    };

    std::vector<GridSpec> grids;
    if (grid_choice == "top" || grid_choice == "both") grids.push_back(GridSpec::standard_top());
    if (grid_choice == "bottom" || grid_choice == "both") {
        grids.push_back(GridSpec::standard_bottom());
    }

    // Canonical cell order; each cell gets its own noise stream.
    std::vector<SurveyDataset> datasets;
    std::uint64_t cell_index = 0;
    for (const auto& grid : grids) {
        for (PowerSource power : {PowerSource::AC, PowerSource::Battery}) {
            const auto& cell_models =
                power == PowerSource::Battery && battery_scale != 1.0 ? scaled(battery_scale)
                                                                      : models;
            datasets.push_back(
                synthesize_survey(cell_models, grid, power, noise_sd, seed + cell_index));
            ++cell_index;
        }
    }

    if (out_path.has_parent_path()) fs::create_directories(out_path.parent_path());
    write_survey_csv(out_path, datasets);

    std::size_t rows = 0;
    for (const auto& d : datasets) rows += d.records.size();
    std::cout << "wrote " << rows << " rows (" << datasets.size() << " cell(s), "
              << models.size() << " laptop(s)) to " << out_path.string() << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"ELF magnetic-field survey analysis"};
    app.set_version_flag("--version", std::string(kVersion));
    app.require_subcommand(1);

    // analyze
    auto* analyze_cmd =
        app.add_subcommand("analyze", "Cluster a survey CSV and report hazard zones");
    RunConfig config;
    std::string standard_spec = "fixed:0.3";
    std::string icnirp_unit = "mT";
    std::string init_name = "quantile";
    double frequency = 50.0;
    analyze_cmd->add_option("--input", config.inputs, "Survey CSV file (repeatable)")
        ->required();
    analyze_cmd->add_option("--k", config.k, "Number of clusters")->capture_default_str();
    analyze_cmd
        ->add_option("--standard", standard_spec,
                     "fixed:<uT> | icnirp-public | icnirp-occupational | tco2")
        ->capture_default_str();
    analyze_cmd->add_option("--frequency", frequency, "Field frequency in Hz (ICNIRP)")
        ->capture_default_str();
    analyze_cmd
        ->add_option("--icnirp-unit", icnirp_unit, "Unit of the ICNIRP 5/f and 25/f quotients")
        ->check(CLI::IsMember({"nT", "uT", "mT", "T"}))
        ->capture_default_str();
    analyze_cmd->add_option("--init", init_name, "Centroid seeding")
        ->check(CLI::IsMember({"quantile", "random"}))
        ->capture_default_str();
    analyze_cmd->add_option("--seed", config.seed, "Random seed")->capture_default_str();
    analyze_cmd->add_option("--restarts", config.restarts, "Clustering restarts")
        ->capture_default_str();
    analyze_cmd->add_option("--out", config.out_dir, "Output directory")
        ->capture_default_str();
    analyze_cmd->add_flag("--plots", config.plots, "Render SVG cluster plots");

    // generate
    auto* generate_cmd =
        app.add_subcommand("generate", "Synthesize a survey CSV from a wire-model file");
    fs::path models_path;
    std::string grid_choice;
    double noise_sd = 0.0;
    std::uint64_t gen_seed = 0;
    double battery_scale = 1.0;
    fs::path gen_out;
    generate_cmd->add_option("--models", models_path, "Wire-model file")->required();
    generate_cmd->add_option("--grid", grid_choice, "Chassis side(s) to survey")
        ->check(CLI::IsMember({"top", "bottom", "both"}))
        ->required();
    generate_cmd->add_option("--noise-sd", noise_sd, "Per-component Gaussian noise, uT")
        ->capture_default_str();
    generate_cmd->add_option("--seed", gen_seed, "Random seed")->capture_default_str();
    generate_cmd
        ->add_option("--battery-scale", battery_scale,
                     "Current scale factor for the battery cells")
        ->capture_default_str();
    generate_cmd->add_option("--out", gen_out, "Output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (analyze_cmd->parsed()) {
            config.standard =
                parse_standard(standard_spec, frequency, unit_from_string(icnirp_unit));
            config.standard_spec = standard_spec;
            config.init =
                init_name == "random" ? InitStrategy::SeededRandom : InitStrategy::QuantileSeed;
            limit_for(config.standard);  // surface config problems before ingest
            return run_analyze(config);
        }
        return run_generate(models_path, grid_choice, noise_sd, gen_seed, battery_scale,
                            gen_out);
    } catch (const ConfigError& e) {
        std::cerr << "elfscan: " << e.what() << "\n";
        return kExitConfig;
    } catch (const InvalidStandardError& e) {
        std::cerr << "elfscan: " << e.what() << "\n";
        return kExitConfig;
    } catch (const Error& e) {
        std::cerr << "elfscan: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "elfscan: unexpected error: " << e.what() << "\n";
        return kExitData;
    }
}
