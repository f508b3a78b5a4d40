#pragma once

#include <filesystem>
#include <vector>

#include "elfscan/pipeline.hpp"

namespace elfscan {

// Renders one SVG per (cell, laptop) plus one summary SVG per successful
// cell: point names on x, microtesla on y, one color per cluster in
// severity order, and a single horizontal line at the active limit.
// Returns the written paths; an empty report writes nothing and warns.
// Throws IoError when the output directory is unusable.
std::vector<std::filesystem::path> render_plots(const AnalysisReport& report,
                                                const std::filesystem::path& out_dir);

}  // namespace elfscan
