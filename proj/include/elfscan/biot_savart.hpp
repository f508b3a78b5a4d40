#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "elfscan/field_model.hpp"
#include "elfscan/geometry.hpp"

namespace elfscan {

inline constexpr double kMu0 = 4.0e-7 * 3.14159265358979323846;  // T*m/A
// Singularity guard: evaluation closer than this to a conductor is refused.
inline constexpr double kGeomGuard = 1e-6;  // m

// Polyline current path; the sign of the current encodes direction along
// the vertex order.
struct WireSegmentPath {
    std::vector<Vec3> vertices;  // meters; >= 2, consecutive vertices distinct
    double current_A = 0.0;
};

// A synthetic laptop's internal conductors. mu0 is the physical constant,
// not a parameter.
struct WireModel {
    std::vector<WireSegmentPath> paths;
};

// Conductor layout plus the generator metadata the survey format needs.
struct LaptopModel {
    double screen_size_in = 15.6;
    WireModel wires;
};

// Field of the straight segment a->b carrying `current`, evaluated at
// `eval`, tesla. Closed-form finite-segment solution, no discretization
// error. Throws SingularityError within kGeomGuard of the segment.
Vec3 segment_field(const Vec3& a, const Vec3& b, double current_A, const Vec3& eval);

// Superposition of segment_field over all segments of all paths, converted
// tesla -> microtesla. A singularity error names the offending path and
// segment index.
FieldSample model_field(const WireModel& model, const Vec3& eval);

// Nine measurement positions of one chassis side.
struct GridSpec {
    Side side = Side::TopBody;
    std::vector<std::pair<std::string, Vec3>> positions;  // point_id -> meters

    // Built-in grids: 3x3 layout over a 0.36 m x 0.24 m footprint, rows
    // back-to-front, columns left-to-right, measurement planes z = +-12 mm.
    static GridSpec standard_top();
    static GridSpec standard_bottom();
};

// Evaluates every model at every grid position and perturbs each component
// with zero-mean Gaussian noise of the given standard deviation.
// Deterministic given the seed; records are ordered laptop asc, point asc.
SurveyDataset synthesize_survey(const std::map<std::string, LaptopModel>& models,
                                const GridSpec& grid, PowerSource power_source,
                                double noise_sd_uT, std::uint64_t seed);

}  // namespace elfscan
