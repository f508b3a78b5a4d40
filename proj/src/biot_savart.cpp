#include "elfscan/biot_savart.hpp"

#include <cmath>
#include <string>

#include "elfscan/errors.hpp"
#include "elfscan/rng.hpp"

namespace elfscan {

Vec3 segment_field(const Vec3& a, const Vec3& b, double current_A, const Vec3& eval) {
    if (!finite(a) || !finite(b) || !finite(eval) || !std::isfinite(current_A)) {
        throw InvalidInputError("segment_field arguments must be finite");
    }
    if (a == b) throw InvalidInputError("degenerate segment: endpoints coincide");
    if (distance_to_segment(eval, a, b) < kGeomGuard) {
        throw SingularityError("evaluation point within " + std::to_string(kGeomGuard) +
                               " m of a conductor");
    }

    // Two-point closed form for a straight filament: with ra, rb the vectors
    // from the endpoints to the evaluation point,
    //   B = mu0*I/(4*pi) * (|ra|+|rb|) / (|ra||rb|(|ra||rb| + ra.rb)) * ra x rb
    // Exact for the finite segment and stable away from the filament line.
    const Vec3 ra = eval - a;
    const Vec3 rb = eval - b;
    const double na = norm(ra);
    const double nb = norm(rb);
    const double denom = na * nb * (na * nb + dot(ra, rb));
    const double scale = kMu0 * current_A / (4.0 * 3.14159265358979323846) * (na + nb) / denom;
    return cross(ra, rb) * scale;
}

FieldSample model_field(const WireModel& model, const Vec3& eval) {
    Vec3 total;
    for (std::size_t p = 0; p < model.paths.size(); ++p) {
        const WireSegmentPath& path = model.paths[p];
        if (path.vertices.size() < 2) {
            throw InvalidInputError("path " + std::to_string(p) + " has fewer than 2 vertices");
        }
        for (std::size_t s = 0; s + 1 < path.vertices.size(); ++s) {
            try {
                total += segment_field(path.vertices[s], path.vertices[s + 1], path.current_A,
                                       eval);
            } catch (const SingularityError& e) {
                throw SingularityError("path " + std::to_string(p) + " segment " +
                                       std::to_string(s) + ": " + e.what());
            }
        }
    }
    // tesla -> microtesla
    return {total.x * 1e6, total.y * 1e6, total.z * 1e6};
}

namespace {

GridSpec make_grid(Side side, double z) {
    // 3x3 over the chassis footprint, row-major from the back-left corner.
    const double xs[3] = {0.06, 0.18, 0.30};
    const double ys[3] = {0.20, 0.12, 0.04};
    GridSpec grid;
    grid.side = side;
    int index = 1;
    for (int row = 0; row < 3; ++row) {
        for (int col = 0; col < 3; ++col) {
            grid.positions.emplace_back(MeasurementPoint(side, index).id(),
                                        Vec3{xs[col], ys[row], z});
            ++index;
        }
    }
    return grid;
}

}  // namespace

GridSpec GridSpec::standard_top() { return make_grid(Side::TopBody, 0.012); }

GridSpec GridSpec::standard_bottom() { return make_grid(Side::BottomBody, -0.012); }

SurveyDataset synthesize_survey(const std::map<std::string, LaptopModel>& models,
                                const GridSpec& grid, PowerSource power_source,
                                double noise_sd_uT, std::uint64_t seed) {
    if (!(noise_sd_uT >= 0.0)) throw InvalidInputError("noise_sd must be >= 0");
    if (grid.positions.size() != kGridPointsPerSide) {
        throw InvalidInputError("grid must define exactly 9 positions");
    }

    SurveyDataset dataset;
    dataset.side = grid.side;
    dataset.power_source = power_source;
    Rng rng(seed);

    for (const auto& [laptop_id, model] : models) {
        for (const auto& [point_id, position] : grid.positions) {
            const MeasurementPoint point = MeasurementPoint::parse(point_id);
            if (point.side != grid.side) {
                throw InvalidInputError("grid point " + point_id + " does not match grid side");
            }
            FieldSample sample;
            try {
                sample = model_field(model.wires, position);
            } catch (const SingularityError& e) {
                throw SingularityError("laptop " + laptop_id + " at " + point_id + ": " +
                                       e.what());
            }
            sample.bx_uT += noise_sd_uT * rng.gaussian();
            sample.by_uT += noise_sd_uT * rng.gaussian();
            sample.bz_uT += noise_sd_uT * rng.gaussian();

            SurveyRecord record;
            record.laptop_id = laptop_id;
            record.screen_size_in = model.screen_size_in;
            record.power_source = power_source;
            record.point = point;
            record.sample = sample;
            dataset.records.push_back(std::move(record));
        }
    }
    return dataset;
}

}  // namespace elfscan
