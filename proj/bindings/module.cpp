#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "elfscan/biot_savart.hpp"
#include "elfscan/field_model.hpp"
#include "elfscan/hazard.hpp"
#include "elfscan/kmedians.hpp"
#include "elfscan/version.hpp"

namespace py = pybind11;
using namespace elfscan;

namespace {

ClusteringParams make_params(int k, int max_iterations, double tolerance,
                             const std::string& init, std::uint64_t seed, int restarts) {
    ClusteringParams params;
    params.k = k;
    params.max_iterations = max_iterations;
    params.tolerance = tolerance;
    if (init == "quantile") {
        params.init = InitStrategy::QuantileSeed;
    } else if (init == "random") {
        params.init = InitStrategy::SeededRandom;
    } else {
        throw InvalidInputError("init must be 'quantile' or 'random'");
    }
    params.seed = seed;
    params.restarts = restarts;
    return params;
}

Vec3 to_vec3(const std::tuple<double, double, double>& t) {
    return {std::get<0>(t), std::get<1>(t), std::get<2>(t)};
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "ELF magnetic-field survey analysis: RMS features, K-Medians hazard "
              "classes, Biot-Savart synthetic fields";
    m.attr("__version__") = kVersion;

    py::register_exception<Error>(m, "ElfscanError", PyExc_ValueError);

    m.def(
        "rms", [](double bx, double by, double bz) { return rms(FieldSample{bx, by, bz}); },
        py::arg("bx"), py::arg("by"), py::arg("bz"),
        "RMS of the three magnetic induction components, microtesla.");

    py::class_<ClusteringResult>(m, "ClusteringResult")
        .def_readonly("assignments", &ClusteringResult::assignments)
        .def_readonly("centroids", &ClusteringResult::centroids)
        .def_readonly("objective", &ClusteringResult::objective)
        .def_readonly("iterations", &ClusteringResult::iterations)
        .def_readonly("converged", &ClusteringResult::converged)
        .def_readonly("objective_trace", &ClusteringResult::objective_trace)
        .def("__repr__", [](const ClusteringResult& r) {
            return "<ClusteringResult k=" + std::to_string(r.centroids.size()) +
                   " objective=" + std::to_string(r.objective) + ">";
        });

    const char* clustering_doc =
        "Cluster 1-D values; centroids come back sorted descending with "
        "assignments relabeled to match.";
    m.def(
        "run_kmedians",
        [](const std::vector<double>& values, int k, int max_iterations, double tolerance,
           const std::string& init, std::uint64_t seed, int restarts) {
            return run_kmedians(values,
                                make_params(k, max_iterations, tolerance, init, seed, restarts));
        },
        py::arg("values"), py::arg("k") = 5, py::arg("max_iterations") = 100,
        py::arg("tolerance") = 0.0, py::arg("init") = "quantile", py::arg("seed") = 0,
        py::arg("restarts") = 1, clustering_doc);
    m.def(
        "run_kmeans",
        [](const std::vector<double>& values, int k, int max_iterations, double tolerance,
           const std::string& init, std::uint64_t seed, int restarts) {
            return run_kmeans(values,
                              make_params(k, max_iterations, tolerance, init, seed, restarts));
        },
        py::arg("values"), py::arg("k") = 5, py::arg("max_iterations") = 100,
        py::arg("tolerance") = 0.0, py::arg("init") = "quantile", py::arg("seed") = 0,
        py::arg("restarts") = 1, "K-Means baseline with the same contract as run_kmedians.");
    m.def("brute_force_optimal", &brute_force_optimal, py::arg("values"), py::arg("k"),
          "Globally optimal K-Medians partition by contiguous-partition enumeration.");

    m.def(
        "limit_for",
        [](const std::string& standard, double frequency_hz, const std::string& icnirp_unit) {
            return limit_for(parse_standard(standard, frequency_hz,
                                            unit_from_string(icnirp_unit)));
        },
        py::arg("standard"), py::arg("frequency_hz") = 50.0, py::arg("icnirp_unit") = "mT",
        "Limit in microtesla for 'fixed:<uT>', 'icnirp-public', 'icnirp-occupational' "
        "or 'tco2'.");
    m.def(
        "classify_point",
        [](double value_uT, double limit_uT) {
            return classify_point(value_uT, limit_uT) == PointClass::Dangerous;
        },
        py::arg("value_uT"), py::arg("limit_uT"),
        "True iff the value strictly exceeds the limit.");

    py::class_<HazardLabel>(m, "HazardLabel")
        .def_readonly("name", &HazardLabel::name)
        .def_readonly("dangerous", &HazardLabel::dangerous)
        .def_readonly("mixed", &HazardLabel::mixed)
        .def_readonly("centroid_uT", &HazardLabel::centroid_uT)
        .def_readonly("min_uT", &HazardLabel::min_uT)
        .def_readonly("max_uT", &HazardLabel::max_uT)
        .def_readonly("count", &HazardLabel::count)
        .def("__repr__", [](const HazardLabel& l) {
            return "<HazardLabel " + l.name + (l.dangerous ? " dangerous" : "") + ">";
        });
    m.def("label_clusters", &label_clusters, py::arg("values"), py::arg("result"),
          py::arg("limit_uT"),
          "Hazard label per cluster, most severe first (High..VerySafe when k=5).");

    m.def(
        "segment_field",
        [](const std::tuple<double, double, double>& a,
           const std::tuple<double, double, double>& b, double current_A,
           const std::tuple<double, double, double>& eval) {
            const Vec3 field = segment_field(to_vec3(a), to_vec3(b), current_A, to_vec3(eval));
            return std::make_tuple(field.x, field.y, field.z);
        },
        py::arg("a"), py::arg("b"), py::arg("current_A"), py::arg("eval"),
        "Field of a straight segment, tesla. Closed form, no discretization error.");
    m.def(
        "model_field",
        [](const std::vector<std::pair<std::vector<std::tuple<double, double, double>>, double>>&
               paths,
           const std::tuple<double, double, double>& eval) {
            WireModel model;
            for (const auto& [vertices, current] : paths) {
                WireSegmentPath path;
                path.current_A = current;
                for (const auto& v : vertices) path.vertices.push_back(to_vec3(v));
                model.paths.push_back(std::move(path));
            }
            const FieldSample sample = model_field(model, to_vec3(eval));
            return std::make_tuple(sample.bx_uT, sample.by_uT, sample.bz_uT);
        },
        py::arg("paths"), py::arg("eval"),
        "Superposed field of [(vertices, current_A), ...] polylines, microtesla "
        "components.");
}
