#pragma once

#include <cstdint>
#include <vector>

#include "elfscan/errors.hpp"

namespace elfscan {

enum class InitStrategy { QuantileSeed, SeededRandom };

struct ClusteringParams {
    int k = 5;
    int max_iterations = 100;
    double tolerance = 0.0;  // max centroid movement, uT; 0 = exact stability
    InitStrategy init = InitStrategy::QuantileSeed;
    std::uint64_t seed = 0;  // SeededRandom draw + restart reseeding
    int restarts = 1;        // best objective over this many runs
};

struct ClusteringResult {
    std::vector<int> assignments;   // per-datum cluster index, 0..k-1
    std::vector<double> centroids;  // sorted descending
    double objective = 0.0;         // uT for K-Medians, uT^2 for K-Means
    int iterations = 0;
    bool converged = false;
    // Objective recorded after every assignment and every update step of the
    // winning run; non-increasing by construction.
    std::vector<double> objective_trace;
};

// Initial centroids, ascending.
//   QuantileSeed: empirical quantiles at (i + 0.5)/k, collisions nudged to
//   the nearest unused distinct data value.
//   SeededRandom: k distinct data values drawn reproducibly from the seed.
// Throws InfeasibleKError when k exceeds the distinct value count.
std::vector<double> init_centroids(const std::vector<double>& data, const ClusteringParams& params);

// Nearest centroid per datum by absolute distance; exact ties go to the
// lowest centroid index.
std::vector<int> assign(const std::vector<double>& data, const std::vector<double>& centroids);

// Median of each cluster; even-sized clusters average the two middle values.
// Throws InvalidInputError if some cluster index in 0..k-1 has no members.
std::vector<double> update_centroids(const std::vector<double>& data,
                                     const std::vector<int>& assignments, int k);

// Sum of absolute deviations of each datum from its assigned centroid.
double objective_j(const std::vector<double>& data, const std::vector<int>& assignments,
                   const std::vector<double>& centroids);

// Alternates assignment and median updates until the largest centroid
// movement is <= tolerance or max_iterations is hit. Empty clusters are
// reseeded with the datum farthest from their centroid. Returns the best of
// params.restarts runs; centroids come back sorted descending with
// assignments relabeled to match.
ClusteringResult run_kmedians(const std::vector<double>& data, const ClusteringParams& params);

// Same loop with mean centroids and a squared-distance objective.
ClusteringResult run_kmeans(const std::vector<double>& data, const ClusteringParams& params);

// Exhaustive oracle: globally minimal objective over all partitions into k
// non-empty clusters with median centroids. Optimal 1-D Manhattan clusters
// are contiguous in sorted order, so this enumerates the C(n-1, k-1)
// contiguous partitions; instances beyond the enumeration budget are
// refused with SizeError.
ClusteringResult brute_force_optimal(const std::vector<double>& data, int k);

// Effective parameters of restart r: r = 0 keeps the configured init,
// r >= 1 reseeds with SeededRandom(seed + r).
ClusteringParams restart_params(const ClusteringParams& params, int restart);

}  // namespace elfscan
