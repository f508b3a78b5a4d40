#include "elfscan/kmedians.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "elfscan/rng.hpp"
#include "elfscan/stats.hpp"

namespace elfscan {

namespace {

enum class Method { KMedians, KMeans };

// Enumeration budget of the exhaustive oracle, C(n-1, k-1) partitions.
constexpr double kMaxOraclePartitions = 2e6;

void require_finite(const std::vector<double>& data) {
    if (data.empty()) throw InvalidInputError("clustering requires non-empty data");
    for (double v : data) {
        if (!std::isfinite(v)) throw InvalidInputError("clustering data must be finite");
    }
}

std::vector<double> distinct_sorted(const std::vector<double>& data) {
    std::vector<double> values = data;
    std::sort(values.begin(), values.end());
    values.erase(std::unique(values.begin(), values.end()), values.end());
    return values;
}

void require_feasible_k(int k, std::size_t distinct_count) {
    if (k < 1) throw InfeasibleKError("k must be at least 1");
    if (static_cast<std::size_t>(k) > distinct_count) {
        throw InfeasibleKError("k = " + std::to_string(k) + " exceeds the " +
                               std::to_string(distinct_count) + " distinct data value(s)");
    }
}

double point_cost(double x, double c, Method method) {
    const double d = x - c;
    return method == Method::KMedians ? std::abs(d) : d * d;
}

double partition_cost(const std::vector<double>& data, const std::vector<int>& assignments,
                      const std::vector<double>& centroids, Method method) {
    double total = 0.0;
    for (std::size_t i = 0; i < data.size(); ++i) {
        total += point_cost(data[i], centroids[assignments[i]], method);
    }
    return total;
}

double cluster_center(std::vector<double>& members, Method method) {
    if (method == Method::KMedians) return median_of(std::move(members));
    return std::accumulate(members.begin(), members.end(), 0.0) /
           static_cast<double>(members.size());
}

std::vector<double> recompute_centroids(const std::vector<double>& data,
                                        const std::vector<int>& assignments, int k,
                                        Method method) {
    std::vector<std::vector<double>> clusters(static_cast<std::size_t>(k));
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int a = assignments[i];
        if (a < 0 || a >= k) throw InvalidInputError("assignment index outside 0..k-1");
        clusters[static_cast<std::size_t>(a)].push_back(data[i]);
    }
    std::vector<double> centroids(static_cast<std::size_t>(k));
    for (int j = 0; j < k; ++j) {
        auto& members = clusters[static_cast<std::size_t>(j)];
        if (members.empty()) {
            throw InvalidInputError("cluster " + std::to_string(j) + " has no members");
        }
        centroids[static_cast<std::size_t>(j)] = cluster_center(members, method);
    }
    return centroids;
}

// Reseeds each empty cluster with the datum farthest from its centroid
// (skipping values already used as centroids) and re-assigns. Each pass
// permanently fills one cluster, so k passes suffice.
void repair_empty_clusters(const std::vector<double>& data, std::vector<double>& centroids,
                           std::vector<int>& assignments) {
    const int k = static_cast<int>(centroids.size());
    for (int pass = 0; pass < k; ++pass) {
        std::vector<int> counts(static_cast<std::size_t>(k), 0);
        for (int a : assignments) counts[static_cast<std::size_t>(a)]++;
        int empty = -1;
        for (int j = 0; j < k; ++j) {
            if (counts[static_cast<std::size_t>(j)] == 0) {
                empty = j;
                break;
            }
        }
        if (empty < 0) return;

        int best = -1;
        double best_distance = -1.0;
        for (std::size_t i = 0; i < data.size(); ++i) {
            const bool is_centroid =
                std::find(centroids.begin(), centroids.end(), data[i]) != centroids.end();
            if (is_centroid) continue;
            const double d = std::abs(data[i] - centroids[static_cast<std::size_t>(empty)]);
            if (d > best_distance) {
                best_distance = d;
                best = static_cast<int>(i);
            }
        }
        if (best < 0) break;  // k <= distinct values makes this unreachable
        centroids[static_cast<std::size_t>(empty)] = data[static_cast<std::size_t>(best)];
        assignments = assign(data, centroids);
    }
}

// Sorts centroids descending and relabels so index 0 is the highest
// centroid, then re-derives assignments under the canonical tie rule.
// Repairs can move centroids, so iterate until the order is stable.
void finalize(const std::vector<double>& data, std::vector<double>& centroids,
              std::vector<int>& assignments) {
    const int k = static_cast<int>(centroids.size());
    for (int guard = 0; guard <= k; ++guard) {
        std::sort(centroids.begin(), centroids.end(), std::greater<>());
        assignments = assign(data, centroids);
        std::vector<int> counts(static_cast<std::size_t>(k), 0);
        for (int a : assignments) counts[static_cast<std::size_t>(a)]++;
        if (std::find(counts.begin(), counts.end(), 0) == counts.end()) return;
        repair_empty_clusters(data, centroids, assignments);
    }
    throw Error("internal: empty-cluster repair did not stabilize");
}

ClusteringResult run_once(const std::vector<double>& data, const ClusteringParams& params,
                          Method method) {
    const int k = params.k;
    if (params.max_iterations < 1) throw InvalidInputError("max_iterations must be >= 1");
    if (params.tolerance < 0.0) throw InvalidInputError("tolerance must be >= 0");

    ClusteringResult result;
    std::vector<double> centroids = init_centroids(data, params);
    std::vector<int> assignments;

    for (int iter = 1; iter <= params.max_iterations; ++iter) {
        assignments = assign(data, centroids);
        repair_empty_clusters(data, centroids, assignments);
        result.objective_trace.push_back(partition_cost(data, assignments, centroids, method));

        const std::vector<double> next = recompute_centroids(data, assignments, k, method);
        double movement = 0.0;
        for (int j = 0; j < k; ++j) {
            movement = std::max(movement, std::abs(next[static_cast<std::size_t>(j)] -
                                                   centroids[static_cast<std::size_t>(j)]));
        }
        centroids = next;
        result.objective_trace.push_back(partition_cost(data, assignments, centroids, method));
        result.iterations = iter;
        if (movement <= params.tolerance) {
            result.converged = true;
            break;
        }
    }

    finalize(data, centroids, assignments);
    result.centroids = std::move(centroids);
    result.assignments = std::move(assignments);
    result.objective = partition_cost(data, result.assignments, result.centroids, method);
    return result;
}

ClusteringResult run_clustering(const std::vector<double>& data, const ClusteringParams& params,
                                Method method) {
    require_finite(data);
    require_feasible_k(params.k, distinct_sorted(data).size());
    if (params.restarts < 1) throw InvalidInputError("restarts must be >= 1");

    ClusteringResult best;
    for (int r = 0; r < params.restarts; ++r) {
        ClusteringResult candidate = run_once(data, restart_params(params, r), method);
        if (r == 0 || candidate.objective < best.objective) best = std::move(candidate);
    }
    return best;
}

double nCk_capped(int n, int k) {
    double c = 1.0;
    for (int i = 1; i <= k; ++i) {
        c *= static_cast<double>(n - k + i) / static_cast<double>(i);
        if (c > kMaxOraclePartitions * 2) return c;
    }
    return c;
}

}  // namespace

ClusteringParams restart_params(const ClusteringParams& params, int restart) {
    ClusteringParams effective = params;
    effective.restarts = 1;
    if (restart > 0) {
        effective.init = InitStrategy::SeededRandom;
        effective.seed = params.seed + static_cast<std::uint64_t>(restart);
    }
    return effective;
}

std::vector<double> init_centroids(const std::vector<double>& data,
                                   const ClusteringParams& params) {
    require_finite(data);
    const std::vector<double> distinct = distinct_sorted(data);
    require_feasible_k(params.k, distinct.size());
    const std::size_t k = static_cast<std::size_t>(params.k);

    std::vector<double> centroids;
    centroids.reserve(k);

    if (params.init == InitStrategy::QuantileSeed) {
        std::vector<double> sorted = data;
        std::sort(sorted.begin(), sorted.end());
        auto used = [&](double v) {
            return std::find(centroids.begin(), centroids.end(), v) != centroids.end();
        };
        for (std::size_t i = 0; i < k; ++i) {
            const double q = (static_cast<double>(i) + 0.5) / static_cast<double>(k);
            double c = midpoint_quantile(sorted, q);
            if (used(c)) {
                // Collision: nudge to the nearest distinct value not yet taken.
                double nudged = 0.0;
                double best_distance = std::numeric_limits<double>::infinity();
                for (double v : distinct) {
                    if (used(v)) continue;
                    const double d = std::abs(v - c);
                    if (d < best_distance) {
                        best_distance = d;
                        nudged = v;
                    }
                }
                c = nudged;
            }
            centroids.push_back(c);
        }
    } else {
        // Partial Fisher-Yates over the distinct values.
        std::vector<double> pool = distinct;
        Rng rng(params.seed);
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t j =
                i + static_cast<std::size_t>(rng.uniform_index(pool.size() - i));
            std::swap(pool[i], pool[j]);
            centroids.push_back(pool[i]);
        }
    }

    std::sort(centroids.begin(), centroids.end());
    return centroids;
}

std::vector<int> assign(const std::vector<double>& data, const std::vector<double>& centroids) {
    if (centroids.empty()) throw InvalidInputError("assign requires at least one centroid");
    for (double c : centroids) {
        if (!std::isfinite(c)) throw InvalidInputError("centroids must be finite");
    }
    std::vector<int> assignments(data.size(), 0);
    for (std::size_t i = 0; i < data.size(); ++i) {
        double best = std::abs(data[i] - centroids[0]);
        int best_j = 0;
        for (std::size_t j = 1; j < centroids.size(); ++j) {
            const double d = std::abs(data[i] - centroids[j]);
            if (d < best) {  // strict: ties stay with the lowest index
                best = d;
                best_j = static_cast<int>(j);
            }
        }
        assignments[i] = best_j;
    }
    return assignments;
}

std::vector<double> update_centroids(const std::vector<double>& data,
                                     const std::vector<int>& assignments, int k) {
    if (assignments.size() != data.size()) {
        throw InvalidInputError("assignments and data differ in length");
    }
    return recompute_centroids(data, assignments, k, Method::KMedians);
}

double objective_j(const std::vector<double>& data, const std::vector<int>& assignments,
                   const std::vector<double>& centroids) {
    if (assignments.size() != data.size()) {
        throw InvalidInputError("assignments and data differ in length");
    }
    for (int a : assignments) {
        if (a < 0 || static_cast<std::size_t>(a) >= centroids.size()) {
            throw InvalidInputError("assignment index outside 0..k-1");
        }
    }
    return partition_cost(data, assignments, centroids, Method::KMedians);
}

ClusteringResult run_kmedians(const std::vector<double>& data, const ClusteringParams& params) {
    return run_clustering(data, params, Method::KMedians);
}

ClusteringResult run_kmeans(const std::vector<double>& data, const ClusteringParams& params) {
    return run_clustering(data, params, Method::KMeans);
}

ClusteringResult brute_force_optimal(const std::vector<double>& data, int k) {
    require_finite(data);
    require_feasible_k(k, distinct_sorted(data).size());
    const std::size_t n = data.size();
    if (nCk_capped(static_cast<int>(n) - 1, k - 1) > kMaxOraclePartitions) {
        throw SizeError("C(" + std::to_string(n - 1) + ", " + std::to_string(k - 1) +
                        ") contiguous partitions exceed the oracle budget");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return data[a] < data[b]; });
    std::vector<double> sorted(n);
    for (std::size_t i = 0; i < n; ++i) sorted[i] = data[order[i]];

    std::vector<double> prefix(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + sorted[i];

    // Absolute-deviation cost of sorted[a..b) around its median.
    auto range_cost = [&](std::size_t a, std::size_t b, double& median) {
        const std::size_t len = b - a;
        const std::size_t lo = a + (len - 1) / 2;
        const std::size_t hi = a + len / 2;
        median = 0.5 * (sorted[lo] + sorted[hi]);
        const double left = median * static_cast<double>(lo - a + 1) - (prefix[lo + 1] - prefix[a]);
        const double right = (prefix[b] - prefix[lo + 1]) - median * static_cast<double>(b - lo - 1);
        return left + right;
    };

    // Split positions: k-1 strictly increasing cut points in 1..n-1.
    std::vector<std::size_t> cuts(static_cast<std::size_t>(k) - 1);
    std::iota(cuts.begin(), cuts.end(), 1);

    double best_cost = std::numeric_limits<double>::infinity();
    std::vector<std::size_t> best_cuts;
    for (;;) {
        double cost = 0.0;
        std::size_t start = 0;
        for (std::size_t c = 0; c <= cuts.size(); ++c) {
            const std::size_t end = c < cuts.size() ? cuts[c] : n;
            double median = 0.0;
            cost += range_cost(start, end, median);
            start = end;
        }
        if (cost < best_cost) {
            best_cost = cost;
            best_cuts = cuts;
        }

        // Next combination.
        int pos = static_cast<int>(cuts.size()) - 1;
        while (pos >= 0 && cuts[static_cast<std::size_t>(pos)] ==
                               n - cuts.size() + static_cast<std::size_t>(pos)) {
            --pos;
        }
        if (pos < 0) break;
        ++cuts[static_cast<std::size_t>(pos)];
        for (std::size_t i = static_cast<std::size_t>(pos) + 1; i < cuts.size(); ++i) {
            cuts[i] = cuts[i - 1] + 1;
        }
    }

    // Ranges are ascending; cluster 0 must be the highest centroid.
    ClusteringResult result;
    result.centroids.assign(static_cast<std::size_t>(k), 0.0);
    result.assignments.assign(n, 0);
    std::size_t start = 0;
    for (std::size_t c = 0; c < static_cast<std::size_t>(k); ++c) {
        const std::size_t end = c < best_cuts.size() ? best_cuts[c] : n;
        double median = 0.0;
        range_cost(start, end, median);
        const int label = k - 1 - static_cast<int>(c);
        result.centroids[static_cast<std::size_t>(label)] = median;
        for (std::size_t i = start; i < end; ++i) {
            result.assignments[order[i]] = label;
        }
        start = end;
    }

    // Align exact ties with the canonical nearest-centroid rule when doing
    // so keeps every cluster populated; the objective is unchanged either way.
    std::vector<int> canonical = assign(data, result.centroids);
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (int a : canonical) counts[static_cast<std::size_t>(a)]++;
    if (std::find(counts.begin(), counts.end(), 0) == counts.end()) {
        result.assignments = std::move(canonical);
    }

    result.objective = partition_cost(data, result.assignments, result.centroids, Method::KMedians);
    result.iterations = 0;
    result.converged = true;
    result.objective_trace = {result.objective};
    return result;
}

}  // namespace elfscan
