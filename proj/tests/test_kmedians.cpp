#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "elfscan/kmedians.hpp"
#include "elfscan/rng.hpp"

using namespace elfscan;

namespace {

ClusteringParams params_k(int k) {
    ClusteringParams p;
    p.k = k;
    return p;
}

std::vector<double> uniform_values(std::uint64_t seed, int n, double hi = 3.0) {
    Rng rng(seed);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) values.push_back(hi * rng.uniform01());
    return values;
}

// Structural contract of every result: complete assignment, no empty
// cluster, nearest-centroid memberships, objective consistent with Eq-style
// recomputation, centroids descending.
void check_result_invariants(const std::vector<double>& data, const ClusteringResult& r,
                             bool manhattan = true) {
    const int k = static_cast<int>(r.centroids.size());
    REQUIRE(r.assignments.size() == data.size());
    std::vector<int> counts(static_cast<std::size_t>(k), 0);
    for (std::size_t i = 0; i < data.size(); ++i) {
        const int a = r.assignments[i];
        REQUIRE(a >= 0);
        REQUIRE(a < k);
        counts[static_cast<std::size_t>(a)]++;
        double best = std::abs(data[i] - r.centroids[0]);
        int best_j = 0;
        for (int j = 1; j < k; ++j) {
            const double d = std::abs(data[i] - r.centroids[static_cast<std::size_t>(j)]);
            if (d < best) {
                best = d;
                best_j = j;
            }
        }
        const double assigned = std::abs(data[i] - r.centroids[static_cast<std::size_t>(a)]);
        CHECK(assigned == doctest::Approx(best).epsilon(1e-12));
        // best_j is the lowest index reaching the minimum, so exact ties
        // must land there.
        if (assigned == best) CHECK(a == best_j);
    }
    for (int c : counts) CHECK(c > 0);
    for (int j = 1; j < k; ++j) {
        CHECK(r.centroids[static_cast<std::size_t>(j)] <=
              r.centroids[static_cast<std::size_t>(j - 1)]);
    }
    if (manhattan) {
        const double recomputed = objective_j(data, r.assignments, r.centroids);
        CHECK(r.objective == doctest::Approx(recomputed).epsilon(1e-12));
    }
}

bool trace_non_increasing(const std::vector<double>& trace) {
    for (std::size_t i = 1; i < trace.size(); ++i) {
        if (trace[i] > trace[i - 1] + 1e-12 * std::max(1.0, trace[i - 1])) return false;
    }
    return true;
}

}  // namespace

TEST_CASE("quantile seeding hits the stated quantiles") {
    const std::vector<double> data = {1.0, 2.0, 3.0, 4.0};
    const auto centroids = init_centroids(data, params_k(2));
    REQUIRE(centroids.size() == 2);
    CHECK(centroids[0] == doctest::Approx(1.5).epsilon(1e-15));
    CHECK(centroids[1] == doctest::Approx(3.5).epsilon(1e-15));
}

TEST_CASE("quantile seeding with k = n returns the data values") {
    const std::vector<double> data = {0.4, 0.1, 0.9, 0.2};
    const auto centroids = init_centroids(data, params_k(4));
    CHECK(centroids == std::vector<double>{0.1, 0.2, 0.4, 0.9});
}

TEST_CASE("quantile seeding nudges collisions to unused distinct values") {
    // Heavy duplication collapses the quantiles; seeds must still be distinct.
    const std::vector<double> data = {1.0, 1.0, 1.0, 1.0, 1.0, 2.0, 3.0};
    const auto centroids = init_centroids(data, params_k(3));
    REQUIRE(centroids.size() == 3);
    CHECK(std::adjacent_find(centroids.begin(), centroids.end()) == centroids.end());
}

TEST_CASE("seeded random draws are reproducible and distinct") {
    const auto data = uniform_values(11, 20);
    ClusteringParams p = params_k(4);
    p.init = InitStrategy::SeededRandom;
    p.seed = 99;
    const auto first = init_centroids(data, p);
    const auto second = init_centroids(data, p);
    CHECK(first == second);
    CHECK(std::adjacent_find(first.begin(), first.end()) == first.end());

    p.seed = 100;
    CHECK(init_centroids(data, p) != first);
}

TEST_CASE("init rejects infeasible k") {
    CHECK_THROWS_AS(init_centroids({1.0, 1.0, 2.0}, params_k(3)), InfeasibleKError);
    CHECK_THROWS_AS(init_centroids({1.0, 2.0}, params_k(0)), InfeasibleKError);
    CHECK_THROWS_AS(init_centroids({}, params_k(1)), InvalidInputError);
}

TEST_CASE("assign picks the nearest centroid with ties to the lowest index") {
    CHECK(assign({0.0, 10.0}, {1.0, 9.0}) == std::vector<int>{0, 1});
    CHECK(assign({5.0}, {4.0, 6.0}) == std::vector<int>{0});  // exact midpoint
    CHECK(assign({-3.0, 0.0, 7.5}, {2.0}) == std::vector<int>{0, 0, 0});
}

TEST_CASE("update_centroids takes cluster medians") {
    CHECK(update_centroids({1.0, 2.0, 100.0}, {0, 0, 0}, 1) == std::vector<double>{2.0});
    CHECK(update_centroids({1.0, 3.0}, {0, 0}, 1) == std::vector<double>{2.0});
    CHECK(update_centroids({5.0}, {0}, 1) == std::vector<double>{5.0});
    CHECK(update_centroids({1.0, 9.0, 2.0, 8.0}, {0, 1, 0, 1}, 2) ==
          std::vector<double>{1.5, 8.5});
    CHECK_THROWS_AS(update_centroids({1.0, 2.0}, {0, 0}, 2), InvalidInputError);
}

TEST_CASE("objective_j sums absolute deviations") {
    const std::vector<double> data = {0.1, 0.2, 0.9, 1.0};
    CHECK(objective_j(data, {0, 0, 1, 1}, {0.15, 0.95}) ==
          doctest::Approx(0.2).epsilon(1e-12));
    CHECK(objective_j({1.0, 2.0}, {0, 1}, {1.0, 2.0}) == 0.0);
    CHECK(objective_j({1.0, 2.0, 3.0}, {0, 0, 0}, {2.0}) == 2.0);
}

TEST_CASE("run_kmedians solves the four-point example optimally") {
    const std::vector<double> data = {0.1, 0.2, 0.9, 1.0};
    const auto r = run_kmedians(data, params_k(2));
    check_result_invariants(data, r);
    CHECK(r.objective == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(r.converged);
    // Highest centroid first, so the two big values belong to cluster 0.
    CHECK(r.assignments == std::vector<int>{1, 1, 0, 0});
    CHECK(r.centroids[0] == doctest::Approx(0.95));
    CHECK(r.centroids[1] == doctest::Approx(0.15));
}

TEST_CASE("run_kmedians on constant data converges immediately") {
    const std::vector<double> data = {0.7, 0.7, 0.7};
    const auto r = run_kmedians(data, params_k(1));
    CHECK(r.centroids == std::vector<double>{0.7});
    CHECK(r.objective == 0.0);
    CHECK(r.iterations == 1);
    CHECK(r.converged);
}

TEST_CASE("run_kmedians propagates infeasible k") {
    CHECK_THROWS_AS(run_kmedians({1.0, 1.0}, params_k(2)), InfeasibleKError);
}

TEST_CASE("objective trace is non-increasing on random instances") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const auto data = uniform_values(seed, 40);
        ClusteringParams p = params_k(4);
        p.seed = seed;
        for (int r = 0; r < 3; ++r) {
            const auto result = run_kmedians(data, restart_params(p, r));
            CHECK(trace_non_increasing(result.objective_trace));
            check_result_invariants(data, result);
        }
    }
}

TEST_CASE("duplicate-heavy data keeps every cluster populated") {
    // Exercises the empty-cluster repair path through coarse duplicates.
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        Rng rng(seed);
        std::vector<double> data;
        for (int i = 0; i < 25; ++i) {
            data.push_back(std::floor(rng.uniform01() * 6.0) * 0.25);
        }
        ClusteringParams p = params_k(4);
        p.init = InitStrategy::SeededRandom;
        p.seed = seed;
        std::vector<double> distinct = data;
        std::sort(distinct.begin(), distinct.end());
        distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
        if (distinct.size() < 4) continue;
        const auto r = run_kmedians(data, p);
        check_result_invariants(data, r);
        CHECK(trace_non_increasing(r.objective_trace));
    }
}

TEST_CASE("shifting and scaling the data moves centroids, not the partition") {
    const auto data = uniform_values(5, 30);
    const auto base = run_kmedians(data, params_k(3));

    std::vector<double> shifted;
    for (double v : data) shifted.push_back(v + 10.0);
    const auto rs = run_kmedians(shifted, params_k(3));
    CHECK(rs.assignments == base.assignments);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(rs.centroids[j] == doctest::Approx(base.centroids[j] + 10.0).epsilon(1e-9));
    }
    CHECK(rs.objective == doctest::Approx(base.objective).epsilon(1e-9));

    std::vector<double> scaled;
    for (double v : data) scaled.push_back(v * 4.0);
    const auto rc = run_kmedians(scaled, params_k(3));
    CHECK(rc.assignments == base.assignments);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(rc.centroids[j] == doctest::Approx(base.centroids[j] * 4.0).epsilon(1e-9));
    }
    CHECK(rc.objective == doctest::Approx(base.objective * 4.0).epsilon(1e-9));
}

TEST_CASE("brute force oracle on the hand-checked examples") {
    const std::vector<double> data = {0.1, 0.2, 0.9, 1.0};
    const auto r = brute_force_optimal(data, 2);
    CHECK(r.objective == doctest::Approx(0.2).epsilon(1e-12));
    check_result_invariants(data, r);

    CHECK(brute_force_optimal({0.5, 1.5, 2.5}, 3).objective == 0.0);

    const auto k1 = brute_force_optimal({1.0, 2.0, 3.0, 7.0}, 1);
    CHECK(k1.centroids == std::vector<double>{2.5});
    CHECK(k1.objective == doctest::Approx(1.5 + 0.5 + 0.5 + 4.5).epsilon(1e-12));
}

TEST_CASE("brute force refuses oversized instances") {
    const auto data = uniform_values(1, 80);
    CHECK_THROWS_AS(brute_force_optimal(data, 40), SizeError);
}

TEST_CASE("run_kmedians never undercuts the oracle and matches it with restarts") {
    int matches = 0;
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        const auto data = uniform_values(trial, 30);
        const auto oracle = brute_force_optimal(data, 3);

        ClusteringParams p = params_k(3);
        p.seed = trial;
        p.restarts = 1;
        const auto single = run_kmedians(data, p);
        CHECK(single.objective >= oracle.objective - 1e-9);

        // Lloyd iterations stall in local minima on instances this size;
        // restarts recover the optimum in nearly every trial.
        p.restarts = 25;
        const auto best = run_kmedians(data, p);
        CHECK(best.objective >= oracle.objective - 1e-9);
        if (std::abs(best.objective - oracle.objective) <= 1e-9) ++matches;
    }
    CHECK(matches >= 95);
}

TEST_CASE("kmeans and kmedians centroids differ exactly as mean vs median") {
    const std::vector<double> data = {1.0, 2.0, 100.0};
    const auto med = run_kmedians(data, params_k(1));
    const auto mean = run_kmeans(data, params_k(1));
    CHECK(med.centroids[0] == 2.0);
    CHECK(mean.centroids[0] == doctest::Approx(103.0 / 3.0).epsilon(1e-12));

    const auto sym = run_kmeans({-1.0, 1.0}, params_k(1));
    CHECK(sym.centroids[0] == 0.0);
    CHECK(run_kmedians({-1.0, 1.0}, params_k(1)).centroids[0] == 0.0);
}

TEST_CASE("kmeans finds the same four-point partition") {
    const std::vector<double> data = {0.1, 0.2, 0.9, 1.0};
    const auto r = run_kmeans(data, params_k(2));
    CHECK(r.assignments == std::vector<int>{1, 1, 0, 0});
    CHECK(r.centroids[0] == doctest::Approx(0.95));
    CHECK(r.centroids[1] == doctest::Approx(0.15));
    // Squared objective: 4 * 0.05^2
    CHECK(r.objective == doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("median centroid ignores a growing outlier while the mean chases it") {
    for (double m : {3.0, 10.0, 100.0, 1e6}) {
        const std::vector<double> data = {1.0, 2.0, 3.0, m};
        const auto med = run_kmedians(data, params_k(1));
        const auto mean = run_kmeans(data, params_k(1));
        CHECK(med.centroids[0] == 2.5);
        CHECK(mean.centroids[0] == doctest::Approx((6.0 + m) / 4.0).epsilon(1e-12));
    }
}
