#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "elfscan/errors.hpp"

namespace elfscan {

// Median; even-sized input averages the two middle values.
inline double median_of(std::vector<double> values) {
    if (values.empty()) throw InvalidInputError("median of empty set");
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    const double lo = values[(n - 1) / 2];
    const double hi = values[n / 2];
    return 0.5 * (lo + hi);
}

// Empirical quantile with midpoint convention: the sample at sorted position
// q*n - 0.5 (0-based), linearly interpolated and clamped to the data range.
// quantile(0.25) of {1,2,3,4} is 1.5.
inline double midpoint_quantile(const std::vector<double>& sorted, double q) {
    if (sorted.empty()) throw InvalidInputError("quantile of empty set");
    const std::size_t n = sorted.size();
    double h = q * static_cast<double>(n) - 0.5;
    if (h <= 0.0) return sorted.front();
    if (h >= static_cast<double>(n - 1)) return sorted.back();
    const std::size_t lo = static_cast<std::size_t>(h);
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

}  // namespace elfscan
