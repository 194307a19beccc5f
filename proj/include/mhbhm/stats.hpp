#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "mhbhm/errors.hpp"

namespace mhbhm {

/// Empirical quantile with linear interpolation between order statistics,
/// h = (n - 1) * alpha + 1 (the R type-7 convention). Input must be sorted.
inline double quantile_sorted(const std::vector<double>& sorted, double alpha) {
    if (sorted.empty()) throw DataError("quantile: empty sample");
    if (!(alpha > 0.0) || !(alpha < 1.0))
        throw ConfigError("quantile: alpha must lie in (0, 1)");
    const std::size_t n = sorted.size();
    const double h = static_cast<double>(n - 1) * alpha; // zero-based position
    const std::size_t lo = static_cast<std::size_t>(std::floor(h));
    if (lo + 1 >= n) return sorted[n - 1];
    const double frac = h - static_cast<double>(lo);
    return sorted[lo] + frac * (sorted[lo + 1] - sorted[lo]);
}

inline double quantile(std::vector<double> sample, double alpha) {
    std::sort(sample.begin(), sample.end());
    return quantile_sorted(sample, alpha);
}

inline double mean(const std::vector<double>& x) {
    if (x.empty()) throw DataError("mean: empty sample");
    double s = 0.0;
    for (double v : x) s += v;
    return s / static_cast<double>(x.size());
}

/// Sample standard deviation (n - 1 denominator); 0 for n = 1.
inline double sample_sd(const std::vector<double>& x) {
    if (x.empty()) throw DataError("sample_sd: empty sample");
    if (x.size() == 1) return 0.0;
    const double m = mean(x);
    double s = 0.0;
    for (double v : x) s += (v - m) * (v - m);
    return std::sqrt(s / static_cast<double>(x.size() - 1));
}

inline double median(std::vector<double> x) {
    if (x.empty()) throw DataError("median: empty sample");
    std::sort(x.begin(), x.end());
    const std::size_t n = x.size();
    if (n % 2 == 1) return x[n / 2];
    return 0.5 * (x[n / 2 - 1] + x[n / 2]);
}

} // namespace mhbhm
