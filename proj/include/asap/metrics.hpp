#pragma once

#include "asap/series.hpp"

#include <cmath>
#include <span>
#include <vector>

// Population (divide-by-N) moments throughout; every moment is evaluated
// two-pass (mean first, then centered sums).

namespace asap {

inline std::vector<double> first_differences(std::span<const double> values) {
    if (values.size() < 2) throw Error("series too short for differencing");
    std::vector<double> out(values.size() - 1);
    for (std::size_t i = 0; i + 1 < values.size(); ++i) out[i] = values[i + 1] - values[i];
    return out;
}

inline double mean(std::span<const double> values) {
    if (values.empty()) throw Error("mean of empty sequence");
    double sum = 0.0;
    for (double v : values) sum += v;
    return sum / static_cast<double>(values.size());
}

inline double population_std(std::span<const double> values) {
    if (values.empty()) throw Error("standard deviation of empty sequence");
    const double mu = mean(values);
    double ss = 0.0;
    for (double v : values) ss += (v - mu) * (v - mu);
    return std::sqrt(ss / static_cast<double>(values.size()));
}

/// Standard deviation of the first-difference series. Zero exactly when the
/// series plots as a straight line.
inline double roughness(std::span<const double> values) {
    if (values.size() < 2) throw Error("series too short for differencing");
    // Same arithmetic as population_std(first_differences(values)) without
    // materialising the differences; exhaustive search calls this per window.
    const std::size_t n = values.size() - 1;
    const double mu = (values.back() - values.front()) / static_cast<double>(n);
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = values[i + 1] - values[i] - mu;
        ss += d * d;
    }
    return std::sqrt(ss / static_cast<double>(n));
}

/// Fourth standardized moment m4 / m2^2, no bias correction.
inline double kurtosis(std::span<const double> values) {
    if (values.size() < 2) throw Error("kurtosis needs at least two values");
    const double mu = mean(values);
    double m2 = 0.0;
    double m4 = 0.0;
    for (double v : values) {
        const double d2 = (v - mu) * (v - mu);
        m2 += d2;
        m4 += d2 * d2;
    }
    const auto n = static_cast<double>(values.size());
    m2 /= n;
    m4 /= n;
    if (!(m2 > 0.0)) throw Error("kurtosis undefined for constant series");
    return m4 / (m2 * m2);
}

inline bool is_constant(std::span<const double> values) noexcept {
    for (double v : values)
        if (v != values.front()) return false;
    return true;
}

inline std::vector<double> zscore(std::span<const double> values) {
    const double mu = mean(values);
    const double sd = population_std(values);
    if (!(sd > 0.0)) throw Error("z-score undefined for constant series");
    std::vector<double> out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) out[i] = (values[i] - mu) / sd;
    return out;
}

inline Series zscore(const Series& series) {
    return Series(series.timestamps(), zscore(series.values()));
}

} // namespace asap
