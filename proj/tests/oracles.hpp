#pragma once

// Test-only reference implementations. Deliberately naive and independent of
// the library code paths they check.

#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

namespace oracle {

/// O(N^2) sample autocorrelation, straight from the definition.
inline std::vector<double> direct_acf(const std::vector<double>& x, std::size_t max_lag) {
    const std::size_t n = x.size();
    long double mean = 0;
    for (double v : x) mean += v;
    mean /= n;
    long double denom = 0;
    for (double v : x) denom += (v - mean) * (v - mean);
    std::vector<double> out(max_lag + 1);
    for (std::size_t tau = 0; tau <= max_lag; ++tau) {
        long double num = 0;
        for (std::size_t i = 0; i + tau < n; ++i) num += (x[i] - mean) * (x[i + tau] - mean);
        out[tau] = static_cast<double>(num / denom);
    }
    return out;
}

/// Each output recomputed from scratch, O(N w).
inline std::vector<double> direct_sma(const std::vector<double>& x, std::size_t w) {
    std::vector<double> out;
    for (std::size_t k = 0; k + w <= x.size(); ++k) {
        long double s = 0;
        for (std::size_t j = 0; j < w; ++j) s += x[k + j];
        out.push_back(static_cast<double>(s / w));
    }
    return out;
}

inline double direct_std(const std::vector<double>& x) {
    long double m = 0;
    for (double v : x) m += v;
    m /= x.size();
    long double ss = 0;
    for (double v : x) ss += (v - m) * (v - m);
    return static_cast<double>(std::sqrt(ss / x.size()));
}

inline double direct_roughness(const std::vector<double>& x) {
    std::vector<double> d;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) d.push_back(x[i + 1] - x[i]);
    return direct_std(d);
}

inline double direct_kurtosis(const std::vector<double>& x) {
    long double m = 0;
    for (double v : x) m += v;
    m /= x.size();
    long double m2 = 0, m4 = 0;
    for (double v : x) {
        const long double d = v - m;
        m2 += d * d;
        m4 += d * d * d * d;
    }
    m2 /= x.size();
    m4 /= x.size();
    return static_cast<double>(m4 / (m2 * m2));
}

struct Choice {
    std::size_t window = 1;
    double roughness = 0.0;
};

/// Brute-force window selection: minimum roughness subject to
/// kurtosis(smoothed) >= kurtosis(x), windows 1..max_window, ties to the smaller.
inline Choice brute_force_window(const std::vector<double>& x, std::size_t max_window) {
    const double k0 = direct_kurtosis(x);
    Choice best{1, direct_roughness(x)};
    for (std::size_t w = 2; w <= max_window && w < x.size(); ++w) {
        const auto y = direct_sma(x, w);
        if (y.size() < 2) break;
        const double k = direct_kurtosis(y);
        if (!(k >= k0)) continue;
        const double r = direct_roughness(y);
        if (r < best.roughness) best = {w, r};
    }
    return best;
}

} // namespace oracle
