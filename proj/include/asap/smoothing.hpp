#pragma once

#include "asap/series.hpp"

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace asap {

struct SmoothParams {
    std::size_t window = 1;
    std::size_t slide = 1;
};

/// Simple moving average. output[k] is the mean of values[k*slide, k*slide + window).
/// Partial trailing windows are dropped, so slide 1 yields N - window + 1 points.
inline std::vector<double> sma(std::span<const double> values, std::size_t window,
                               std::size_t slide = 1) {
    if (window < 1 || window > values.size()) throw Error("invalid window");
    if (slide < 1) throw Error("invalid slide");
    if (window == 1 && slide == 1) return {values.begin(), values.end()};

    const std::size_t count = (values.size() - window) / slide + 1;
    std::vector<double> out;
    out.reserve(count);
    const double inv = 1.0 / static_cast<double>(window);

    if (slide >= window) {
        for (std::size_t k = 0; k < count; ++k) {
            double sum = 0.0;
            for (std::size_t j = 0; j < window; ++j) sum += values[k * slide + j];
            out.push_back(sum / static_cast<double>(window));
        }
        return out;
    }

    // Sliding sum with Neumaier compensation so long windows over large
    // offsets do not drift.
    double sum = 0.0;
    double comp = 0.0;
    auto add = [&](double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x))
            comp += (sum - t) + x;
        else
            comp += (x - t) + sum;
        sum = t;
    };
    for (std::size_t j = 0; j < window; ++j) add(values[j]);
    out.push_back((sum + comp) * inv);
    std::size_t start = 0;
    for (std::size_t k = 1; k < count; ++k) {
        for (std::size_t s = 0; s < slide; ++s) {
            add(values[start + window + s]);
            add(-values[start + s]);
        }
        start += slide;
        out.push_back((sum + comp) * inv);
    }
    return out;
}

/// SMA carrying timestamps; each output point takes the first timestamp of its window.
inline Series smooth_series(const Series& series, SmoothParams params) {
    auto values = sma(series.values(), params.window, params.slide);
    std::vector<Timestamp> ts(values.size());
    for (std::size_t k = 0; k < ts.size(); ++k) ts[k] = series.timestamps()[k * params.slide];
    return Series(std::move(ts), std::move(values));
}

} // namespace asap
