#pragma once

#include "asap/series.hpp"
#include "asap/smoothing.hpp"

#include <algorithm>
#include <cstddef>

namespace asap {

struct PixelPlan {
    std::size_t resolution = 1;
    std::size_t ratio = 1;
    std::size_t aggregated_len = 0;
};

/// Points per pixel: max(1, floor(raw_len / resolution)).
inline std::size_t point_to_pixel_ratio(std::size_t raw_len, std::size_t resolution) {
    if (resolution < 1) throw Error("resolution must be positive");
    return std::max<std::size_t>(1, raw_len / resolution);
}

inline PixelPlan plan_pixels(std::size_t raw_len, std::size_t resolution) {
    const std::size_t ratio = point_to_pixel_ratio(raw_len, resolution);
    return {resolution, ratio, raw_len / ratio};
}

/// Replace disjoint groups of `ratio` points by their mean, stamped with the
/// group's first timestamp. A trailing partial group is dropped.
inline Series preaggregate(const Series& series, std::size_t ratio) {
    if (ratio < 1) throw Error("ratio must be positive");
    if (ratio == 1) return series;
    if (series.size() < ratio) return {};
    return smooth_series(series, {ratio, ratio});
}

} // namespace asap
