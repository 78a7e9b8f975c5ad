#pragma once

#include <bit>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <stdexcept>
#include <vector>

namespace asap::fft {

/// In-place iterative radix-2 Cooley-Tukey transform. Size must be a power of two.
/// The inverse is unnormalised; divide by size afterwards.
inline void transform(std::span<std::complex<double>> data, bool inverse) {
    const std::size_t n = data.size();
    if (n == 0 || !std::has_single_bit(n)) throw std::invalid_argument("fft size must be a power of two");

    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(data[i], data[j]);
    }

    const double sign = inverse ? 1.0 : -1.0;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        const double angle = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
        const std::size_t half = len / 2;
        // Twiddles computed directly rather than by repeated multiplication,
        // which loses ~1e-12 per stage on long transforms.
        std::vector<std::complex<double>> twiddle(half);
        for (std::size_t k = 0; k < half; ++k)
            twiddle[k] = std::polar(1.0, angle * static_cast<double>(k));
        for (std::size_t i = 0; i < n; i += len) {
            for (std::size_t k = 0; k < half; ++k) {
                const auto u = data[i + k];
                const auto v = data[i + k + half] * twiddle[k];
                data[i + k] = u + v;
                data[i + k + half] = u - v;
            }
        }
    }
}

inline std::size_t next_pow2(std::size_t n) { return std::bit_ceil(n); }

} // namespace asap::fft
