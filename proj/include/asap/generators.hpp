#pragma once

#include "asap/series.hpp"

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <string>
#include <string_view>
#include <vector>

// Seeded synthetic series used by tests, benchmarks and `asap bench --gen`.

namespace asap::gen {

struct SineParams {
    std::size_t n = 12000;
    double period = 240.0;
    double amplitude = 1.0;
    double noise_sd = 0.5;
};

inline Series noisy_sine(const SineParams& p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, p.noise_sd);
    std::vector<double> v(p.n);
    for (std::size_t i = 0; i < p.n; ++i)
        v[i] = p.amplitude * std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / p.period) + noise(rng);
    return Series::from_values(std::move(v));
}

inline Series iid_gaussian(std::size_t n, std::uint64_t seed, double sd = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> d(0.0, sd);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return Series::from_values(std::move(v));
}

inline Series iid_uniform(std::size_t n, std::uint64_t seed, double lo = -1.0, double hi = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(lo, hi);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    return Series::from_values(std::move(v));
}

/// Unit-scale Laplace via inverse CDF.
inline Series iid_laplace(std::size_t n, std::uint64_t seed, double scale = 1.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-0.5, 0.5);
    std::vector<double> v(n);
    for (auto& x : v) {
        double u = d(rng);
        while (u == -0.5) u = d(rng);
        x = -scale * std::copysign(1.0, u) * std::log(1.0 - 2.0 * std::abs(u));
    }
    return Series::from_values(std::move(v));
}

struct TrendSeasonalParams {
    std::size_t n = 12000;
    double slope = 2.0 / 12000.0;
    double period = 240.0;
    double amplitude = 1.0;
    double noise_sd = 0.5;
};

inline Series trend_seasonal(const TrendSeasonalParams& p, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, p.noise_sd);
    std::vector<double> v(p.n);
    for (std::size_t i = 0; i < p.n; ++i) {
        const double t = static_cast<double>(i);
        v[i] = p.slope * t + p.amplitude * std::sin(2.0 * std::numbers::pi * t / p.period) + noise(rng);
    }
    return Series::from_values(std::move(v));
}

/// Uniform noise in [-1, 1] with a single point of value `spike` in the middle.
inline Series spike_in_noise(std::size_t n, std::uint64_t seed, double spike = 10.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    std::vector<double> v(n);
    for (auto& x : v) x = d(rng);
    if (n > 0) v[n / 2] = spike;
    return Series::from_values(std::move(v));
}

inline const std::vector<std::string>& names() {
    static const std::vector<std::string> all{"sine", "gaussian", "uniform", "laplace", "trend_seasonal", "spike"};
    return all;
}

/// Generator by name with default shape parameters and `n` points.
inline Series by_name(std::string_view name, std::size_t n, std::uint64_t seed) {
    if (name == "sine") {
        SineParams p;
        p.n = n;
        return noisy_sine(p, seed);
    }
    if (name == "gaussian") return iid_gaussian(n, seed);
    if (name == "uniform") return iid_uniform(n, seed);
    if (name == "laplace") return iid_laplace(n, seed);
    if (name == "trend_seasonal") {
        TrendSeasonalParams p;
        p.n = n;
        p.slope = n > 0 ? 2.0 / static_cast<double>(n) : 0.0;
        return trend_seasonal(p, seed);
    }
    if (name == "spike") return spike_in_noise(n, seed);
    throw Error("unknown generator: " + std::string(name));
}

} // namespace asap::gen
