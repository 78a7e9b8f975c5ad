#pragma once

#include "asap/fft.hpp"
#include "asap/metrics.hpp"
#include "asap/series.hpp"

#include <algorithm>
#include <complex>
#include <span>
#include <vector>

namespace asap {

struct AcfProfile {
    /// correlations[tau] for tau = 0..max_lag.
    std::vector<double> correlations;
    /// Ascending peak lags.
    std::vector<std::size_t> peaks;
    /// Largest correlation among peaks, 0 when there are none.
    double max_acf = 0.0;

    [[nodiscard]] std::size_t max_lag() const noexcept {
        return correlations.empty() ? 0 : correlations.size() - 1;
    }
};

inline constexpr double kDefaultPeakThreshold = 0.2;
inline constexpr std::size_t kDefaultMinPeakLag = 2;

/// Sample autocorrelation
///   r[tau] = sum_{i<N-tau} (x_i - m)(x_{i+tau} - m) / sum_i (x_i - m)^2
/// via mean removal, zero padding to a power of two >= 2N, forward FFT,
/// power spectrum, inverse FFT, normalisation by lag 0.
inline std::vector<double> autocorrelation(std::span<const double> values, std::size_t max_lag) {
    const std::size_t n = values.size();
    if (n < 4) throw Error("autocorrelation needs at least four values");
    if (max_lag >= n) throw Error("max_lag must be smaller than the series length");
    if (is_constant(values)) throw Error("ACF undefined for constant series");

    const double mu = mean(values);
    std::vector<std::complex<double>> buf(fft::next_pow2(2 * n));
    for (std::size_t i = 0; i < n; ++i) buf[i] = values[i] - mu;

    fft::transform(buf, false);
    for (auto& c : buf) c = std::norm(c);
    fft::transform(buf, true);

    const double lag0 = buf[0].real();
    std::vector<double> out(max_lag + 1);
    for (std::size_t tau = 0; tau <= max_lag; ++tau) out[tau] = buf[tau].real() / lag0;
    out[0] = 1.0;
    return out;
}

/// Local maxima of the correlation curve at lags >= min_lag whose value
/// exceeds threshold. A plateau is reported once, at its leftmost lag, and
/// only when the curve descends again before the end of the array.
inline AcfProfile find_peaks(std::vector<double> correlations, std::size_t min_lag = kDefaultMinPeakLag,
                             double threshold = kDefaultPeakThreshold) {
    AcfProfile profile;
    profile.correlations = std::move(correlations);
    const auto& c = profile.correlations;
    const std::size_t first = std::max<std::size_t>(min_lag, 1);

    for (std::size_t p = first; p + 1 < c.size(); ++p) {
        if (!(c[p] > c[p - 1]) || !(c[p] > threshold)) continue;
        std::size_t q = p;
        while (q + 1 < c.size() && c[q + 1] == c[p]) ++q;
        if (q + 1 < c.size() && c[q + 1] < c[p]) {
            profile.peaks.push_back(p);
        }
        p = q;
    }
    if (!profile.peaks.empty()) {
        profile.max_acf = c[profile.peaks.front()];
        for (std::size_t p : profile.peaks) profile.max_acf = std::max(profile.max_acf, c[p]);
    }
    return profile;
}

/// Correlations up to max_lag plus peak detection in one call.
inline AcfProfile acf_profile(std::span<const double> values, std::size_t max_lag,
                              std::size_t min_lag = kDefaultMinPeakLag,
                              double threshold = kDefaultPeakThreshold) {
    return find_peaks(autocorrelation(values, max_lag), min_lag, threshold);
}

} // namespace asap
