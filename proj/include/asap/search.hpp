#pragma once

#include "asap/acf.hpp"
#include "asap/metrics.hpp"
#include "asap/series.hpp"
#include "asap/smoothing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace asap {

struct SearchConfig {
    /// Largest window considered; 0 selects max(1, N / 10) of the searched series.
    std::size_t max_window = 0;
    double acf_threshold = kDefaultPeakThreshold;
    std::size_t min_peak_lag = kDefaultMinPeakLag;
    /// Display width in pixels. Consumed by preaggregation, not by the search itself.
    std::size_t resolution = 800;
    /// Roughness pruning compares full estimates, n/(n-w) factor included.
    /// Off: the cheaper sqrt(1 - acf)/w proxy, which misjudges high-ACF
    /// windows once w is a sizeable fraction of n.
    bool strict_estimate = true;
    /// Off: every ACF peak is evaluated and the fallback range is searched
    /// regardless of bounds. Used to check that pruning loses nothing.
    bool enable_pruning = true;

    [[nodiscard]] std::size_t effective_max_window(std::size_t n) const noexcept {
        const std::size_t w = max_window == 0 ? std::max<std::size_t>(1, n / 10) : max_window;
        return std::min(w, n);
    }
};

/// Best candidate found so far plus the pruning bookkeeping.
struct SearchState {
    std::size_t window = 1;
    double roughness = std::numeric_limits<double>::infinity();
    double lower_bound = 1.0;
    std::optional<std::size_t> largest_feasible_idx;

    [[nodiscard]] bool has_candidate() const noexcept { return std::isfinite(roughness); }
};

struct SmoothResult {
    std::size_t window = 1;
    Series smoothed;
    double roughness = 0.0;
    /// NaN when undefined (constant series).
    double kurtosis = std::numeric_limits<double>::quiet_NaN();
    double original_roughness = 0.0;
    double original_kurtosis = std::numeric_limits<double>::quiet_NaN();
    std::size_t candidates_evaluated = 0;
    std::string strategy;
};

/// Roughness of SMA(X, w) predicted from the lag-w autocorrelation:
///   (sqrt(2) sigma / w) * sqrt(1 - n/(n-w) * acf_w), radicand clamped at 0.
inline double estimate_roughness(double sigma, std::size_t n, std::size_t w, double acf_w) {
    if (w < 1 || w >= n) throw Error("estimate_roughness needs 1 <= w < n");
    const double nd = static_cast<double>(n);
    const double wd = static_cast<double>(w);
    const double radicand = 1.0 - nd / (nd - wd) * acf_w;
    if (radicand <= 0.0) return 0.0;
    return std::sqrt(2.0) * sigma / wd * std::sqrt(radicand);
}

/// Raise the lower bound on windows that could still beat window w:
/// max(lb, w * sqrt((1 - max_acf) / (1 - acf_w))).
inline double update_lower_bound(double lower_bound, std::size_t w, double acf_w, double max_acf) {
    if (acf_w >= 1.0) return lower_bound;
    const double ratio = (1.0 - max_acf) / (1.0 - acf_w);
    if (!(ratio > 0.0)) return lower_bound;
    return std::max(lower_bound, static_cast<double>(w) * std::sqrt(ratio));
}

/// Pruning proxy: is window w expected to be rougher than best_w?
inline bool is_rougher_estimate(std::size_t w, double acf_w, std::size_t best_w, double acf_best) {
    const double candidate = std::sqrt(std::max(0.0, 1.0 - acf_w)) / static_cast<double>(w);
    const double best = std::sqrt(std::max(0.0, 1.0 - acf_best)) / static_cast<double>(best_w);
    return candidate > best;
}

/// As is_rougher_estimate but keeping the n/(n-w) factor of the full estimate.
inline bool is_rougher_estimate_strict(std::size_t n, std::size_t w, double acf_w, std::size_t best_w,
                                       double acf_best) {
    return estimate_roughness(1.0, n, w, acf_w) > estimate_roughness(1.0, n, best_w, acf_best);
}

/// Window search over one fixed series. Holds the series' kurtosis and ACF
/// profile and counts full SMA + metric evaluations.
class WindowSearch {
public:
    struct Evaluation {
        double roughness;
        double kurtosis;
        bool feasible;
    };

    WindowSearch(std::span<const double> values, SearchConfig config)
        : values_(values), config_(config) {
        if (values_.size() < 4) throw Error("series needs at least four points");
        if (is_constant(values_)) throw Error("search undefined for constant series");
        kurtosis_ = asap::kurtosis(values_);
        max_window_ = config_.effective_max_window(values_.size());
    }

    [[nodiscard]] std::size_t max_window() const noexcept { return max_window_; }
    [[nodiscard]] double original_kurtosis() const noexcept { return kurtosis_; }
    [[nodiscard]] std::size_t evaluations() const noexcept { return evaluations_; }

    /// Lazily computed; lags up to max_window + 1 so a peak at max_window can be detected.
    const AcfProfile& profile() {
        if (!profile_) {
            const std::size_t lag = std::min(max_window_ + 1, values_.size() - 1);
            profile_ = acf_profile(values_, lag, config_.min_peak_lag, config_.acf_threshold);
        }
        return *profile_;
    }

    /// Smooth with window w and test the kurtosis constraint. Degenerate
    /// smoothed output (too short or constant) counts as infeasible.
    Evaluation evaluate(std::size_t w) {
        ++evaluations_;
        const auto y = sma(values_, w);
        if (y.size() < 2) return {std::numeric_limits<double>::infinity(), 0.0, false};
        const double r = roughness(y);
        if (is_constant(y)) return {r, 0.0, false};
        const double k = asap::kurtosis(y);
        return {r, k, k >= kurtosis_};
    }

    /// Walk ACF peak candidates from largest to smallest, pruning with the
    /// lower bound and the roughness estimate.
    SearchState search_periodic(std::span<const std::size_t> candidates, SearchState state) {
        const auto& prof = profile();
        for (std::size_t i = candidates.size(); i-- > 0;) {
            const std::size_t w = candidates[i];
            if (w > max_window_) continue;
            if (config_.enable_pruning) {
                if (static_cast<double>(w) < state.lower_bound) break;
                if (rougher(w, state)) continue;
            }
            const auto e = evaluate(w);
            if (e.feasible && e.roughness < state.roughness) {
                state.window = w;
                state.roughness = e.roughness;
                state.lower_bound = update_lower_bound(state.lower_bound, w, prof.correlations[w], prof.max_acf);
                state.largest_feasible_idx = std::max(state.largest_feasible_idx.value_or(i), i);
            }
        }
        return state;
    }

    /// Binary search for the largest feasible window in [head, tail], recording
    /// every feasible midpoint that beats the current state.
    SearchState binary_search(std::size_t head, std::size_t tail, SearchState state) {
        head = std::max<std::size_t>(head, 1);
        tail = std::min(tail, max_window_);
        while (head <= tail) {
            const std::size_t mid = head + (tail - head) / 2;
            const auto e = evaluate(mid);
            if (!e.feasible) {
                tail = mid - 1;
                continue;
            }
            if (e.roughness < state.roughness) {
                state.window = mid;
                state.roughness = e.roughness;
            }
            head = mid + 1;
        }
        return state;
    }

    /// Peak search followed by a binary search over the gap above the
    /// largest feasible peak (or over the whole range for aperiodic data).
    SearchState find_window(SearchState state = {}) {
        const auto& prof = profile();
        std::vector<std::size_t> candidates;
        for (std::size_t p : prof.peaks)
            if (p <= max_window_) candidates.push_back(p);

        state = search_periodic(candidates, state);

        std::size_t head = 1;
        std::size_t tail = max_window_;
        if (config_.enable_pruning) {
            head = lower_bound_index(state);
            std::optional<std::size_t> anchor;
            if (state.largest_feasible_idx) anchor = candidates[*state.largest_feasible_idx];
            else if (!candidates.empty() && state.window > 1) anchor = state.window;
            if (anchor) {
                head = std::max(head, *anchor + 1);
                const auto next = std::upper_bound(candidates.begin(), candidates.end(), *anchor);
                if (next != candidates.end()) tail = std::min(tail, *next);
            }
        }
        return binary_search(head, tail, state);
    }

    /// Package a state as a result, falling back to the unsmoothed series when
    /// no window beats it. The unsmoothed baseline counts as one evaluation.
    SmoothResult finish(const Series& series, const SearchState& state, std::string strategy) {
        const double raw = roughness(values_);
        ++evaluations_;
        SmoothResult out;
        out.strategy = std::move(strategy);
        out.original_roughness = raw;
        out.original_kurtosis = kurtosis_;
        if (state.window > 1 && state.has_candidate() && state.roughness < raw) {
            out.window = state.window;
            out.roughness = state.roughness;
        } else {
            out.window = 1;
            out.roughness = raw;
        }
        out.smoothed = smooth_series(series, {out.window, 1});
        out.kurtosis = asap::kurtosis(out.smoothed.values());
        out.candidates_evaluated = evaluations_;
        return out;
    }

private:
    bool rougher(std::size_t w, const SearchState& state) {
        if (!state.has_candidate() || state.window <= 1) return false;
        const auto& c = profile().correlations;
        if (w >= c.size() || state.window >= c.size()) return false;
        if (config_.strict_estimate) {
            const std::size_t n = values_.size();
            if (w >= n || state.window >= n) return false;
            return is_rougher_estimate_strict(n, w, c[w], state.window, c[state.window]);
        }
        return is_rougher_estimate(w, c[w], state.window, c[state.window]);
    }

    static std::size_t lower_bound_index(const SearchState& state) {
        return static_cast<std::size_t>(std::ceil(std::max(1.0, state.lower_bound)));
    }

    std::span<const double> values_;
    SearchConfig config_;
    double kurtosis_ = 0.0;
    std::size_t max_window_ = 1;
    std::size_t evaluations_ = 0;
    std::optional<AcfProfile> profile_;
};

namespace detail {

inline SmoothResult unsmoothed(const Series& series, std::string strategy) {
    if (series.size() < 4) throw Error("series needs at least four points");
    SmoothResult out;
    out.window = 1;
    out.smoothed = series;
    out.roughness = roughness(series.values());
    out.original_roughness = out.roughness;
    out.candidates_evaluated = 1;
    out.strategy = std::move(strategy);
    return out;
}

} // namespace detail

/// Pruned ASAP search. Constant input is already smooth: window 1, roughness 0.
/// `seed` carries a known feasible state, e.g. from a previous streaming refresh.
inline SmoothResult find_window(const Series& series, const SearchConfig& config = {},
                                const SearchState& seed = {}) {
    if (series.size() >= 4 && is_constant(series.values())) return detail::unsmoothed(series, "asap");
    WindowSearch search(series.values(), config);
    const auto state = search.find_window(seed);
    return search.finish(series, state, "asap");
}

/// Every window in [1, max_window]; the correctness oracle for find_window.
/// Ties go to the smaller window.
inline SmoothResult exhaustive_search(const Series& series, std::size_t max_window = 0) {
    if (series.size() >= 4 && is_constant(series.values())) return detail::unsmoothed(series, "exhaustive");
    SearchConfig config;
    config.max_window = max_window;
    WindowSearch search(series.values(), config);
    SearchState state;
    for (std::size_t w = 2; w <= search.max_window(); ++w) {
        const auto e = search.evaluate(w);
        if (e.feasible && e.roughness < state.roughness) {
            state.window = w;
            state.roughness = e.roughness;
        }
    }
    return search.finish(series, state, "exhaustive");
}

/// Exhaustive search restricted to windows 1, 1 + step, 1 + 2 step, ...
inline SmoothResult grid_search(const Series& series, std::size_t step, std::size_t max_window = 0) {
    if (step < 1) throw Error("grid step must be positive");
    const std::string label = "grid" + std::to_string(step);
    if (series.size() >= 4 && is_constant(series.values())) return detail::unsmoothed(series, label);
    SearchConfig config;
    config.max_window = max_window;
    WindowSearch search(series.values(), config);
    SearchState state;
    for (std::size_t w = 1 + step; w <= search.max_window(); w += step) {
        const auto e = search.evaluate(w);
        if (e.feasible && e.roughness < state.roughness) {
            state.window = w;
            state.roughness = e.roughness;
        }
    }
    return search.finish(series, state, label);
}

/// Plain binary search over [1, max_window], the IID-optimal strategy.
inline SmoothResult binary_window_search(const Series& series, std::size_t max_window = 0) {
    if (series.size() >= 4 && is_constant(series.values())) return detail::unsmoothed(series, "binary");
    SearchConfig config;
    config.max_window = max_window;
    WindowSearch search(series.values(), config);
    const auto state = search.binary_search(1, search.max_window(), {});
    return search.finish(series, state, "binary");
}

} // namespace asap
