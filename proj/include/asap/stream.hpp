#pragma once

#include "asap/search.hpp"
#include "asap/series.hpp"

#include <cstddef>
#include <deque>
#include <optional>
#include <vector>

namespace asap {

/// A sealed (or filling) sub-aggregate of the stream.
struct Pane {
    double sum = 0.0;
    std::size_t count = 0;
    Timestamp start_ts = 0;

    [[nodiscard]] double mean() const { return sum / static_cast<double>(count); }
};

struct StreamConfig {
    /// Points per pane; normally the point-to-pixel ratio.
    std::size_t pane_span = 1;
    /// Panes kept for the visualization window; normally the resolution.
    std::size_t capacity = 800;
    /// Sealed panes between re-searches.
    std::size_t refresh_interval = 1;
    SearchConfig search;
};

/// Re-validate the previous window on the current data. A window that still
/// satisfies the kurtosis constraint becomes the starting state, with its true
/// roughness and a lower bound from the current ACF profile; anything else
/// yields a fresh state.
inline SearchState check_last_window(std::span<const double> aggregated, const AcfProfile& profile,
                                     const std::optional<SmoothResult>& last) {
    if (!last || last->window <= 1 || aggregated.size() < 4) return {};
    const std::size_t w = last->window;
    if (w >= aggregated.size() || w >= profile.correlations.size()) return {};
    if (is_constant(aggregated)) return {};
    const auto y = sma(aggregated, w);
    if (y.size() < 2 || is_constant(y)) return {};
    if (kurtosis(y) < kurtosis(aggregated)) return {};

    SearchState state;
    state.window = w;
    state.roughness = roughness(y);
    const double acf_w = profile.correlations[w];
    // The seed need not be a peak; bound by at least its own ACF so the bound stays <= w.
    state.lower_bound = update_lower_bound(1.0, w, acf_w, std::max(profile.max_acf, acf_w));
    return state;
}

/// Streaming window selection: pane ingestion, eviction of the oldest pane,
/// and a seeded re-search every `refresh_interval` sealed panes.
/// Single writer; results are returned by value.
class StreamState {
public:
    explicit StreamState(StreamConfig config) : config_(config) {
        if (config_.pane_span < 1) throw Error("pane span must be positive");
        if (config_.capacity < 1) throw Error("capacity must be positive");
        if (config_.refresh_interval < 1) throw Error("refresh interval must be positive");
    }

    /// Accumulate one point. Throws on a timestamp earlier than the last one.
    void ingest(Timestamp t, double v) {
        if (last_ts_ && t < *last_ts_) throw Error("out-of-order point");
        if (!std::isfinite(v)) throw Error("non-finite value");
        last_ts_ = t;
        if (open_.count == 0) open_.start_ts = t;
        open_.sum += v;
        ++open_.count;
        ++points_;
        if (open_.count == config_.pane_span) {
            panes_.push_back(open_);
            if (panes_.size() > config_.capacity) panes_.pop_front();
            open_ = Pane{};
            ++panes_since_refresh_;
        }
    }

    /// Run a search once `refresh_interval` panes have sealed since the last
    /// one. Returns nothing while fewer than four panes exist or when the
    /// panes are constant.
    std::optional<SmoothResult> maybe_refresh() {
        if (panes_since_refresh_ < config_.refresh_interval) return std::nullopt;
        if (panes_.size() < 4) return std::nullopt;
        panes_since_refresh_ = 0;

        const Series x = aggregated();
        if (is_constant(x.values())) return std::nullopt;

        WindowSearch search(x.values(), config_.search);
        const SearchState seed = check_last_window(x.values(), search.profile(), last_result_);
        const SearchState state = search.find_window(seed);
        last_result_ = search.finish(x, state, "asap");
        ++refreshes_;
        return last_result_;
    }

    /// Current pane means as a series.
    [[nodiscard]] Series aggregated() const {
        std::vector<Timestamp> ts;
        std::vector<double> vs;
        ts.reserve(panes_.size());
        vs.reserve(panes_.size());
        for (const auto& p : panes_) {
            ts.push_back(p.start_ts);
            vs.push_back(p.mean());
        }
        return Series(std::move(ts), std::move(vs));
    }

    [[nodiscard]] const std::deque<Pane>& panes() const noexcept { return panes_; }
    [[nodiscard]] const StreamConfig& config() const noexcept { return config_; }
    [[nodiscard]] const std::optional<SmoothResult>& last_result() const noexcept { return last_result_; }
    [[nodiscard]] std::size_t panes_since_refresh() const noexcept { return panes_since_refresh_; }
    [[nodiscard]] std::size_t points_consumed() const noexcept { return points_; }
    [[nodiscard]] std::size_t refreshes() const noexcept { return refreshes_; }

private:
    StreamConfig config_;
    std::deque<Pane> panes_;
    Pane open_;
    std::optional<Timestamp> last_ts_;
    std::size_t panes_since_refresh_ = 0;
    std::size_t points_ = 0;
    std::size_t refreshes_ = 0;
    std::optional<SmoothResult> last_result_;
};

} // namespace asap
