#pragma once

// Command implementations behind the `asap` executable. Each command takes a
// RunConfig plus explicit streams so tests can drive it in-process.

#include "asap/asap.hpp"
#include "asap/io/csv.hpp"
#include "asap/io/svg.hpp"

#include <json.hpp>

#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace asap::cli {

enum ExitCode : int { kOk = 0, kInputError = 1, kConfigError = 2 };

/// Bad flags or flag combinations (exit code 2).
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline const std::vector<std::string>& strategy_names() {
    static const std::vector<std::string> all{"asap", "exhaustive", "grid2", "grid10", "binary"};
    return all;
}

struct RunConfig {
    std::string input;
    bool use_stdin = false;
    std::size_t resolution = 800;
    std::size_t max_window = 0;
    std::string strategy = "asap";
    std::size_t refresh_interval = 1;
    std::string format = "csv";
    bool zscore = false;
    std::uint64_t seed = 1;
    std::string generator;
    std::size_t points = 120'000;
    std::string meta_path;
    std::string out_path;
    /// Stream mode: points per pane and panes kept. 0 derives them from the
    /// replayed file (whole file, one pane per pixel) or from the resolution.
    std::size_t pane = 0;
    std::size_t span = 0;
    bool strict_order = false;

    void validate() const {
        if (resolution < 2) throw ConfigError("--resolution must be at least 2");
        bool known = false;
        for (const auto& s : strategy_names()) known = known || s == strategy;
        if (!known) throw ConfigError("unknown strategy '" + strategy + "'");
        if (refresh_interval < 1) throw ConfigError("--refresh must be at least 1");
        if (format != "csv" && format != "json" && format != "svg" && format != "table")
            throw ConfigError("unknown format '" + format + "'");
    }
};

using Clock = std::chrono::steady_clock;

inline double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

/// NaN-safe JSON number.
inline nlohmann::json number(double v) {
    if (!std::isfinite(v)) return nullptr;
    return v;
}

inline io::CsvData load_input(const RunConfig& config, std::istream* in) {
    if (config.use_stdin || config.input == "-") {
        if (!in) throw ConfigError("no stdin available");
        return io::read_csv(*in);
    }
    if (config.input.empty()) throw ConfigError("--input is required");
    std::ifstream file(config.input);
    if (!file) throw io::ParseError(0, "cannot open '" + config.input + "'");
    return io::read_csv(file);
}

inline SmoothResult run_strategy(const std::string& strategy, const Series& x, const SearchConfig& search) {
    if (strategy == "asap") return find_window(x, search);
    if (strategy == "exhaustive") return exhaustive_search(x, search.max_window);
    if (strategy == "grid2") return grid_search(x, 2, search.max_window);
    if (strategy == "grid10") return grid_search(x, 10, search.max_window);
    if (strategy == "binary") return binary_window_search(x, search.max_window);
    throw ConfigError("unknown strategy '" + strategy + "'");
}

/// Everything a batch command produces, before any output is written.
struct BatchRun {
    Series raw;
    Series aggregated;
    PixelPlan plan;
    SmoothResult result;
    double elapsed_s = 0.0;
};

/// Preaggregate at the point-to-pixel ratio and run one strategy.
/// Timing covers preaggregation and search, not parsing.
inline BatchRun run_batch(Series raw, const RunConfig& config) {
    if (raw.size() < 4) throw io::ParseError(0, "need at least 4 data rows, found " + std::to_string(raw.size()));
    if (config.zscore && !is_constant(raw.values())) raw = zscore(raw);

    BatchRun run;
    const auto start = Clock::now();
    run.plan = plan_pixels(raw.size(), config.resolution);
    run.aggregated = preaggregate(raw, run.plan.ratio);
    if (run.aggregated.size() < 4)
        throw ConfigError("resolution " + std::to_string(config.resolution) + " leaves fewer than 4 points");
    SearchConfig search;
    search.max_window = config.max_window;
    search.resolution = config.resolution;
    run.result = run_strategy(config.strategy, run.aggregated, search);
    run.elapsed_s = seconds_since(start);
    run.raw = std::move(raw);
    return run;
}

inline nlohmann::json diagnostics(const BatchRun& run) {
    nlohmann::json j;
    j["strategy"] = run.result.strategy;
    j["window"] = run.result.window;
    j["window_raw_points"] = run.result.window * run.plan.ratio;
    j["raw_len"] = run.raw.size();
    j["aggregated_len"] = run.aggregated.size();
    j["ratio"] = run.plan.ratio;
    j["resolution"] = run.plan.resolution;
    j["roughness"] = number(run.result.roughness);
    j["roughness_before"] = number(run.result.original_roughness);
    j["kurtosis"] = number(run.result.kurtosis);
    j["kurtosis_before"] = number(run.result.original_kurtosis);
    j["candidates_evaluated"] = run.result.candidates_evaluated;
    j["elapsed_ms"] = run.elapsed_s * 1e3;
    return j;
}

inline void write_series_json(std::ostream& out, const Series& s) {
    nlohmann::json j = nlohmann::json::array();
    for (std::size_t i = 0; i < s.size(); ++i) j.push_back({{"timestamp", s.timestamps()[i]}, {"value", s.values()[i]}});
    out << j.dump() << '\n';
}

/// Raw (at pixel resolution) and smoothed series, both z-scored with the raw
/// moments so they overlay on one axis.
inline void write_plot(std::ostream& out, const BatchRun& run, std::size_t resolution) {
    const auto& v = run.aggregated.values();
    const double mu = mean(v);
    double sd = population_std(v);
    if (!(sd > 0.0)) sd = 1.0;
    auto normalise = [&](const Series& s) {
        std::vector<double> z(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) z[i] = (s.values()[i] - mu) / sd;
        return Series(s.timestamps(), std::move(z));
    };
    io::ChartStyle style;
    style.width = resolution;
    io::write_svg(out, normalise(run.aggregated), normalise(run.result.smoothed), style);
}

template <typename Body>
int guarded(std::ostream& err, Body&& body) {
    try {
        return body();
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kInputError;
    }
}

inline int cmd_smooth(const RunConfig& config, std::istream* in, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        config.validate();
        auto run = run_batch(load_input(config, in).series, config);
        if (config.format == "json")
            write_series_json(out, run.result.smoothed);
        else if (config.format == "svg")
            write_plot(out, run, config.resolution);
        else
            io::write_csv(out, run.result.smoothed);

        const auto meta = diagnostics(run).dump(2);
        if (config.meta_path.empty()) {
            err << meta << '\n';
        } else {
            std::ofstream m(config.meta_path);
            if (!m) throw ConfigError("cannot write '" + config.meta_path + "'");
            m << meta << '\n';
        }
        return static_cast<int>(kOk);
    });
}

inline int cmd_plot(const RunConfig& config, std::istream* in, std::ostream& err) {
    return guarded(err, [&] {
        config.validate();
        if (config.out_path.empty()) throw ConfigError("--out is required");
        auto run = run_batch(load_input(config, in).series, config);
        std::ofstream file(config.out_path);
        if (!file) throw ConfigError("cannot write '" + config.out_path + "'");
        write_plot(file, run, config.resolution);
        return static_cast<int>(kOk);
    });
}

inline nlohmann::json refresh_record(std::size_t index, const SmoothResult& r, std::size_t points) {
    return {{"refresh_index", index},
            {"window", r.window},
            {"roughness", number(r.roughness)},
            {"kurtosis", number(r.kurtosis)},
            {"points_consumed", points}};
}

/// Replays a file (or consumes stdin) through StreamState, printing one JSON
/// line per refresh. Throughput is reported on `err` at the end.
inline int cmd_stream(const RunConfig& config, std::istream* in, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        config.validate();
        StreamConfig sc;
        sc.refresh_interval = config.refresh_interval;
        sc.search.max_window = config.max_window;
        sc.search.resolution = config.resolution;

        std::size_t dropped = 0;
        auto feed = [&](StreamState& stream, Timestamp t, double v) {
            try {
                stream.ingest(t, v);
            } catch (const Error& e) {
                if (config.strict_order) throw;
                ++dropped;
                err << "warning: dropped out-of-order point at t=" << t << '\n';
                return;
            }
            if (auto r = stream.maybe_refresh())
                out << refresh_record(stream.refreshes() - 1, *r, stream.points_consumed()).dump() << '\n';
        };

        auto report = [&](const StreamState& stream, double elapsed) {
            const double pps = elapsed > 0.0 ? static_cast<double>(stream.points_consumed()) / elapsed : 0.0;
            nlohmann::json j{{"points", stream.points_consumed()},
                             {"refreshes", stream.refreshes()},
                             {"dropped", dropped},
                             {"elapsed_s", elapsed},
                             {"throughput_pps", pps}};
            err << j.dump() << '\n';
        };

        if (config.use_stdin || config.input == "-") {
            if (!in) throw ConfigError("no stdin available");
            sc.pane_span = config.pane ? config.pane : 1;
            sc.capacity = config.span ? config.span : config.resolution;
            StreamState stream(sc);
            io::RowParser parser;
            std::string line;
            const auto start = Clock::now();
            while (std::getline(*in, line))
                if (const auto row = parser.parse(line)) feed(stream, row->t, row->v);
            report(stream, seconds_since(start));
            return static_cast<int>(kOk);
        }

        // File replay: rows are loaded first so parsing stays out of the timing.
        std::vector<io::RowParser::Row> rows;
        {
            if (config.input.empty()) throw ConfigError("--input or --stdin is required");
            std::ifstream file(config.input);
            if (!file) throw io::ParseError(0, "cannot open '" + config.input + "'");
            io::RowParser parser;
            std::string line;
            while (std::getline(file, line))
                if (const auto row = parser.parse(line)) rows.push_back(*row);
        }
        const auto plan = plan_pixels(std::max<std::size_t>(rows.size(), 1), config.resolution);
        sc.pane_span = config.pane ? config.pane : plan.ratio;
        sc.capacity = config.span ? config.span : std::max<std::size_t>(1, rows.size() / sc.pane_span);
        StreamState stream(sc);
        const auto start = Clock::now();
        for (const auto& row : rows) feed(stream, row.t, row.v);
        report(stream, seconds_since(start));
        return static_cast<int>(kOk);
    });
}

/// Runs all five strategies on one preaggregated input.
struct BenchRow {
    SmoothResult result;
    double roughness_ratio = 1.0;
    double elapsed_s = 0.0;
};

inline std::vector<BenchRow> run_bench(const Series& aggregated, std::size_t max_window) {
    SearchConfig search;
    search.max_window = max_window;
    std::vector<BenchRow> rows;
    for (const auto& name : strategy_names()) {
        BenchRow row;
        const auto start = Clock::now();
        row.result = run_strategy(name, aggregated, search);
        row.elapsed_s = seconds_since(start);
        rows.push_back(std::move(row));
    }
    double oracle = 0.0;
    for (const auto& r : rows)
        if (r.result.strategy == "exhaustive") oracle = r.result.roughness;
    for (auto& r : rows)
        r.roughness_ratio = oracle > 0.0 ? r.result.roughness / oracle : (r.result.roughness > 0.0 ? INFINITY : 1.0);
    return rows;
}

inline int cmd_bench(const RunConfig& config, std::istream* in, std::ostream& out, std::ostream& err) {
    return guarded(err, [&] {
        config.validate();
        Series raw;
        std::string source;
        if (!config.generator.empty()) {
            try {
                raw = gen::by_name(config.generator, config.points, config.seed);
            } catch (const Error& e) {
                throw ConfigError(e.what());
            }
            source = config.generator + " seed=" + std::to_string(config.seed);
        } else {
            raw = load_input(config, in).series;
            source = config.input;
        }
        if (raw.size() < 4) throw io::ParseError(0, "need at least 4 data rows");
        const auto plan = plan_pixels(raw.size(), config.resolution);
        const auto x = preaggregate(raw, plan.ratio);
        if (x.size() < 4) throw ConfigError("resolution leaves fewer than 4 points");
        const auto rows = run_bench(x, config.max_window);

        if (config.format == "json") {
            nlohmann::json j;
            j["source"] = source;
            j["raw_len"] = raw.size();
            j["aggregated_len"] = x.size();
            j["ratio"] = plan.ratio;
            for (const auto& r : rows)
                j["strategies"].push_back({{"strategy", r.result.strategy},
                                           {"window", r.result.window},
                                           {"roughness", number(r.result.roughness)},
                                           {"roughness_ratio", number(r.roughness_ratio)},
                                           {"candidates", r.result.candidates_evaluated},
                                           {"elapsed_ms", r.elapsed_s * 1e3}});
            out << j.dump(2) << '\n';
            return static_cast<int>(kOk);
        }

        out << "# " << source << "  raw=" << raw.size() << " aggregated=" << x.size() << " ratio=" << plan.ratio
            << '\n';
        out << std::left << std::setw(12) << "strategy" << std::right << std::setw(8) << "window" << std::setw(14)
            << "roughness" << std::setw(10) << "ratio" << std::setw(12) << "candidates" << std::setw(14)
            << "elapsed_ms" << '\n';
        for (const auto& r : rows) {
            out << std::left << std::setw(12) << r.result.strategy << std::right << std::setw(8) << r.result.window
                << std::setw(14) << std::setprecision(6) << r.result.roughness << std::setw(10)
                << std::setprecision(4) << r.roughness_ratio << std::setw(12) << r.result.candidates_evaluated
                << std::setw(14) << std::fixed << std::setprecision(3) << r.elapsed_s * 1e3 << std::defaultfloat
                << '\n';
        }
        return static_cast<int>(kOk);
    });
}

} // namespace asap::cli
