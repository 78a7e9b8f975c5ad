#include "commands.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
    using namespace asap::cli;

    CLI::App app{"asap: automatic smoothing window selection for time series plots"};
    app.require_subcommand(1);

    RunConfig config;

    auto* smooth = app.add_subcommand("smooth", "Smooth a CSV series; diagnostics go to stderr or --meta");
    smooth->add_option("--input", config.input, "CSV file ('-' for stdin)")->required();
    smooth->add_option("--resolution", config.resolution, "Target width in pixels")->capture_default_str();
    smooth->add_option("--max-window", config.max_window, "Largest window in pixels (0: tenth of the series)");
    smooth->add_option("--strategy", config.strategy, "asap | exhaustive | grid2 | grid10 | binary")
        ->capture_default_str();
    smooth->add_option("--format", config.format, "csv | json | svg")->capture_default_str();
    smooth->add_flag("--zscore", config.zscore, "Normalise values before smoothing");
    smooth->add_option("--meta", config.meta_path, "Write diagnostics JSON here instead of stderr");

    auto* stream = app.add_subcommand("stream", "Replay a file or stdin through the streaming operator");
    auto* stream_input = stream->add_option("--input", config.input, "CSV file to replay");
    auto* stream_stdin = stream->add_flag("--stdin", config.use_stdin, "Read points from stdin");
    stream_input->excludes(stream_stdin);
    stream->add_option("--refresh", config.refresh_interval, "Sealed panes between searches")->required();
    stream->add_option("--resolution", config.resolution, "Target width in pixels")->capture_default_str();
    stream->add_option("--max-window", config.max_window, "Largest window in panes");
    stream->add_option("--pane", config.pane, "Points per pane (default: point-to-pixel ratio of the file, or 1)");
    stream->add_option("--span", config.span, "Panes kept (default: whole file, or the resolution for stdin)");
    stream->add_flag("--strict", config.strict_order, "Abort on out-of-order points instead of dropping them");

    auto* bench = app.add_subcommand("bench", "Compare all search strategies on one input");
    auto* bench_input = bench->add_option("--input", config.input, "CSV file");
    auto* bench_gen = bench->add_option("--gen", config.generator,
                                        "Built-in generator: sine | gaussian | uniform | laplace | trend_seasonal | spike");
    bench_input->excludes(bench_gen);
    bench->add_option("--seed", config.seed, "Generator seed")->capture_default_str();
    bench->add_option("--points", config.points, "Generated series length")->capture_default_str();
    bench->add_option("--resolution", config.resolution, "Target width in pixels")->capture_default_str();
    bench->add_option("--max-window", config.max_window, "Largest window in pixels");
    bench->add_option("--format", config.format, "table | json");

    auto* plot = app.add_subcommand("plot", "Render raw and smoothed series as SVG");
    plot->add_option("--input", config.input, "CSV file ('-' for stdin)")->required();
    plot->add_option("--out", config.out_path, "Output SVG path")->required();
    plot->add_option("--resolution", config.resolution, "Width in pixels")->capture_default_str();
    plot->add_option("--max-window", config.max_window, "Largest window in pixels");
    plot->add_option("--strategy", config.strategy, "Search strategy")->capture_default_str();
    plot->add_flag("--zscore", config.zscore, "Normalise values before smoothing");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    if (bench->parsed()) {
        if (config.format == "csv") config.format = "table";
        if (config.input.empty() && config.generator.empty()) {
            std::cerr << "error: bench needs --input or --gen\n";
            return kConfigError;
        }
        return cmd_bench(config, &std::cin, std::cout, std::cerr);
    }
    if (smooth->parsed()) return cmd_smooth(config, &std::cin, std::cout, std::cerr);
    if (stream->parsed()) {
        if (config.input.empty() && !config.use_stdin) {
            std::cerr << "error: stream needs --input or --stdin\n";
            return kConfigError;
        }
        return cmd_stream(config, &std::cin, std::cout, std::cerr);
    }
    if (plot->parsed()) return cmd_plot(config, &std::cin, std::cerr);
    return kConfigError;
}
