#include "asap/generators.hpp"
#include "asap/preagg.hpp"
#include "commands.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace asap;
using namespace asap::cli;
namespace fs = std::filesystem;

namespace {

fs::path tmp(const std::string& name) { return fs::path(ASAP_TEST_TMPDIR) / ("cli_test_" + name); }

fs::path write_fixture(const std::string& name, const Series& s) {
    const auto path = tmp(name);
    std::ofstream out(path);
    io::write_csv(out, s);
    return path;
}

int run_binary(const std::string& args) {
    const std::string cmd = std::string(ASAP_CLI_PATH) + " " + args + " >" + tmp("stdout").string() + " 2>" +
                            tmp("stderr").string();
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Series sine_fixture() { return gen::noisy_sine({24'000, 480.0, 1.0, 0.5}, 4); }

} // namespace

TEST(CmdSmooth, WritesSmoothedCsvAndDiagnostics) {
    RunConfig c;
    c.input = write_fixture("smooth.csv", sine_fixture()).string();
    c.resolution = 1200;
    std::ostringstream out, err;
    ASSERT_EQ(cmd_smooth(c, nullptr, out, err), kOk) << err.str();
    const auto smoothed = [&] {
        std::istringstream in(out.str());
        return io::read_csv(in).series;
    }();
    const auto meta = nlohmann::json::parse(err.str());
    const auto w = meta["window"].get<std::size_t>();
    EXPECT_EQ(meta["ratio"], 20);
    EXPECT_EQ(meta["aggregated_len"], 1200);
    EXPECT_EQ(smoothed.size(), 1200 - w + 1);
    EXPECT_EQ(meta["window_raw_points"], w * 20);
    EXPECT_EQ(w, find_window(preaggregate(sine_fixture(), 20)).window);
}

TEST(CmdSmooth, DeterministicOutputs) {
    RunConfig c;
    c.input = write_fixture("det.csv", sine_fixture()).string();
    c.resolution = 900;
    std::ostringstream out1, err1, out2, err2;
    ASSERT_EQ(cmd_smooth(c, nullptr, out1, err1), kOk);
    ASSERT_EQ(cmd_smooth(c, nullptr, out2, err2), kOk);
    EXPECT_EQ(out1.str(), out2.str());
    auto m1 = nlohmann::json::parse(err1.str());
    auto m2 = nlohmann::json::parse(err2.str());
    m1.erase("elapsed_ms");
    m2.erase("elapsed_ms");
    EXPECT_EQ(m1, m2);
}

TEST(CmdSmooth, MetaFileAndJsonFormat) {
    RunConfig c;
    c.input = write_fixture("meta.csv", sine_fixture()).string();
    c.format = "json";
    c.meta_path = tmp("meta.json").string();
    std::ostringstream out, err;
    ASSERT_EQ(cmd_smooth(c, nullptr, out, err), kOk);
    EXPECT_TRUE(err.str().empty());
    const auto meta = nlohmann::json::parse(slurp(c.meta_path));
    const auto series = nlohmann::json::parse(out.str());
    EXPECT_EQ(series.size(), meta["aggregated_len"].get<std::size_t>() - meta["window"].get<std::size_t>() + 1);
}

TEST(CmdSmooth, StdinInput) {
    std::ostringstream csv;
    io::write_csv(csv, gen::noisy_sine({2000, 50.0, 1.0, 0.5}, 1));
    std::istringstream in(csv.str());
    RunConfig c;
    c.input = "-";
    std::ostringstream out, err;
    EXPECT_EQ(cmd_smooth(c, &in, out, err), kOk) << err.str();
}

TEST(CmdSmooth, ZscoreOutputIsNormalisedScale) {
    RunConfig c;
    const auto raw = gen::noisy_sine({2400, 120.0, 50.0, 20.0}, 2);
    c.input = write_fixture("z.csv", raw).string();
    c.zscore = true;
    std::ostringstream out, err;
    ASSERT_EQ(cmd_smooth(c, nullptr, out, err), kOk);
    std::istringstream in(out.str());
    const auto s = io::read_csv(in).series;
    for (double v : s.values()) EXPECT_LT(std::abs(v), 5.0);
}

TEST(CmdSmooth, InputErrorsExitOne) {
    RunConfig c;
    c.input = tmp("missing.csv").string();
    std::ostringstream out, err;
    EXPECT_EQ(cmd_smooth(c, nullptr, out, err), kInputError);

    const auto bad = tmp("bad.csv");
    std::ofstream(bad) << "t,v\n1,2\n2,x\n";
    c.input = bad.string();
    err.str("");
    EXPECT_EQ(cmd_smooth(c, nullptr, out, err), kInputError);
    EXPECT_NE(err.str().find("line 3"), std::string::npos);

    const auto tiny = tmp("tiny.csv");
    std::ofstream(tiny) << "1\n2\n3\n";
    c.input = tiny.string();
    EXPECT_EQ(cmd_smooth(c, nullptr, out, err), kInputError);
}

TEST(CmdSmooth, ConfigErrorsExitTwo) {
    RunConfig c;
    c.input = write_fixture("cfg.csv", sine_fixture()).string();
    std::ostringstream out, err;
    c.strategy = "nope";
    EXPECT_EQ(cmd_smooth(c, nullptr, out, err), kConfigError);
    c.strategy = "asap";
    c.resolution = 1;
    EXPECT_EQ(cmd_smooth(c, nullptr, out, err), kConfigError);
    c.resolution = 100'000;
    EXPECT_EQ(cmd_smooth(c, nullptr, out, err), kOk);
}

TEST(CmdSmooth, EveryStrategyRuns) {
    RunConfig c;
    c.input = write_fixture("strategies.csv", sine_fixture()).string();
    for (const auto& s : strategy_names()) {
        c.strategy = s;
        std::ostringstream out, err;
        ASSERT_EQ(cmd_smooth(c, nullptr, out, err), kOk) << s;
        EXPECT_EQ(nlohmann::json::parse(err.str())["strategy"], s);
    }
}

TEST(CmdStream, FullSpanReplayMatchesSmooth) {
    RunConfig c;
    c.input = write_fixture("stream.csv", sine_fixture()).string();
    c.resolution = 1200;
    std::ostringstream sout, serr;
    ASSERT_EQ(cmd_smooth(c, nullptr, sout, serr), kOk);
    const auto batch = nlohmann::json::parse(serr.str());

    c.refresh_interval = 1200;
    std::ostringstream out, err;
    ASSERT_EQ(cmd_stream(c, nullptr, out, err), kOk) << err.str();
    std::istringstream lines(out.str());
    std::string line;
    std::vector<nlohmann::json> records;
    while (std::getline(lines, line)) records.push_back(nlohmann::json::parse(line));
    ASSERT_EQ(records.size(), 1u);
    EXPECT_EQ(records[0]["window"], batch["window"]);
    EXPECT_EQ(records[0]["points_consumed"], 24'000);
    const auto stats = nlohmann::json::parse(err.str());
    EXPECT_GT(stats["throughput_pps"].get<double>(), 0.0);
}

TEST(CmdStream, RefreshRecordsAreIndexed) {
    RunConfig c;
    c.input = write_fixture("stream2.csv", sine_fixture()).string();
    c.resolution = 1200;
    c.refresh_interval = 100;
    std::ostringstream out, err;
    ASSERT_EQ(cmd_stream(c, nullptr, out, err), kOk);
    std::istringstream lines(out.str());
    std::string line;
    std::size_t i = 0;
    while (std::getline(lines, line)) {
        const auto j = nlohmann::json::parse(line);
        EXPECT_EQ(j["refresh_index"], i);
        EXPECT_EQ(j["points_consumed"], (i + 1) * 100 * 20);
        ++i;
    }
    EXPECT_EQ(i, 12u);
}

TEST(CmdStream, OutOfOrderPointsDroppedOrFatal) {
    std::string text = "t,v\n";
    for (int i = 0; i < 50; ++i) text += std::to_string(i == 20 ? 3 : i) + "," + std::to_string(i % 7) + "\n";
    RunConfig c;
    c.use_stdin = true;
    c.resolution = 20;
    {
        std::istringstream in(text);
        std::ostringstream out, err;
        EXPECT_EQ(cmd_stream(c, &in, out, err), kOk);
        EXPECT_NE(err.str().find("dropped out-of-order point at t=3"), std::string::npos);
    }
    c.strict_order = true;
    {
        std::istringstream in(text);
        std::ostringstream out, err;
        EXPECT_EQ(cmd_stream(c, &in, out, err), kInputError);
    }
}

TEST(CmdBench, JsonHasAllStrategies) {
    RunConfig c;
    c.generator = "sine";
    c.points = 12'000;
    c.format = "json";
    c.resolution = 1200;
    std::ostringstream out, err;
    ASSERT_EQ(cmd_bench(c, nullptr, out, err), kOk) << err.str();
    const auto j = nlohmann::json::parse(out.str());
    ASSERT_EQ(j["strategies"].size(), strategy_names().size());
    for (const auto& s : j["strategies"]) EXPECT_GE(s["roughness_ratio"].get<double>(), 1.0 - 1e-12);
}

TEST(CmdBench, UnknownGeneratorIsConfigError) {
    RunConfig c;
    c.generator = "square";
    std::ostringstream out, err;
    EXPECT_EQ(cmd_bench(c, nullptr, out, err), kConfigError);
}

TEST(Binary, SmoothAndExitCodes) {
    const auto input = write_fixture("bin.csv", sine_fixture());
    EXPECT_EQ(run_binary("smooth --input " + input.string() + " --resolution 1200"), 0);
    EXPECT_NE(slurp(tmp("stdout")).find("timestamp,value"), std::string::npos);
    EXPECT_EQ(run_binary("smooth --input " + tmp("nope.csv").string()), 1);
    EXPECT_EQ(run_binary("smooth --input " + input.string() + " --strategy nope"), 2);
    EXPECT_EQ(run_binary("smooth --input " + input.string() + " --resolution abc"), 2);
    EXPECT_EQ(run_binary("smooth"), 2);
    EXPECT_EQ(run_binary("frobnicate"), 2);
}

TEST(Binary, StreamNeedsASource) {
    EXPECT_EQ(run_binary("stream --refresh 5"), 2);
    EXPECT_EQ(run_binary("stream --refresh 0 --input " + write_fixture("s0.csv", sine_fixture()).string()), 2);
}

TEST(Binary, BenchTable) {
    EXPECT_EQ(run_binary("bench --gen uniform --seed 3 --points 5000 --resolution 500"), 0);
    const auto table = slurp(tmp("stdout"));
    for (const auto& s : strategy_names()) EXPECT_NE(table.find(s), std::string::npos) << s;
}

TEST(Binary, PlotWritesWellFormedSvg) {
    const auto input = write_fixture("plot.csv", sine_fixture());
    const auto svg = tmp("plot.svg");
    ASSERT_EQ(run_binary("plot --input " + input.string() + " --out " + svg.string() + " --resolution 600"), 0);
    const auto text = slurp(svg);
    EXPECT_NE(text.find("width=\"600\""), std::string::npos);
    EXPECT_NE(text.find("id=\"raw\""), std::string::npos);
    EXPECT_NE(text.find("id=\"smoothed\""), std::string::npos);
    const std::string check = "python3 -c \"import sys, xml.etree.ElementTree as E; "
                              "r = E.parse(sys.argv[1]).getroot(); "
                              "sys.exit(0 if len(r.findall('{http://www.w3.org/2000/svg}polyline')) == 2 else 1)\" " +
                              svg.string();
    if (std::system("python3 -c pass >/dev/null 2>&1") == 0) EXPECT_EQ(std::system(check.c_str()), 0);
}

TEST(Binary, PlotRequiresOut) {
    EXPECT_EQ(run_binary("plot --input " + write_fixture("p2.csv", sine_fixture()).string()), 2);
}
