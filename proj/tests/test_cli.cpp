#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "app.hpp"

using namespace coopsearch;

namespace {

struct Result {
    int code;
    std::string out;
    std::string err;
};

Result run_cli(std::vector<std::string> args) {
    args.insert(args.begin(), "coopsearch");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> data_lines(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line[0] != '#') lines.push_back(line);
    }
    return lines;
}

std::string provenance_config(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    const std::string key = "# config: ";
    while (std::getline(in, line)) {
        if (line.rfind(key, 0) == 0) return line.substr(key.size());
    }
    return {};
}

std::vector<std::string> split_words(const std::string& text) {
    std::istringstream in(text);
    std::vector<std::string> words;
    std::string w;
    while (in >> w) words.push_back(w);
    return words;
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST(Cli, ExpectedEqualColumn) {
    const auto r = run_cli({"expected", "--allocation", "equal", "--speeds", "1:1", "--agents-range", "1:32"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto lines = data_lines(r.out);
    ASSERT_EQ(lines.size(), 33u);
    EXPECT_EQ(lines[0], "strategy,allocation,m,expected_time");
    EXPECT_EQ(lines[1], "one-directional,equal,1,500");
    EXPECT_EQ(lines[10], "one-directional,equal,10,50");
    EXPECT_EQ(lines[16], "one-directional,equal,16,31.25");
}

TEST(Cli, ExpectedSemiEqualAndRandom) {
    auto semi = run_cli({"expected", "--allocation", "semi-equal", "--speeds", "1:1", "--agents", "3"});
    ASSERT_EQ(semi.code, 0) << semi.err;
    EXPECT_EQ(data_lines(semi.out)[1], "one-directional,semi-equal,3,187.5");

    auto random = run_cli({"expected", "--allocation", "random", "--speeds", "1:1", "--agents", "19"});
    ASSERT_EQ(random.code, 0) << random.err;
    const auto row = data_lines(random.out)[1];
    const double value = std::stod(row.substr(row.rfind(',') + 1));
    EXPECT_NEAR(value, 50.0, 0.01);
}

TEST(Cli, ExpectedRejectsStrategiesWithoutClosedForm) {
    const auto r = run_cli({"expected", "--strategy", "grouped-3", "--agents", "12"});
    EXPECT_NE(r.code, 0);
    EXPECT_NE(r.err.find("simulate"), std::string::npos);
    EXPECT_NE(run_cli({"expected", "--strategy", "two-directional", "--agents", "12"}).code, 0);
    EXPECT_EQ(run_cli({"expected", "--strategy", "grouped-1", "--agents", "12"}).code, 0);
}

TEST(Cli, UnknownStrategyWritesNothing) {
    const auto path = std::filesystem::temp_directory_path() / "coopsearch_cli_unknown.csv";
    std::filesystem::remove(path);
    const auto r = run_cli({"simulate", "--strategy", "spiral", "--agents", "3", "--output", path.string()});
    EXPECT_NE(r.code, 0);
    EXPECT_NE(r.err.find("unknown strategy"), std::string::npos);
    EXPECT_FALSE(std::filesystem::exists(path));
}

TEST(Cli, ValidationErrors) {
    EXPECT_NE(run_cli({"simulate"}).code, 0);
    EXPECT_NE(run_cli({"simulate", "--agents", "2,5"}).code, 0);
    EXPECT_NE(run_cli({"sweep", "--agents", "5,3"}).code, 0);
    EXPECT_NE(run_cli({"sweep", "--agents", "3", "--agents-range", "1:4"}).code, 0);
    EXPECT_NE(run_cli({"simulate", "--agents", "3", "--region-length", "-1"}).code, 0);
    EXPECT_NE(run_cli({"simulate", "--agents", "3", "--trials", "0"}).code, 0);
    EXPECT_NE(run_cli({"simulate", "--agents", "3", "--speeds", "1:0.5"}).code, 0);
    EXPECT_NE(run_cli({"simulate", "--agents", "3", "--format", "xml"}).code, 0);
    EXPECT_NE(run_cli({"simulate", "--agents", "3", "--strategy", "proportional", "--allocation", "equal"}).code, 0);
    EXPECT_NE(run_cli({"pl-hist", "--agents", "1"}).code, 0);
    EXPECT_NE(run_cli({"pl-hist", "--allocation", "equal"}).code, 0);
    EXPECT_NE(run_cli({"compare", "--targets", "grouped-5:3"}).code, 0);
    EXPECT_NE(run_cli({"frobnicate"}).code, 0);
    EXPECT_NE(run_cli({}).code, 0);
}

TEST(Cli, PlHistColumns) {
    const auto r = run_cli({"pl-hist", "--agents", "2,3", "--trials", "2000", "--seed", "4"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto lines = data_lines(r.out);
    ASSERT_EQ(lines.size(), 2001u);
    EXPECT_EQ(lines[0], "m,bin_start,estimated,oracle");
    EXPECT_EQ(lines[1].substr(0, 4), "2,0,");
    EXPECT_NEAR(std::stod(lines[1].substr(lines[1].rfind(',') + 1)), 1e-3, 1e-15);
    EXPECT_EQ(lines[1001].substr(0, 4), "3,0,");
}

TEST(Cli, SweepWithAnalytic) {
    const auto r = run_cli({"sweep", "--allocation", "equal", "--speeds", "1:1", "--agents", "1,2,4", "--trials",
                            "20000", "--with-analytic"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto lines = data_lines(r.out);
    ASSERT_EQ(lines.size(), 4u);
    EXPECT_EQ(lines[0], "strategy,allocation,m,mean,stderr,ci95,trials,seed,min,max,analytic");
    EXPECT_EQ(lines[3].substr(lines[3].rfind(',') + 1), "125");
    EXPECT_NE(run_cli({"sweep", "--strategy", "two-directional", "--agents", "4", "--with-analytic"}).code, 0);
}

TEST(Cli, StructuredOutput) {
    const auto r = run_cli({"simulate", "--agents", "4", "--trials", "1000", "--format", "structured"});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("\"provenance\""), std::string::npos);
    EXPECT_NE(r.out.find("\"stderr\""), std::string::npos);
    EXPECT_NE(r.out.find("\"ci95\""), std::string::npos);
}

TEST(Cli, EchoedConfigRegeneratesOutput) {
    for (const std::vector<std::string>& args : std::vector<std::vector<std::string>>{
             {"simulate", "--agents", "6", "--strategy", "grouped-2", "--trials", "3000", "--seed", "9"},
             {"compare", "--trials", "2000", "--workers", "2"},
             {"pl-hist", "--agents", "5", "--trials", "500", "--format", "structured"},
             {"expected", "--strategy", "proportional", "--agents-range", "2:4"}}) {
        const auto first = run_cli(args);
        ASSERT_EQ(first.code, 0) << first.err;
        std::string config = provenance_config(first.out);
        if (config.empty()) {
            // structured output keeps provenance in JSON
            const auto at = first.out.find("\"config\": \"");
            ASSERT_NE(at, std::string::npos);
            const auto begin = at + 11;
            config = first.out.substr(begin, first.out.find('"', begin) - begin);
        }
        auto words = split_words(config);
        ASSERT_EQ(words.front(), "coopsearch");
        words.erase(words.begin());
        const auto again = run_cli(words);
        ASSERT_EQ(again.code, 0) << again.err;
        EXPECT_EQ(again.out, first.out) << config;
    }
}

TEST(Cli, OutputFileMatchesStdoutAcrossWorkers) {
    const auto path = std::filesystem::temp_directory_path() / "coopsearch_cli_sweep.csv";
    const std::vector<std::string> base{"sweep", "--agents", "2,8", "--strategy", "two-directional", "--trials", "30000"};
    auto with = [&](std::vector<std::string> extra) {
        auto args = base;
        args.insert(args.end(), extra.begin(), extra.end());
        return args;
    };
    const auto a = run_cli(with({"--workers", "1"}));
    const auto b = run_cli(with({"--workers", "4", "--output", path.string()}));
    ASSERT_EQ(a.code, 0);
    ASSERT_EQ(b.code, 0);
    EXPECT_TRUE(b.out.empty());
    EXPECT_EQ(slurp(path), a.out);
    std::filesystem::remove(path);
}
