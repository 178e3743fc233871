#include "ymstrata/cli.hpp"
#include "ymstrata/repvar/point.hpp"
#include "ymstrata/repvar/varieties.hpp"

#include <gtest/gtest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

using namespace ymstrata;

namespace {

struct Result {
    int code = 0;
    std::string out;
    std::string err;
};

Result run(std::vector<std::string> args) {
    args.insert(args.begin(), "ymstrata");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

nlohmann::json run_json(std::vector<std::string> args) {
    args.push_back("--format");
    args.push_back("json");
    const auto r = run(args);
    EXPECT_EQ(r.code, 0) << r.err;
    return nlohmann::json::parse(r.out);
}

std::vector<std::string> rows(const nlohmann::json& j) {
    std::vector<std::string> out;
    for (const auto& r : j.at("strata")) {
        std::string s = r.at("mu").get<std::string>();
        if (!r.at("sign").is_null()) s += r.at("sign").get<int>() > 0 ? "+" : "-";
        out.push_back(s);
    }
    return out;
}

int shell_status(const std::string& cmd) {
    const int st = std::system(cmd.c_str());
    return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

} // namespace

TEST(Cli, StrataRankThreeCrossOne) {
    const auto j = run_json({"strata", "--n", "3", "--i", "1", "--ell", "1", "--max-codim", "12"});
    EXPECT_EQ(rows(j), (std::vector<std::string>{"(0,0,0)+", "(0,0,0)-", "(1,0,-1)+", "(1,0,-1)-", "(2,0,-2)+",
                                                 "(2,0,-2)-"}));
    for (const auto& r : j.at("strata")) EXPECT_EQ(r.at("class"), "ZERO_BLOCK");
}

TEST(Cli, StrataRankOneOrientable) {
    const auto j = run_json({"strata", "--n", "1", "--i", "0"});
    ASSERT_EQ(j.at("strata").size(), 1u);
    EXPECT_EQ(j.at("strata")[0].at("d"), 0);
}

TEST(Cli, StrataRankTwoCrossTwo) {
    const auto j = run_json({"strata", "--n", "2", "--i", "2", "--ell", "1", "--max-codim", "10"});
    EXPECT_EQ(rows(j), (std::vector<std::string>{"(0,0)+", "(0,0)-", "(1,-1)-", "(2,-2)+", "(3,-3)-", "(4,-4)+"}));
    EXPECT_EQ(j.at("components").at("total"), 6);
}

TEST(Cli, StrataTextIsDeterministic) {
    const auto a = run({"strata", "--n", "4", "--i", "1", "--ell", "2"});
    const auto b = run({"strata", "--n", "4", "--i", "1", "--ell", "2"});
    EXPECT_EQ(a.code, 0);
    EXPECT_EQ(a.out, b.out);
    EXPECT_NE(a.out.find("components:"), std::string::npos);
}

TEST(Cli, SeriesRankOneIsBg) {
    const auto j = run_json({"series", "--n", "1", "--ell", "2", "--degree", "8"});
    EXPECT_EQ(j.at("semistable"), bg_series(1, 2, 8).to_json());
    EXPECT_TRUE(j.at("difference_is_zero").get<bool>());
}

TEST(Cli, SeriesPerfectnessText) {
    const auto r = run({"series", "--n", "2", "--k", "1", "--ell", "2", "--degree", "16"});
    EXPECT_EQ(r.code, 0);
    EXPECT_NE(r.out.find("difference = 0"), std::string::npos);
}

TEST(Cli, SeriesNonorientableWithTable) {
    const std::string path = ::testing::TempDir() + "flat_rank_two.txt";
    {
        std::ofstream f(path);
        f << "# rank two flat factors\n2 1 1 + rat: (1+t)^4 / (1-t^2)\n2 1 1 - rat: (1+t)^4 / (1-t^2)\n";
    }
    const auto loose = run({"series", "--n", "2", "--i", "1", "--ell", "1", "--degree", "8", "--strict"});
    EXPECT_EQ(loose.code, 3);
    EXPECT_NE(loose.out.find("UNKNOWN"), std::string::npos);
    const auto j = run_json({"series", "--n", "2", "--i", "1", "--ell", "1", "--degree", "8", "--flat-table", path,
                             "--strict"});
    for (const auto& b : j.at("bundles")) EXPECT_TRUE(b.at("complete").get<bool>());
    // the (1,-1) term over sign + is (1+t)^4 / (1-t^2)
    const auto& t = j.at("bundles")[0].at("terms")[1];
    EXPECT_EQ(t.at("mu"), "(1,-1)");
    EXPECT_EQ(TruncatedSeries::from_json(t.at("series")), expand_rational({{1, 1, 4}}, {{-1, 2, 1}}, 5));
    std::remove(path.c_str());
}

TEST(Cli, WitnessJsonRoundTrip) {
    const auto j = run_json({"witness", "--n", "3", "--i", "2", "--ell", "2", "--type", "1,0,-1", "--sign", "-1"});
    EXPECT_TRUE(j.at("report").at("pass").get<bool>());
    EXPECT_TRUE(j.at("det_report").at("pass").get<bool>());
    EXPECT_EQ(j.at("bundle_sign"), -1);
    const auto p = repvar::point_from_json(j.at("point"));
    EXPECT_EQ(repvar::to_json(p), j.at("point"));
    EXPECT_TRUE(repvar::membership(p).pass);
}

TEST(Cli, WitnessOrientableDefault) {
    const auto j = run_json({"witness", "--n", "2", "--k", "1", "--ell", "2"});
    EXPECT_EQ(j.at("point").at("kind"), "YM_0");
    EXPECT_TRUE(j.at("report").at("pass").get<bool>());
}

TEST(Cli, WitnessErrors) {
    EXPECT_EQ(run({"witness", "--n", "2", "--i", "1", "--type", "1,-1", "--sign", "-1"}).code, 1);
    EXPECT_EQ(run({"witness", "--n", "2", "--i", "1", "--ell", "0", "--type", "0,0"}).code, 1);
    EXPECT_EQ(run({"witness", "--type", "1/3,1/3"}).code, 1);
    EXPECT_EQ(run({"witness", "--type", "a,b"}).code, 1);
}

TEST(Cli, ValidationErrors) {
    EXPECT_EQ(run({}).code, 1);
    EXPECT_EQ(run({"strata", "--n", "0"}).code, 1);
    EXPECT_EQ(run({"strata", "--i", "3"}).code, 1);
    EXPECT_EQ(run({"strata", "--format", "xml"}).code, 1);
    EXPECT_EQ(run({"strata", "--n", "two"}).code, 1);
    EXPECT_EQ(run({"series", "--n", "2", "--ell", "0"}).code, 1);
    EXPECT_EQ(run({"series", "--flat-table", "/nonexistent/table"}).code, 1);
    EXPECT_EQ(run({"verify", "--i", "0"}).code, 1);
}

TEST(Cli, VerifySmallPasses) {
    const auto r = run({"verify", "--n", "2", "--ell", "1", "--trials", "40", "--seed", "3"});
    EXPECT_EQ(r.code, 0) << r.out;
    EXPECT_NE(r.out.find("all checks passed"), std::string::npos);
    EXPECT_EQ(r.out, run({"verify", "--n", "2", "--ell", "1", "--trials", "40", "--seed", "3"}).out);
}

TEST(Cli, VerifyTinyToleranceFails) {
    const auto r = run({"verify", "--n", "2", "--ell", "1", "--i", "1", "--trials", "20", "--tol", "1e-16"});
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.out.find("noise floor"), std::string::npos);
}

TEST(Cli, BinaryExitCodes) {
    const std::string bin = YMSTRATA_CLI_PATH;
    EXPECT_EQ(shell_status(bin + " strata --n 2 >/dev/null"), 0);
    EXPECT_EQ(shell_status(bin + " strata --n -1 >/dev/null 2>&1"), 1);
    EXPECT_EQ(shell_status(bin + " verify --n 1 --ell 0 --trials 5 --tol 1e-30 >/dev/null"), 2);
    EXPECT_EQ(shell_status(bin + " series --n 4 --i 1 --ell 1 --degree 4 --strict >/dev/null"), 3);
}
