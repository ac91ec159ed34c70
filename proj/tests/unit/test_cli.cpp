#include "kfrac_cli/cli.hpp"

#include <gtest/gtest.h>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <functional>
#include <fstream>
#include <sstream>

using namespace kfrac::cli;
namespace fs = std::filesystem;

namespace {

const std::string kExample = std::string(KFRAC_DATA_DIR) + "/example_problem.json";

struct CliResult {
    int code;
    std::string out, err;
};

CliResult run(std::vector<std::string> args) {
    std::ostringstream out, err;
    const int code = run_cli(args, out, err);
    return {code, out.str(), err.str()};
}

fs::path write_variant(const std::string& name, const std::function<void(nlohmann::json&)>& edit) {
    std::ifstream in(kExample);
    auto j = nlohmann::json::parse(in);
    edit(j);
    const fs::path p = fs::temp_directory_path() / name;
    std::ofstream(p) << j.dump(2);
    return p;
}

} // namespace

TEST(Cli, ConstantsTable) {
    const CliResult r = run({"constants", kExample});
    ASSERT_EQ(r.code, kOk) << r.err;
    EXPECT_NE(r.out.find("lambda* = Lambda2"), std::string::npos) << r.out;
    EXPECT_NE(r.out.find("^24"), std::string::npos);
}

TEST(Cli, ConstantsJson) {
    const CliResult r = run({"constants", kExample, "--json"});
    ASSERT_EQ(r.code, kOk) << r.err;
    const auto j = nlohmann::json::parse(r.out);
    EXPECT_NEAR(j.at("lambda_star").at("log10").get<double>(), 54.316, 0.01);
    EXPECT_EQ(j.at("lambda_star_power").get<std::string>().substr(0, 6), "183.43");
}

TEST(Cli, SelftestJson) {
    const CliResult r = run({"selftest", "--json"});
    EXPECT_EQ(r.code, kOk);
    EXPECT_TRUE(nlohmann::json::parse(r.out).at("pass").get<bool>());
}

TEST(Cli, ExitCodes) {
    EXPECT_EQ(run({}).code, kParse);
    EXPECT_EQ(run({"frobnicate"}).code, kParse);
    EXPECT_EQ(run({"constants", "/nonexistent.json"}).code, kParse);

    const fs::path bad_q2 = write_variant("kfrac_q2.json", [](auto& j) { j["nonlinearity"]["q2"] = 9; });
    const CliResult r = run({"constants", bad_q2.string()});
    EXPECT_EQ(r.code, kParse);
    EXPECT_NE(r.err.find("q2 in (p^2, q1)"), std::string::npos) << r.err;
    fs::remove(bad_q2);

    const CliResult geo = run({"solve", kExample, "--lambda-log10", "0", "--grid", "64"});
    EXPECT_EQ(geo.code, kGeometry) << geo.err;
    EXPECT_TRUE(geo.out.empty());
}

TEST(Cli, SolveNeedsLambda) {
    const fs::path p = write_variant("kfrac_nolambda.json", [](auto& j) { j.erase("lambda_log10"); });
    const CliResult r = run({"solve", p.string(), "--grid", "64"});
    EXPECT_EQ(r.code, kParse);
    EXPECT_NE(r.err.find("lambda_log10"), std::string::npos);
    fs::remove(p);
}

TEST(Cli, EmptySweepWritesHeaderOnly) {
    const CliResult r = run({"sweep", kExample, "--grid", "64"});
    EXPECT_EQ(r.code, kOk) << r.err;
    EXPECT_EQ(r.out, "lambda_log10,vnorm,supnorm,c_lambda,kk6_bound,margin,status\r\n");
    EXPECT_NE(r.err.find("inconclusive"), std::string::npos);
}

TEST(Cli, SweepRecordsFailedEntry) {
    const CliResult r = run({"sweep", kExample, "--grid", "128", "--lambda-log10-list", "55,0"});
    EXPECT_EQ(r.code, kConvergence) << r.err;
    std::istringstream lines(r.out);
    std::string header, first, second;
    std::getline(lines, header);
    std::getline(lines, first);
    std::getline(lines, second);
    EXPECT_EQ(first.rfind("0,", 0), 0u) << first;  // sorted ascending
    EXPECT_NE(first.find("geometry: "), std::string::npos) << first;
    EXPECT_NE(second.find(",ok\r"), std::string::npos) << second;
}

TEST(Cli, SolveWritesResultFile) {
    const fs::path out = fs::temp_directory_path() / "kfrac_result.json";
    const CliResult r = run({"solve", kExample, "--grid", "128", "--out", out.string()});
    ASSERT_EQ(r.code, kOk) << r.err;
    EXPECT_TRUE(r.out.empty());
    std::ifstream in(out);
    const auto j = nlohmann::json::parse(in);
    EXPECT_EQ(j.at("lambda_log10").get<double>(), 55.0);
    EXPECT_EQ(j.at("spec").at("grid_m").get<int>(), 128);
    EXPECT_TRUE(j.at("geometry_check").at("pass").get<bool>());
    EXPECT_TRUE(j.at("verdicts").at("v_norm_bound").at("ok").get<bool>());
    EXPECT_EQ(j.at("result").at("u").at("values").size(), 129u);
    fs::remove(out);
}
