#include <kfrac/selftest.hpp>

#include <gtest/gtest.h>

using namespace kfrac;

TEST(Selftest, AllSuitesPassOnAFreshBuild) {
    const auto results = run_selftest();
    ASSERT_EQ(results.size(), 5u);
    for (const auto& r : results) EXPECT_TRUE(r.pass) << r.name << ": " << r.detail;
    const auto j = to_json(results);
    EXPECT_TRUE(j.at("pass").get<bool>());
    EXPECT_EQ(j.at("suites").size(), 5u);
}

TEST(Selftest, JsonReportsFailure) {
    const std::vector<SuiteResult> results{{"a", true, ""}, {"b", false, "broken"}};
    const auto j = to_json(results);
    EXPECT_FALSE(j.at("pass").get<bool>());
    EXPECT_EQ(j.at("suites")[1].at("detail"), "broken");
}
