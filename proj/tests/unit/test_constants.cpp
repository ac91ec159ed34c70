#include <kfrac/constants.hpp>
#include <kfrac/errors.hpp>
#include <kfrac/selftest.hpp>

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace kfrac;

namespace {

// Reference values computed with mpmath at 30 digits.
constexpr double kD = 0.23921022998716987648;
constexpr double kG = 0.83139687879789448031;
constexpr double kG0 = 1.18197089067138987689;
constexpr double kCStar = 263.07410045034448121;
constexpr double kLambda1Ring = 170.17587302673109066;
constexpr double kLambda1Endpoint = 1343463917.4442060511;
constexpr double kLog10Lambda2 = 54.323324454107109715;
constexpr double kLog10Lambda3 = 25.811125938459847551;
constexpr double kBoundCoeff = 23676.669040531003309;
constexpr double kNu55 = 5.857736380788224466e-9;
constexpr double kD55 = 1.116649726294299171e-26;
constexpr double kCUpper55 = 1.577087798868045441e-10;

struct Example {
    Problem problem{reference_spec(), 512};
    ConstantsReport c = compute_constants(problem);
};

const Example& ex() {
    static const Example e;
    return e;
}

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

} // namespace

TEST(Constants, DoubleFactorial) {
    EXPECT_EQ(double_factorial(0), 1u);
    EXPECT_EQ(double_factorial(1), 1u);
    EXPECT_EQ(double_factorial(7), 105u);
    EXPECT_EQ(double_factorial(8), 384u);
}

TEST(Constants, SineElementClosedForms) {
    EXPECT_LE(rel(compute_D(3, 1.0).to_double(), kD), 1e-12);
    EXPECT_LE(rel(compute_D(2, std::numbers::pi).to_double(), std::sqrt(std::numbers::pi / 2)), 1e-12);
    EXPECT_LE(rel(compute_G(3, 0.5, 1.0).to_double(), kG), 1e-12);
    EXPECT_LE(rel(compute_G0(3, 0.5, 1.0).to_double(), kG0), 1e-12);
    // Closed form of D for p = 3: (4/3)^{1/3} π^{-4/3}.
    EXPECT_LE(rel(kD, std::cbrt(4.0 / 3.0) * std::pow(std::numbers::pi, -4.0 / 3.0)), 1e-15);
}

TEST(Constants, ExampleThresholds) {
    const auto& c = ex().c;
    EXPECT_LE(rel(c.C_star.to_double(), kCStar), 1e-12);
    EXPECT_LE(rel(c.Lambda1_ring.to_double(), kLambda1Ring), 1e-12);
    EXPECT_LE(rel(c.Lambda1_endpoint.to_double(), kLambda1Endpoint), 1e-12);
    EXPECT_EQ(c.Lambda1, c.Lambda1_endpoint);
    EXPECT_NEAR(c.Lambda2.log10_abs(), kLog10Lambda2, 1e-12);
    EXPECT_NEAR(c.Lambda3.log10_abs(), kLog10Lambda3, 1e-12);
    EXPECT_LE(rel(c.bound_coeff.to_double(), kBoundCoeff), 1e-12);
    EXPECT_EQ(c.theta, 10.0);
    EXPECT_DOUBLE_EQ(c.decay_exponent, 2.0 / 9.0);
    EXPECT_EQ(c.v_min, 1.0);
    EXPECT_EQ(c.v_max, 8.0);
}

TEST(Constants, LambdaStarIsLambda2NearTheQuotedPower) {
    const auto& c = ex().c;
    EXPECT_EQ(c.lambda_star_index, 2);
    EXPECT_EQ(c.lambda_star, c.Lambda2);
    EXPECT_LE(std::abs(c.lambda_star.log10_abs() - 54.316), 0.01);
    // 24th root of λ*.
    EXPECT_NEAR(std::pow(10.0, c.lambda_star.log10_abs() / 24.0), 183.4306, 1e-3);
}

TEST(Constants, BoundPrefactorMatchesItsDefinition) {
    const auto& c = ex().c;
    const double p2 = 9.0, theta = c.theta;
    const LogReal expected = LogReal::from_double(p2 * theta / (theta - p2)) * c.C_star;
    EXPECT_NEAR(c.bound_coeff.log10_abs(), expected.log10_abs(), 1e-12 * std::abs(expected.log10_abs()));
}

TEST(Constants, RingRadiusAndLevelAtLargeLambda) {
    const auto& e = ex();
    const Lambda lam = Lambda::from_log10(55.0);
    EXPECT_LE(rel(nu_lambda(e.c, e.problem.spec(), lam), kNu55), 1e-11);
    EXPECT_LE(rel(d_lambda(e.c, e.problem.spec(), lam), kD55), 1e-10);
    const BoundWithFlag up = c_lambda_upper(e.c, lam);
    EXPECT_TRUE(up.hypothesis_met);
    EXPECT_LE(rel(up.value.to_double(), kCUpper55), 1e-11);
    EXPECT_FALSE(c_lambda_upper(e.c, Lambda::from_log10(20.0)).hypothesis_met);
}

TEST(Constants, DLambdaIsPositiveAndDecreasing) {
    const auto& e = ex();
    double prev = INFINITY;
    for (double L = 10.0; L <= 80.0; L += 5.0) {
        const double d = d_lambda(e.c, e.problem.spec(), Lambda::from_log10(L));
        EXPECT_GT(d, 0.0) << L;
        EXPECT_LT(d, prev) << L;
        prev = d;
    }
}

TEST(Constants, ConstantPotentialUsesUnitBranch) {
    ProblemSpec s = reference_spec();
    s.potential = Potential::constant(1.0);
    const Problem problem(s, 128);
    const ConstantsReport c = compute_constants(problem);
    EXPECT_EQ(c.v_min, 1.0);
    EXPECT_EQ(c.v_max, 1.0);
    // With V ≡ 1 the Λ2 base loses the factor V^∞ = 8 of the example.
    EXPECT_LT(c.Lambda2, ex().c.Lambda2);
}

TEST(Validate, NamesTheViolatedHypothesis) {
    ProblemSpec s = reference_spec();
    s.nl = Nonlinearity::power({1.0, 1.0, 11.0}, {1.0, 12.0, 9.0, 1.0, 2.0, 10.0});
    try {
        validate(s);
        FAIL() << "q2 = p^2 accepted";
    } catch (const InvalidSpecError& e) {
        EXPECT_EQ(e.hypothesis(), "(H1) requires q2 in (p^2, q1)");
    }

    s = reference_spec();
    s.nl = Nonlinearity::power({1.0, 1.0, 11.0}, {1.0, 12.0, 10.0, 1.0, 2.0, 9.0});
    EXPECT_THROW(validate(s), InvalidSpecError);

    s = reference_spec();
    s.alpha = 0.3;
    try {
        validate(s);
        FAIL();
    } catch (const InvalidSpecError& e) {
        EXPECT_EQ(e.hypothesis(), "1/p < alpha <= 1");
    }

    s = reference_spec();
    s.potential = Potential::polynomial({-1.0, 0.0, 7.0});
    EXPECT_THROW(Problem(s, 64), InvalidSpecError);
}

TEST(LambdaType, Log10Representation) {
    EXPECT_EQ(Lambda::from_log10(55.0).log10(), 55.0);
    EXPECT_NEAR(Lambda::from_value(1e10).log10(), 10.0, 1e-15);
    EXPECT_THROW(Lambda::from_value(-1.0), DomainError);
    EXPECT_THROW(Lambda::from_value(0.0), DomainError);
}
