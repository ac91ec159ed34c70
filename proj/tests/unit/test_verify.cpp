#include <kfrac/constants.hpp>
#include <kfrac/selftest.hpp>
#include <kfrac/spec_io.hpp>
#include <kfrac/verify.hpp>

#include <gtest/gtest.h>

#include <cmath>

using namespace kfrac;

namespace {

struct Fixture {
    Problem problem{reference_spec(), 256};
    ConstantsReport c = compute_constants(problem);
};

const Fixture& fx() {
    static const Fixture f;
    return f;
}

// Norms of size ν_λ-ish with c_λ between d_λ and the upper estimate.
NormReport plausible_norms(double v) {
    NormReport n;
    n.v_norm = v;
    n.e_norm = v;
    n.frac_seminorm = 0.9 * v;
    n.lp_norm = 0.2 * v;
    n.sup_norm = 0.95 * v;
    return n;
}

} // namespace

TEST(CheckBounds, PlausibleSolutionPasses) {
    const auto& f = fx();
    const Lambda lam = Lambda::from_log10(55.0);
    const double d = d_lambda(f.c, f.problem.spec(), lam);
    const BoundVerdicts v = check_bounds(plausible_norms(1.5e-7), 10 * d, f.c, f.problem.spec(), lam);
    EXPECT_TRUE(v.v_norm_bound.ok);
    EXPECT_TRUE(v.v_norm_bound.asserted);
    EXPECT_GT(v.v_norm_bound.margin, 0.0);
    EXPECT_TRUE(v.sup_half_delta.ok);
    EXPECT_TRUE(v.sup_embedding.ok);
    EXPECT_TRUE(v.sup_bound.ok);
    EXPECT_TRUE(v.c_upper.ok);
    EXPECT_TRUE(v.c_lower.ok);
    EXPECT_TRUE(v.geometry_ok);
    EXPECT_FALSE(v.trivial_solution);
    EXPECT_TRUE(v.all_asserted_ok());
}

TEST(CheckBounds, MarginIsRelativeGap) {
    const auto& f = fx();
    const Lambda lam = Lambda::from_log10(55.0);
    const LogReal bound = v_norm_pow_bound(f.c, lam);
    const double v = std::cbrt(0.25 * bound.to_double());
    const BoundVerdicts out = check_bounds(plausible_norms(v), 1e-20, f.c, f.problem.spec(), lam);
    EXPECT_NEAR(out.v_norm_bound.margin, 0.75, 1e-12);
}

TEST(CheckBounds, ZeroFunctionIsFlaggedTrivial) {
    const auto& f = fx();
    const Lambda lam = Lambda::from_log10(55.0);
    const BoundVerdicts v = check_bounds(NormReport{}, 0.0, f.c, f.problem.spec(), lam);
    EXPECT_TRUE(v.v_norm_bound.ok);
    EXPECT_TRUE(v.sup_half_delta.ok);
    EXPECT_TRUE(v.trivial_solution);
    EXPECT_FALSE(v.c_lower.ok);
    EXPECT_FALSE(v.geometry_ok);
    EXPECT_FALSE(v.all_asserted_ok());
}

TEST(CheckBounds, HalfRadiusOnlyMeasuredBelowLambda3) {
    const auto& f = fx();
    const Lambda lam = Lambda::from_log10(20.0);
    NormReport n = plausible_norms(0.1);
    n.sup_norm = 0.9;  // above δ/2
    const BoundVerdicts v = check_bounds(n, 1.0, f.c, f.problem.spec(), lam);
    EXPECT_FALSE(v.sup_half_delta.asserted);
    EXPECT_FALSE(v.sup_half_delta.ok);
    EXPECT_FALSE(v.v_norm_bound.asserted);
    EXPECT_FALSE(v.c_upper.asserted);
}

TEST(CheckBounds, ViolationBeyondSlackFails) {
    const auto& f = fx();
    const Lambda lam = Lambda::from_log10(55.0);
    const double bound = v_norm_pow_bound(f.c, lam).to_double();
    const double d = d_lambda(f.c, f.problem.spec(), lam);
    EXPECT_TRUE(check_bounds(plausible_norms(std::cbrt(1.04 * bound)), 2 * d, f.c, f.problem.spec(), lam).v_norm_bound.ok);
    EXPECT_FALSE(check_bounds(plausible_norms(std::cbrt(1.06 * bound)), 2 * d, f.c, f.problem.spec(), lam).v_norm_bound.ok);
}

TEST(CheckGeometry, RingAndEndpointAtLargeLambda) {
    const auto& f = fx();
    const GeometryVerdict g = check_geometry(f.problem, f.c, Lambda::from_log10(55.0), 100, 1);
    EXPECT_TRUE(g.ring_ok) << g.ring_min_energy << " vs " << g.d;
    EXPECT_GE(g.ring_min_energy, g.d);
    EXPECT_EQ(g.endpoint, EndpointStatus::negative);
    EXPECT_TRUE(g.endpoint_asserted);
    EXPECT_TRUE(g.pass());
}

TEST(CheckGeometry, ThresholdIsIndeterminate) {
    const auto& f = fx();
    const GeometryVerdict g =
        check_geometry(f.problem, f.c, Lambda::from_log10(f.c.Lambda1.log10_abs()), 10, 1);
    EXPECT_EQ(g.endpoint, EndpointStatus::indeterminate);
    EXPECT_FALSE(g.endpoint_asserted);
}

TEST(CheckGeometry, SmallLambdaEndpointNotNegativeButNotAsserted) {
    const auto& f = fx();
    const GeometryVerdict g = check_geometry(f.problem, f.c, Lambda::from_log10(0.0), 10, 1);
    EXPECT_EQ(g.endpoint, EndpointStatus::nonnegative);
    EXPECT_FALSE(g.endpoint_asserted);
}

TEST(CheckDecay, PassesForDecreasingRowsBelowTheLine) {
    const auto& f = fx();
    std::vector<DecayRow> rows;
    for (double L : {55.0, 57.0, 59.0}) {
        const double line = v_norm_pow_bound(f.c, Lambda::from_log10(L)).to_double();
        rows.push_back({L, std::cbrt(0.5 * line), 0.4 * std::cbrt(line), true});
    }
    const DecayVerdict v = check_decay(rows, f.c, 3);
    EXPECT_EQ(v.status, DecayStatus::pass) << v.detail;
}

TEST(CheckDecay, ConstantNormsAboveTheLineFail) {
    const auto& f = fx();
    const std::vector<DecayRow> rows{{55, 1.0, 1.0, true}, {57, 1.0, 1.0, true}, {59, 1.0, 1.0, true}};
    const DecayVerdict v = check_decay(rows, f.c, 3);
    EXPECT_EQ(v.status, DecayStatus::fail);
    EXPECT_FALSE(v.below_bound_line);
    EXPECT_FALSE(v.v_norm_decreased);
}

TEST(CheckDecay, TwoPointsAreInconclusive) {
    const auto& f = fx();
    EXPECT_EQ(check_decay({{55, 1e-7, 1e-7, true}, {59, 1e-8, 1e-8, true}}, f.c, 3).status,
              DecayStatus::inconclusive);
    // Three rows but one failed: still only two usable.
    EXPECT_EQ(check_decay({{55, 1e-7, 1e-7, true}, {57, 0, 0, false}, {59, 1e-8, 1e-8, true}}, f.c, 3).status,
              DecayStatus::inconclusive);
    // Three rows within one decade.
    EXPECT_EQ(check_decay({{55, 1e-7, 1e-7, true}, {55.5, 9e-8, 9e-8, true}, {56, 8e-8, 8e-8, true}}, f.c, 3).status,
              DecayStatus::inconclusive);
}

TEST(Verdicts, ReplayFromPersistedJsonIsIdentical) {
    const auto& f = fx();
    const Lambda lam = Lambda::from_log10(55.0);
    const double d = d_lambda(f.c, f.problem.spec(), lam);
    const NormReport n = plausible_norms(1.2e-7);
    const BoundVerdicts original = check_bounds(n, 3 * d, f.c, f.problem.spec(), lam);

    const nlohmann::json stored = {{"norms", io::to_json(n)}, {"c_lambda", 3 * d}};
    const nlohmann::json reread = nlohmann::json::parse(stored.dump());
    const BoundVerdicts replayed = check_bounds(io::norms_from_json(reread.at("norms")),
                                                reread.at("c_lambda").get<double>(), f.c, f.problem.spec(), lam);
    EXPECT_EQ(io::to_json(original), io::to_json(replayed));
}

TEST(Verdicts, StatusNames) {
    EXPECT_EQ(to_string(DecayStatus::inconclusive), "inconclusive");
    EXPECT_EQ(to_string(EndpointStatus::negative), "negative");
}
