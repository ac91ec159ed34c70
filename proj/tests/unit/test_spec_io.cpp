#include <kfrac/errors.hpp>
#include <kfrac/selftest.hpp>
#include <kfrac/spec_io.hpp>
#include <kfrac/verify.hpp>

#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>

using namespace kfrac;
using nlohmann::json;

namespace {

const std::filesystem::path kExample = std::filesystem::path(KFRAC_DATA_DIR) / "example_problem.json";

json example_json() {
    std::ifstream in(kExample);
    return json::parse(in);
}

std::string parse_error_key(const json& j) {
    try {
        io::parse_spec(j);
    } catch (const ParseError& e) {
        return e.key();
    }
    return "<no error>";
}

} // namespace

TEST(SpecIo, LoadsTheWorkedExample) {
    const io::SpecFile f = io::load_spec(kExample);
    const ProblemSpec ref = reference_spec();
    EXPECT_EQ(f.spec.N, 2);
    EXPECT_EQ(f.spec.p, 3);
    EXPECT_DOUBLE_EQ(f.spec.alpha, 0.5);
    EXPECT_EQ(f.spec.potential.coeffs, ref.potential.coeffs);
    EXPECT_DOUBLE_EQ(f.spec.nl.constants().q1, 12.0);
    EXPECT_DOUBLE_EQ(f.spec.nl.constants().beta, 10.0);
    ASSERT_TRUE(f.lambda_log10.has_value());
    EXPECT_DOUBLE_EQ(*f.lambda_log10, 55.0);
    EXPECT_EQ(f.solver.grid_m, 512u);
    EXPECT_EQ(f.solver.path_points, 33u);
    EXPECT_NO_THROW(validate(f.spec));
}

TEST(SpecIo, SerializeRoundTripIsStable) {
    const io::SpecFile f = io::load_spec(kExample);
    const json once = io::to_json(f);
    const json twice = io::to_json(io::parse_spec(json::parse(once.dump())));
    EXPECT_EQ(once, twice);
}

TEST(SpecIo, MissingKeyIsNamed) {
    json j = example_json();
    j.erase("alpha");
    EXPECT_EQ(parse_error_key(j), "alpha");
    j = example_json();
    j["nonlinearity"].erase("M2");
    EXPECT_EQ(parse_error_key(j), "nonlinearity.M2");
}

TEST(SpecIo, WrongTypeIsNamed) {
    json j = example_json();
    j["potential"]["coeffs"][1] = "zero";
    EXPECT_EQ(parse_error_key(j), "potential.coeffs[1]");
    j = example_json();
    j["p"] = 2.5;
    EXPECT_EQ(parse_error_key(j), "p");
    j = example_json();
    j["solver"]["armijo_c"] = 1.5;
    EXPECT_EQ(parse_error_key(j), "solver.armijo_c");
}

TEST(SpecIo, UnknownKeysAreRejected) {
    json j = example_json();
    j["lambda"] = 3;
    EXPECT_EQ(parse_error_key(j), "lambda");
    j = example_json();
    j["solver"]["tolerance"] = 1e-6;
    EXPECT_EQ(parse_error_key(j), "solver.tolerance");
}

TEST(SpecIo, PotentialKinds) {
    json j = example_json();
    j["potential"] = {{"kind", "gaussian"}};
    EXPECT_EQ(parse_error_key(j), "potential.kind");
    j["potential"] = {{"kind", "const"}, {"value", 2.0}};
    const io::SpecFile f = io::parse_spec(j);
    EXPECT_EQ(f.spec.potential.kind, Potential::Kind::constant);
    EXPECT_DOUBLE_EQ(f.spec.potential(0.7), 2.0);
}

TEST(SpecIo, SyntaxErrorReportsLine) {
    const auto path = std::filesystem::temp_directory_path() / "kfrac_bad_spec.json";
    {
        std::ofstream out(path);
        out << "{\n  \"a\": 1,\n  \"b\": ,\n}\n";
    }
    try {
        io::load_spec(path);
        FAIL() << "expected ParseError";
    } catch (const ParseError& e) {
        EXPECT_NE(std::string(e.what()).find(":3:"), std::string::npos) << e.what();
    }
    std::filesystem::remove(path);
}

TEST(SpecIo, MissingFileIsAParseError) {
    EXPECT_THROW(io::load_spec("/nonexistent/spec.json"), ParseError);
}

TEST(SpecIo, SemanticChecksAreSeparate) {
    json j = example_json();
    j["nonlinearity"]["q2"] = 9;  // q2 must exceed p^2
    const io::SpecFile f = io::parse_spec(j);
    try {
        validate(f.spec);
        FAIL() << "expected InvalidSpecError";
    } catch (const InvalidSpecError& e) {
        EXPECT_EQ(e.hypothesis(), "(H1) requires q2 in (p^2, q1)");
    }
}

TEST(SpecIo, LogRealJson) {
    const json j = io::to_json(LogReal::from_log10(54.5));
    EXPECT_DOUBLE_EQ(j.at("log10").get<double>(), 54.5);
    EXPECT_EQ(j.at("decimal").get<std::string>().substr(0, 4), "3.16");
    EXPECT_TRUE(io::to_json(LogReal::from_double(0.0)).at("log10").is_null());
}

TEST(SpecIo, ResultFileRoundTrip) {
    const io::SpecFile f = io::load_spec(kExample);
    const Problem problem(f.spec, 16);
    const ConstantsReport c = compute_constants(problem);
    GridFunction u = sine_test_element(problem);
    SolveResult s(u);
    s.c_lambda = 1.25e-22;
    s.residual = 3e-11;
    s.norms.v_norm = 1.5e-7;
    s.norms.sup_norm = 1.1e-7;
    s.morse_index = 1;
    s.bounds = check_bounds(s, c, f.spec, Lambda::from_log10(55.0));

    io::ResultFile r{f, 55.0, s, io::tool_version(), "2026-01-01T00:00:00Z"};
    const json j = io::to_json(r, c);
    EXPECT_EQ(j.at("tool"), "kfrac");
    EXPECT_EQ(j.at("result").at("u").at("values").size(), 17u);

    const io::ResultFile back = io::result_from_json(json::parse(j.dump()));
    EXPECT_EQ(back.lambda_log10, 55.0);
    EXPECT_EQ(back.result.c_lambda, s.c_lambda);
    EXPECT_EQ(back.result.morse_index, 1);
    EXPECT_EQ(back.result.u.values(), s.u.values());
    EXPECT_EQ(io::to_json(back.result.bounds), io::to_json(s.bounds));
    EXPECT_EQ(io::to_json(back, c).dump(), j.dump());
}
