#pragma once

#include "kfrac/gamma.hpp"
#include "kfrac/problem.hpp"

#include <nlohmann/json.hpp>

#include <span>
#include <string>
#include <vector>

namespace kfrac {

/// N = 2, a = b = T = 1, p = 3, α = 1/2, V = 7t² + 1, F = (1 + t)|x|^11 with
/// δ = 1, q1 = 12, q2 = 10, M1 = 1, M2 = 2, β = 10.
ProblemSpec reference_spec();

struct SuiteResult {
    std::string name;
    bool pass = false;
    std::string detail;
};

struct SelftestOptions {
    /// Lanczos coefficients the gamma suite checks; override to inject faults.
    std::span<const double> gamma_coefficients = kLanczosCoefficients;
};

SuiteResult selftest_gamma(std::span<const double> coefficients);
SuiteResult selftest_operators();
SuiteResult selftest_gradient();
SuiteResult selftest_nonlinearity();
SuiteResult selftest_constants();

std::vector<SuiteResult> run_selftest(const SelftestOptions& options = {});
nlohmann::json to_json(const std::vector<SuiteResult>& results);

} // namespace kfrac
