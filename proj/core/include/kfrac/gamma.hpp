#pragma once

#include <array>
#include <span>

namespace kfrac {

/// Lanczos coefficients for g = 7, n = 9.
inline constexpr double kLanczosG = 7.0;
inline constexpr std::array<double, 9> kLanczosCoefficients = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

/// Γ(z) for z > 0; throws DomainError otherwise.
double gamma_fn(double z);

/// Lanczos evaluation with caller-supplied coefficients (g = 7). Used by the
/// self-test's fault-injection path; production code calls gamma_fn.
double gamma_lanczos(double z, std::span<const double> coefficients);

} // namespace kfrac
