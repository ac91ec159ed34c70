#include "kfrac/gamma.hpp"

#include "kfrac/errors.hpp"

#include <cmath>
#include <numbers>
#include <string>

namespace kfrac {

double gamma_lanczos(double z, std::span<const double> c) {
    if (!(z > 0.0)) throw DomainError("gamma: argument must be positive, got " + std::to_string(z));
    if (z < 0.5) {
        // Reflection keeps the series in its accurate range.
        return std::numbers::pi / (std::sin(std::numbers::pi * z) * gamma_lanczos(1.0 - z, c));
    }
    const double x = z - 1.0;
    double series = c[0];
    for (std::size_t k = 1; k < c.size(); ++k) series += c[k] / (x + static_cast<double>(k));
    const double t = x + kLanczosG + 0.5;
    return std::sqrt(2.0 * std::numbers::pi) * std::pow(t, x + 0.5) * std::exp(-t) * series;
}

double gamma_fn(double z) { return gamma_lanczos(z, kLanczosCoefficients); }

} // namespace kfrac
