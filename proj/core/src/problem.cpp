#include "kfrac/problem.hpp"

#include "kfrac/errors.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace kfrac {

double Potential::operator()(double t) const noexcept {
    double v = 0.0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) v = v * t + *it;
    return v;
}

Lambda Lambda::from_value(double v) {
    if (!(v > 0.0) || !std::isfinite(v)) throw DomainError("lambda must be a finite positive number");
    return Lambda(std::log10(v));
}

namespace {

std::string fmt(double x) {
    std::ostringstream os;
    os << x;
    return os.str();
}

} // namespace

void validate(const ProblemSpec& s) {
    if (!(s.a > 0.0)) throw InvalidSpecError("a > 0", "a = " + fmt(s.a));
    if (!(s.b > 0.0)) throw InvalidSpecError("b > 0", "b = " + fmt(s.b));
    if (s.p < 2) throw InvalidSpecError("p integer >= 2", "p = " + std::to_string(s.p));
    if (!(s.alpha > 1.0 / s.p && s.alpha <= 1.0))
        throw InvalidSpecError("1/p < alpha <= 1", "alpha = " + fmt(s.alpha));
    if (!(s.T > 0.0)) throw InvalidSpecError("T > 0", "T = " + fmt(s.T));
    if (s.N < 1) throw InvalidSpecError("N >= 1", "N = " + std::to_string(s.N));
    if (s.potential.coeffs.empty()) throw InvalidSpecError("V continuous", "potential has no coefficients");

    const auto& c = s.nl.constants();
    const double p2 = static_cast<double>(s.p) * s.p;
    if (!(c.delta > 0.0)) throw InvalidSpecError("(H0) requires delta > 0", "delta = " + fmt(c.delta));
    if (!(c.q1 > p2)) throw InvalidSpecError("(H1) requires q1 > p^2", "q1 = " + fmt(c.q1) + ", p^2 = " + fmt(p2));
    if (!(c.q2 > p2 && c.q2 < c.q1))
        throw InvalidSpecError("(H1) requires q2 in (p^2, q1)",
                               "q2 = " + fmt(c.q2) + ", p^2 = " + fmt(p2) + ", q1 = " + fmt(c.q1));
    if (!(c.M1 > 0.0 && c.M2 > 0.0))
        throw InvalidSpecError("(H1) requires M1, M2 > 0", "M1 = " + fmt(c.M1) + ", M2 = " + fmt(c.M2));
    if (!(c.beta > p2)) throw InvalidSpecError("(H2) requires beta > p^2", "beta = " + fmt(c.beta));
}

Problem::Problem(ProblemSpec spec, std::size_t grid_m)
    : spec_((validate(spec), std::move(spec))),
      grid_(spec_.T, grid_m),
      derivative_(frac_derivative_op(grid_, spec_.alpha, Side::left)),
      V_(static_cast<Eigen::Index>(grid_.size())) {
    for (std::size_t i = 0; i < grid_.size(); ++i) V_(static_cast<Eigen::Index>(i)) = spec_.potential(grid_.node(i));
    v_min_ = V_.minCoeff();
    v_max_ = V_.maxCoeff();
    if (!(v_min_ > 0.0)) throw InvalidSpecError("min V > 0", "sampled minimum of V is " + fmt(v_min_));
}

GridFunction sine_test_element(const Problem& problem) {
    const Grid& g = problem.grid();
    const double T = g.length();
    GridFunction e = problem.zero();
    for (std::size_t i = 1; i + 1 < g.size(); ++i)
        e(i, 0) = T / std::numbers::pi * std::sin(std::numbers::pi * g.node(i) / T);
    return e;
}

} // namespace kfrac
