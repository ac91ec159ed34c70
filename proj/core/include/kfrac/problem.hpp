#pragma once

#include "kfrac/frac_ops.hpp"
#include "kfrac/grid.hpp"
#include "kfrac/nonlinearity.hpp"

#include <cmath>
#include <vector>

namespace kfrac {

/// V(t) = Σ coeffs[k] t^k. A constant potential is a single coefficient.
struct Potential {
    enum class Kind { constant, polynomial };

    Kind kind = Kind::constant;
    std::vector<double> coeffs{1.0};

    static Potential constant(double value) { return {Kind::constant, {value}}; }
    static Potential polynomial(std::vector<double> c) { return {Kind::polynomial, std::move(c)}; }

    double operator()(double t) const noexcept;
};

/// Parameters of the Kirchhoff-type fractional Dirichlet system.
struct ProblemSpec {
    double a = 1.0;
    double b = 1.0;
    int p = 2;
    double alpha = 1.0;
    double T = 1.0;
    int N = 1;
    Potential potential;
    Nonlinearity nl = Nonlinearity::power({}, {});
};

/// Positive parameter λ carried as log10 so values near 1e55 stay exact in input.
class Lambda {
public:
    static Lambda from_log10(double l) noexcept { return Lambda(l); }
    static Lambda from_value(double v);

    double log10() const noexcept { return log10_; }
    double value() const noexcept { return std::pow(10.0, log10_); }

    friend bool operator==(Lambda, Lambda) = default;

private:
    explicit Lambda(double l) noexcept : log10_(l) {}
    double log10_;
};

/// Throws InvalidSpecError naming the violated hypothesis.
void validate(const ProblemSpec& spec);

/// A validated ProblemSpec bound to a grid: V samples and the left α-derivative.
class Problem {
public:
    Problem(ProblemSpec spec, std::size_t grid_m);

    const ProblemSpec& spec() const noexcept { return spec_; }
    const Grid& grid() const noexcept { return grid_; }
    const FracOperator& derivative() const noexcept { return derivative_; }
    const Eigen::VectorXd& potential_samples() const noexcept { return V_; }
    double v_min() const noexcept { return v_min_; }
    double v_max() const noexcept { return v_max_; }

    int p() const noexcept { return spec_.p; }
    std::size_t components() const noexcept { return static_cast<std::size_t>(spec_.N); }
    const Nonlinearity& nl() const noexcept { return spec_.nl; }

    GridFunction zero() const { return GridFunction(grid_, components()); }

private:
    ProblemSpec spec_;
    Grid grid_;
    FracOperator derivative_;
    Eigen::VectorXd V_;
    double v_min_;
    double v_max_;
};

/// e(t) = ((T/π) sin(πt/T), 0, ..., 0).
GridFunction sine_test_element(const Problem& problem);

} // namespace kfrac
