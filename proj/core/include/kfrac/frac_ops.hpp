#pragma once

#include "kfrac/grid.hpp"

#include <Eigen/Dense>

namespace kfrac {

enum class Side { left, right };

/// Dense triangular matrix realizing a discrete Riemann-Liouville operator on a
/// uniform grid: lower-triangular for left-sided (integration from 0), upper for
/// right-sided (integration from T).
class FracOperator {
public:
    FracOperator(Grid grid, double order, Side side, Eigen::MatrixXd weights);

    const Grid& grid() const noexcept { return grid_; }
    /// Signed order: negative for integrals (-γ), positive for derivatives.
    double order() const noexcept { return order_; }
    Side side() const noexcept { return side_; }
    const Eigen::MatrixXd& weights() const noexcept { return weights_; }

private:
    Grid grid_;
    double order_;
    Side side_;
    Eigen::MatrixXd weights_;
};

/// Product-integration weights for the order-γ fractional integral: the
/// piecewise-linear interpolant of f is integrated against the exact kernel
/// (t - s)^(γ-1) / Γ(γ). Second order for f with bounded f''.
FracOperator frac_integral_op(const Grid& grid, double gamma, Side side);

/// L1 discretization of the Riemann-Liouville derivative of order α ∈ (0, 1]:
/// the exact derivative of the (1-α)-integral of the piecewise-linear interpolant.
/// α = 1 gives one-sided differences. Throws DomainError for α outside (0, 1].
FracOperator frac_derivative_op(const Grid& grid, double alpha, Side side);

/// Row-wise application, each component independently.
GridFunction apply(const FracOperator& op, const GridFunction& f);

GridFunction frac_integral(const GridFunction& f, double gamma, Side side);

} // namespace kfrac
