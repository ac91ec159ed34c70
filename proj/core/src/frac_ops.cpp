#include "kfrac/frac_ops.hpp"

#include "kfrac/errors.hpp"
#include "kfrac/gamma.hpp"

#include <cmath>

namespace kfrac {

namespace {

using Index = Eigen::Index;

Eigen::MatrixXd reflect(const Eigen::MatrixXd& left) {
    // (R f)_i = (L f~)_{m-i} with f~_j = f_{m-j}.
    return left.reverse();
}

Eigen::MatrixXd left_integral_weights(const Grid& grid, double gamma) {
    const Index n_nodes = static_cast<Index>(grid.size());
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n_nodes, n_nodes);
    const double scale = std::pow(grid.step(), gamma) / gamma_fn(gamma + 2.0);
    const double g1 = gamma + 1.0;

    // a_k = (k+1)^{γ+1} - 2k^{γ+1} + (k-1)^{γ+1} depends only on k = n - j.
    std::vector<double> interior(static_cast<std::size_t>(n_nodes), 0.0);
    for (Index k = 1; k < n_nodes; ++k) {
        const double kk = static_cast<double>(k);
        interior[static_cast<std::size_t>(k)] =
            std::pow(kk + 1.0, g1) - 2.0 * std::pow(kk, g1) + std::pow(kk - 1.0, g1);
    }
    for (Index n = 1; n < n_nodes; ++n) {
        const double nn = static_cast<double>(n);
        W(n, 0) = scale * (std::pow(nn - 1.0, g1) - (nn - gamma - 1.0) * std::pow(nn, gamma));
        for (Index j = 1; j < n; ++j) W(n, j) = scale * interior[static_cast<std::size_t>(n - j)];
        W(n, n) = scale;
    }
    return W;
}

Eigen::MatrixXd left_derivative_weights(const Grid& grid, double alpha) {
    const Index n_nodes = static_cast<Index>(grid.size());
    const double h = grid.step();
    Eigen::MatrixXd W = Eigen::MatrixXd::Zero(n_nodes, n_nodes);

    if (alpha == 1.0) {
        // One-sided limit at t = 0 is the only entry above the diagonal.
        W(0, 0) = -1.0 / h;
        W(0, 1) = 1.0 / h;
        for (Index n = 1; n < n_nodes; ++n) {
            W(n, n) = 1.0 / h;
            W(n, n - 1) = -1.0 / h;
        }
        return W;
    }

    const double one_minus = 1.0 - alpha;
    const double c = std::pow(h, -alpha) / gamma_fn(2.0 - alpha);
    const double singular = 1.0 / gamma_fn(one_minus);
    std::vector<double> b(static_cast<std::size_t>(n_nodes));
    for (Index k = 0; k < n_nodes; ++k) {
        const double kk = static_cast<double>(k);
        b[static_cast<std::size_t>(k)] = std::pow(kk + 1.0, one_minus) - std::pow(kk, one_minus);
    }
    auto bk = [&](Index k) { return b[static_cast<std::size_t>(k)]; };

    // Row 0 stays zero: the derivative of the interpolant behaves like t^{1-α} at 0
    // when f(0) = 0, and the f(0) t^{-α} term is singular there.
    for (Index n = 1; n < n_nodes; ++n) {
        W(n, n) = c * bk(0);
        for (Index j = 1; j < n; ++j) W(n, j) = c * (bk(n - j) - bk(n - j - 1));
        W(n, 0) = -c * bk(n - 1) + singular * std::pow(grid.node(static_cast<std::size_t>(n)), -alpha);
    }
    return W;
}

} // namespace

FracOperator::FracOperator(Grid grid, double order, Side side, Eigen::MatrixXd weights)
    : grid_(std::move(grid)), order_(order), side_(side), weights_(std::move(weights)) {
    if (static_cast<std::size_t>(weights_.rows()) != grid_.size() || weights_.rows() != weights_.cols())
        throw DimensionError("FracOperator: weight matrix must be (m+1) x (m+1)");
}

FracOperator frac_integral_op(const Grid& grid, double gamma, Side side) {
    if (!(gamma > 0.0)) throw DomainError("fractional integral: order must be positive");
    auto W = left_integral_weights(grid, gamma);
    if (side == Side::right) W = reflect(W);
    return FracOperator(grid, -gamma, side, std::move(W));
}

FracOperator frac_derivative_op(const Grid& grid, double alpha, Side side) {
    if (!(alpha > 0.0 && alpha <= 1.0))
        throw DomainError("fractional derivative: order must lie in (0, 1]");
    auto W = left_derivative_weights(grid, alpha);
    if (side == Side::right) W = reflect(W);
    return FracOperator(grid, alpha, side, std::move(W));
}

GridFunction apply(const FracOperator& op, const GridFunction& f) {
    require_same_grid(op.grid(), f.grid(), "apply");
    RowMatrix out = op.weights() * f.values();
    return GridFunction(f.grid(), std::move(out));
}

GridFunction frac_integral(const GridFunction& f, double gamma, Side side) {
    return apply(frac_integral_op(f.grid(), gamma, side), f);
}

} // namespace kfrac
