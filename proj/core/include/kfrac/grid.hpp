#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <vector>

namespace kfrac {

/// Uniform grid t_i = i*h, i = 0..m, over [0, T].
class Grid {
public:
    static constexpr std::size_t kMinIntervals = 8;

    Grid(double T, std::size_t m);

    double length() const noexcept { return T_; }
    std::size_t intervals() const noexcept { return m_; }
    std::size_t size() const noexcept { return m_ + 1; }
    double step() const noexcept { return h_; }
    double node(std::size_t i) const noexcept {
        return i == m_ ? T_ : static_cast<double>(i) * h_;
    }
    std::vector<double> nodes() const;

    /// Composite trapezoid weights (h/2 at both ends, h inside).
    const Eigen::VectorXd& trapezoid_weights() const noexcept { return weights_; }

    friend bool operator==(const Grid& a, const Grid& b) noexcept {
        return a.T_ == b.T_ && a.m_ == b.m_;
    }

private:
    double T_;
    std::size_t m_;
    double h_;
    Eigen::VectorXd weights_;
};

using RowMatrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// R^N-valued samples on a grid; row i holds u(t_i).
///
/// Dirichlet-constrained functions (the solution space) have zero first and last
/// rows. Generic samples such as f(t) = 1 fed to a fractional integral do not, so
/// the constraint is checked with `satisfies_dirichlet()` rather than enforced.
class GridFunction {
public:
    GridFunction(const Grid& grid, std::size_t components);
    GridFunction(const Grid& grid, RowMatrix values);

    template <class F>
    static GridFunction sample_scalar(const Grid& grid, F&& f) {
        GridFunction out(grid, 1);
        for (std::size_t i = 0; i < grid.size(); ++i) out.values_(i, 0) = f(grid.node(i));
        return out;
    }

    const Grid& grid() const noexcept { return grid_; }
    std::size_t components() const noexcept { return static_cast<std::size_t>(values_.cols()); }
    std::size_t size() const noexcept { return static_cast<std::size_t>(values_.rows()); }

    const RowMatrix& values() const noexcept { return values_; }
    RowMatrix& values() noexcept { return values_; }

    std::span<const double> row(std::size_t i) const noexcept {
        return {values_.data() + i * components(), components()};
    }
    double& operator()(std::size_t i, std::size_t k) { return values_(i, k); }
    double operator()(std::size_t i, std::size_t k) const { return values_(i, k); }

    bool satisfies_dirichlet() const;
    /// Euclidean norm of every row.
    Eigen::VectorXd row_norms() const;

    GridFunction& operator+=(const GridFunction& other);
    GridFunction& operator-=(const GridFunction& other);
    GridFunction& operator*=(double c) noexcept;

    friend GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
    friend GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
    friend GridFunction operator*(double c, GridFunction a) { return a *= c; }

private:
    Grid grid_;
    RowMatrix values_;
};

/// Throws DimensionError when the grids differ.
void require_same_grid(const Grid& a, const Grid& b, const char* where);

} // namespace kfrac
