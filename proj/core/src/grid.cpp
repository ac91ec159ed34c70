#include "kfrac/grid.hpp"

#include "kfrac/errors.hpp"

#include <string>

namespace kfrac {

Grid::Grid(double T, std::size_t m) : T_(T), m_(m), h_(T / static_cast<double>(m)) {
    if (!(T > 0.0)) throw DomainError("grid: interval length must be positive");
    if (m < kMinIntervals)
        throw DomainError("grid: need at least " + std::to_string(kMinIntervals) + " subintervals");
    weights_ = Eigen::VectorXd::Constant(static_cast<Eigen::Index>(m + 1), h_);
    weights_(0) = weights_(static_cast<Eigen::Index>(m)) = 0.5 * h_;
}

std::vector<double> Grid::nodes() const {
    std::vector<double> t(size());
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = node(i);
    return t;
}

GridFunction::GridFunction(const Grid& grid, std::size_t components)
    : grid_(grid),
      values_(RowMatrix::Zero(static_cast<Eigen::Index>(grid.size()),
                              static_cast<Eigen::Index>(components))) {
    if (components == 0) throw DimensionError("grid function needs at least one component");
}

GridFunction::GridFunction(const Grid& grid, RowMatrix values) : grid_(grid), values_(std::move(values)) {
    if (static_cast<std::size_t>(values_.rows()) != grid.size() || values_.cols() == 0)
        throw DimensionError("grid function: values must have one row per grid node");
}

bool GridFunction::satisfies_dirichlet() const {
    return values_.row(0).isZero(0.0) && values_.row(values_.rows() - 1).isZero(0.0);
}

Eigen::VectorXd GridFunction::row_norms() const { return values_.rowwise().norm(); }

GridFunction& GridFunction::operator+=(const GridFunction& other) {
    require_same_grid(grid_, other.grid_, "operator+=");
    if (other.components() != components()) throw DimensionError("operator+=: component mismatch");
    values_ += other.values_;
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& other) {
    require_same_grid(grid_, other.grid_, "operator-=");
    if (other.components() != components()) throw DimensionError("operator-=: component mismatch");
    values_ -= other.values_;
    return *this;
}

GridFunction& GridFunction::operator*=(double c) noexcept {
    values_ *= c;
    return *this;
}

void require_same_grid(const Grid& a, const Grid& b, const char* where) {
    if (!(a == b)) throw DimensionError(std::string(where) + ": grids differ");
}

} // namespace kfrac
