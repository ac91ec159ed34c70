#include "kfrac/energy.hpp"

#include "kfrac/errors.hpp"
#include "kfrac/spaces.hpp"

#include <cmath>
#include <vector>

namespace kfrac {

namespace {

double binomial(int n, int k) noexcept {
    double r = 1.0;
    for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
    return r;
}

void check_operand(const GridFunction& u, const Problem& problem, const char* where) {
    require_same_grid(u.grid(), problem.grid(), where);
    if (u.components() != problem.components()) throw DimensionError(std::string(where) + ": component count");
}

// φ_p applied to every row: |y|^{p-2} y.
RowMatrix phi_rows(const RowMatrix& y, int p) {
    RowMatrix out = y;
    if (p == 2) return out;
    for (Eigen::Index i = 0; i < y.rows(); ++i) {
        const double n = y.row(i).norm();
        out.row(i) *= std::pow(n, p - 2);
    }
    return out;
}

} // namespace

double EnergyBreakdown::total_log10_abs() const noexcept { return std::log10(std::abs(total)); }

double kirchhoff_increment(double S, double a, double b, int p) noexcept {
    // Σ_{k=1}^p C(p,k) a^{p-k} b^{k-1} S^k / p^2: every term is nonnegative.
    double sum = 0.0;
    for (int k = p; k >= 1; --k) sum += binomial(p, k) * std::pow(a, p - k) * std::pow(b, k - 1) * std::pow(S, k);
    return sum / (static_cast<double>(p) * p);
}

double kirchhoff_A(const GridFunction& u, const Problem& problem) {
    const auto& s = problem.spec();
    return std::pow(s.a + s.b * v_norm_pow(u, problem), s.p - 1);
}

EnergyBreakdown energy(const GridFunction& u, const Problem& problem, Lambda lambda, Functional which) {
    check_operand(u, problem, "energy");
    const auto& s = problem.spec();
    const auto& nl = problem.nl();
    const auto& w = problem.grid().trapezoid_weights();

    if (which == Functional::original) {
        const double sup = u.row_norms().maxCoeff();
        if (sup > nl.constants().delta)
            throw DomainError("energy: the unmodified functional needs |u| <= delta (F is only defined there)");
    }

    double integral = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        const double t = problem.grid().node(i);
        const double F = which == Functional::modified ? f_bar(t, u.row(i), nl) : nl.eval(t, u.row(i));
        integral += w(static_cast<Eigen::Index>(i)) * F;
    }

    const double S = v_norm_pow(u, problem);
    const double bp2 = s.b * s.p * s.p;
    EnergyBreakdown e;
    e.kirchhoff_term = std::pow(s.a + s.b * S, s.p) / bp2;
    e.constant_shift = std::pow(s.a, s.p) / bp2;
    e.potential_term = lambda.value() * integral;
    e.total = kirchhoff_increment(S, s.a, s.b, s.p) - e.potential_term;
    return e;
}

GridFunction energy_gradient(const GridFunction& u, const Problem& problem, Lambda lambda) {
    check_operand(u, problem, "energy_gradient");
    const auto& s = problem.spec();
    if (s.p < 2) throw DomainError("energy_gradient: p >= 2 required");
    const auto& grid = problem.grid();
    const auto& w = grid.trapezoid_weights();
    const auto& V = problem.potential_samples();
    const auto& D = problem.derivative().weights();
    const double h = grid.step();
    const std::size_t N = u.components();

    const RowMatrix du = D * u.values();
    const Eigen::VectorXd du_norm = du.rowwise().norm();
    const Eigen::VectorXd u_norm = u.row_norms();
    const double S = w.dot(du_norm.array().pow(s.p).matrix()) +
                     w.dot((V.array() * u_norm.array().pow(s.p)).matrix());
    const double A = std::pow(s.a + s.b * S, s.p - 1);

    RowMatrix weighted = phi_rows(du, s.p);
    for (Eigen::Index i = 0; i < weighted.rows(); ++i) weighted.row(i) *= w(i);
    const RowMatrix stiff = D.transpose() * weighted;
    const RowMatrix phi_u = phi_rows(u.values(), s.p);

    GridFunction g(grid, N);
    std::vector<double> gf(N);
    const double lam = lambda.value();
    for (std::size_t i = 1; i + 1 < grid.size(); ++i) {
        const auto ii = static_cast<Eigen::Index>(i);
        grad_f_bar(grid.node(i), u.row(i), problem.nl(), gf);
        for (std::size_t k = 0; k < N; ++k) {
            const auto kk = static_cast<Eigen::Index>(k);
            const double nodal = A * (stiff(ii, kk) + w(ii) * V(ii) * phi_u(ii, kk)) - lam * w(ii) * gf[k];
            g(i, k) = nodal / h;
        }
    }
    return g;
}

double residual_norm(const GridFunction& g, const Problem& problem) {
    const double p = problem.p();
    const double q = p / (p - 1.0);
    const double sum = g.row_norms().array().pow(q).sum();
    return std::pow(problem.grid().step() * sum, 1.0 / q);
}

double pairing_with_self(const GridFunction& u, const Problem& problem, Lambda lambda) {
    check_operand(u, problem, "pairing_with_self");
    const auto& s = problem.spec();
    const double S = v_norm_pow(u, problem);
    const auto& w = problem.grid().trapezoid_weights();
    std::vector<double> gf(u.components());
    double integral = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        grad_f_bar(problem.grid().node(i), u.row(i), problem.nl(), gf);
        double dotp = 0.0;
        for (std::size_t k = 0; k < gf.size(); ++k) dotp += gf[k] * u(i, k);
        integral += w(static_cast<Eigen::Index>(i)) * dotp;
    }
    return std::pow(s.a + s.b * S, s.p - 1) * S - lambda.value() * integral;
}

double grid_pairing(const GridFunction& g, const GridFunction& v) {
    require_same_grid(g.grid(), v.grid(), "grid_pairing");
    if (g.components() != v.components()) throw DimensionError("grid_pairing: component count");
    const auto n = g.values().rows();
    return g.grid().step() * g.values().middleRows(1, n - 2).cwiseProduct(v.values().middleRows(1, n - 2)).sum();
}

} // namespace kfrac
