#include "kfrac/selftest.hpp"

#include "kfrac/constants.hpp"
#include "kfrac/energy.hpp"
#include "kfrac/frac_ops.hpp"
#include "kfrac/nonlinearity.hpp"
#include "kfrac/spaces.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace kfrac {

ProblemSpec reference_spec() {
    ProblemSpec s;
    s.a = 1.0;
    s.b = 1.0;
    s.p = 3;
    s.alpha = 0.5;
    s.T = 1.0;
    s.N = 2;
    s.potential = Potential::polynomial({1.0, 0.0, 7.0});
    s.nl = Nonlinearity::power({1.0, 1.0, 11.0}, {1.0, 12.0, 10.0, 1.0, 2.0, 10.0});
    return s;
}

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::abs(b); }

SuiteResult make(std::string name, bool pass, const std::ostringstream& os) {
    return {std::move(name), pass, os.str()};
}

// Relative discrete L² error of f against the exact g, both sampled on the grid.
double rel_l2(const GridFunction& f, const GridFunction& g) {
    return std::sqrt(lp_integral(f - g, 2.0) / lp_integral(g, 2.0));
}

} // namespace

SuiteResult selftest_gamma(std::span<const double> coefficients) {
    const double sqrt_pi = std::sqrt(std::numbers::pi);
    const std::pair<double, double> table[] = {
        {1.0, 1.0}, {2.0, 1.0}, {5.0, 24.0}, {10.0, 362880.0}, {0.5, sqrt_pi}, {1.5, sqrt_pi / 2},
        {2.5, 3 * sqrt_pi / 4}, {0.1, 9.5135076986687318}, {0.25, 3.6256099082219083}, {3.7, 4.1706517837966040}};
    std::ostringstream os;
    double worst = 0.0;
    for (auto [z, exact] : table) {
        double err;
        try {
            err = rel(gamma_lanczos(z, coefficients), exact);
        } catch (const std::exception& e) {
            os << "z = " << z << ": " << e.what();
            return make("gamma", false, os);
        }
        if (!(err <= worst)) worst = err;  // NaN-propagating max
    }
    const bool pass = worst <= 1e-13;
    os << "max relative error " << worst << " over " << std::size(table) << " reference values";
    return make("gamma", pass, os);
}

SuiteResult selftest_operators() {
    std::ostringstream os;
    bool pass = true;
    const Grid grid(1.0, 1024);

    // Power rule: D^α t^β = Γ(β+1)/Γ(β+1-α) t^{β-α}, same for the integral with -γ.
    const double beta = 2.0;
    const auto tb = GridFunction::sample_scalar(grid, [&](double t) { return std::pow(t, beta); });
    for (double alpha : {0.3, 0.5, 0.8}) {
        const auto exact = GridFunction::sample_scalar(grid, [&](double t) {
            return gamma_fn(beta + 1) / gamma_fn(beta + 1 - alpha) * std::pow(t, beta - alpha);
        });
        const double err = rel_l2(apply(frac_derivative_op(grid, alpha, Side::left), tb), exact);
        pass = pass && err <= 1e-2;
        os << "D^" << alpha << " t^2: " << err << "; ";
    }
    for (double gamma : {0.5, 1.5}) {
        const auto exact = GridFunction::sample_scalar(grid, [&](double t) {
            return gamma_fn(beta + 1) / gamma_fn(beta + 1 + gamma) * std::pow(t, beta + gamma);
        });
        const double err = rel_l2(frac_integral(tb, gamma, Side::left), exact);
        pass = pass && err <= 1e-2;
        os << "I^" << gamma << " t^2: " << err << "; ";
    }

    // α = 1 reduces to the classical derivative.
    const auto s = GridFunction::sample_scalar(grid, [](double t) { return std::sin(std::numbers::pi * t); });
    const auto c = GridFunction::sample_scalar(
        grid, [](double t) { return std::numbers::pi * std::cos(std::numbers::pi * t); });
    const auto ds = apply(frac_derivative_op(grid, 1.0, Side::left), s);
    const double sup = (ds.values() - c.values()).cwiseAbs().maxCoeff() / std::numbers::pi;
    pass = pass && sup <= 1e-2;
    os << "alpha=1 sup error " << sup;
    return make("operators", pass, os);
}

SuiteResult selftest_gradient() {
    const Problem problem(reference_spec(), 64);
    const Lambda lambda = Lambda::from_log10(1.0);
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> unif(-0.6, 0.6);
    std::ostringstream os;
    double worst = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
        GridFunction u = problem.zero(), v = problem.zero();
        for (std::size_t i = 1; i + 1 < problem.grid().size(); ++i)
            for (std::size_t k = 0; k < problem.components(); ++k) {
                u(i, k) = unif(rng);
                v(i, k) = unif(rng);
            }
        const double eps = 1e-5;
        const double fd = (energy(u + eps * v, problem, lambda).total - energy(u - eps * v, problem, lambda).total) /
                          (2 * eps);
        const double an = grid_pairing(energy_gradient(u, problem, lambda), v);
        worst = std::max(worst, std::abs(fd - an) / std::max(std::abs(an), 1e-300));
    }
    os << "max relative directional-derivative error " << worst;
    return make("gradient", worst <= 1e-6, os);
}

SuiteResult selftest_nonlinearity() {
    const ProblemSpec spec = reference_spec();
    const GrowthReport r = check_growth(spec.nl, spec.T, static_cast<std::size_t>(spec.N), 20000, 3);
    std::ostringstream os;
    for (const ConditionCheck* c : r.checks())
        os << c->name << (c->pass ? " ok" : " FAILED (" + c->detail + ")") << "; ";
    return make("nonlinearity", r.all(), os);
}

SuiteResult selftest_constants() {
    const Problem problem(reference_spec(), 512);
    const ConstantsReport c = compute_constants(problem);
    const double pi = std::numbers::pi;
    const double D = std::cbrt(4.0 / 3.0) * std::pow(pi, -4.0 / 3.0);
    const double G = std::cbrt(1.0 / (std::pow(gamma_fn(1.5), 3) * 2.5));
    std::ostringstream os;
    const double eD = rel(c.D.to_double(), D), eG = rel(c.G.to_double(), G);
    const double gap = std::abs(c.lambda_star.log10_abs() - 54.316);
    const bool pass = eD <= 1e-12 && eG <= 1e-12 && gap <= 0.01;
    os << "D rel " << eD << ", G rel " << eG << ", log10 lambda* = " << c.lambda_star.log10_abs();
    return make("constants", pass, os);
}

std::vector<SuiteResult> run_selftest(const SelftestOptions& options) {
    return {selftest_gamma(options.gamma_coefficients), selftest_operators(), selftest_gradient(),
            selftest_nonlinearity(), selftest_constants()};
}

nlohmann::json to_json(const std::vector<SuiteResult>& results) {
    nlohmann::json suites = nlohmann::json::array();
    bool all = true;
    for (const auto& r : results) {
        suites.push_back({{"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
        all = all && r.pass;
    }
    return {{"pass", all}, {"suites", suites}};
}

} // namespace kfrac
