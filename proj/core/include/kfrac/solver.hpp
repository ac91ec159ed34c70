#pragma once

#include "kfrac/constants.hpp"
#include "kfrac/energy.hpp"
#include "kfrac/spaces.hpp"
#include "kfrac/verdicts.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace kfrac {

struct MountainPassConfig {
    std::size_t path_points = 33;
    std::size_t max_outer_iters = 20000;
    /// Target for residual_norm / (a^{p-1} ν_λ^{p-1}).
    double descent_tol = 1e-8;
    double armijo_c = 1e-4;
    double armijo_shrink = 0.5;
    std::size_t grid_m = 512;
    std::uint64_t seed = 1;
    /// Relative residual at which path descent hands over to Newton refinement.
    double newton_switch_tol = 1e-3;
    std::size_t max_newton_iters = 40;
    std::size_t reparam_every = 10;
    /// Relative slack on theorem bounds in the attached verdicts.
    double bound_slack = 0.05;
};

struct SolveResult {
    explicit SolveResult(GridFunction solution) : u(std::move(solution)) {}

    GridFunction u;
    double c_lambda = 0.0;
    double residual = 0.0;      ///< relative: residual_norm / (a^{p-1} ν^{p-1})
    double residual_abs = 0.0;
    NormReport norms;
    double nu = 0.0;
    double d = 0.0;
    std::size_t iterations = 0;         ///< path-descent iterations
    std::size_t newton_iterations = 0;
    int morse_index = -1;               ///< negative Hessian eigenvalues at u (−1: not computed)
    double path_max = 0.0;              ///< energy of the path maximizer at hand-over
    bool geometry_ok = false;
    BoundVerdicts bounds;
};

/// Endpoint of the initial path has nonnegative energy: λ is too small for the
/// discrete problem to exhibit mountain-pass geometry.
class GeometryNotVerified : public std::runtime_error {
public:
    GeometryNotVerified(const std::string& what, double endpoint_energy)
        : std::runtime_error(what), endpoint_energy_(endpoint_energy) {}
    double endpoint_energy() const noexcept { return endpoint_energy_; }

private:
    double endpoint_energy_;
};

class MaxItersExceeded : public std::runtime_error {
public:
    MaxItersExceeded(const std::string& what, SolveResult best)
        : std::runtime_error(what), best_(std::move(best)) {}
    const SolveResult& best() const noexcept { return best_; }

private:
    SolveResult best_;
};

/// The path maximizer collapsed toward the trivial critical point.
class DegenerateCollapse : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct InitialPath {
    std::vector<double> s;             ///< path parameters in [0, 1], s.front() = 0, s.back() = 1
    std::vector<GridFunction> points;  ///< γ(s_j) = s_j (δ/G0) e
    double endpoint_energy = 0.0;
};

/// The ray from 0 to w = (δ/G0)e. Parameters concentrate on [0, 1.25 s_0] where
/// s_0 is the first sign change of the energy along the ray; the last node is w.
/// Throws GeometryNotVerified when Ī_λ(w) ≥ 0.
InitialPath initial_path(const Problem& problem, const ConstantsReport& constants, Lambda lambda,
                         std::size_t path_points);

SolveResult solve(const Problem& problem, const ConstantsReport& constants, Lambda lambda,
                  const MountainPassConfig& cfg);

struct SweepEntry {
    Lambda lambda = Lambda::from_log10(0.0);
    std::optional<SolveResult> result;
    std::string status = "ok";  ///< "ok" or the error class and message
    bool warm_started = false;
};

/// Independent solves, one per λ; a failing entry is recorded and the sweep continues.
std::vector<SweepEntry> sweep(const Problem& problem, const ConstantsReport& constants,
                              const std::vector<Lambda>& lambdas, const MountainPassConfig& cfg);

} // namespace kfrac
