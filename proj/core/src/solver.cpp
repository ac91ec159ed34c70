#include "kfrac/solver.hpp"

#include "kfrac/errors.hpp"
#include "kfrac/verify.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace kfrac {

namespace {

using Eigen::Index;

constexpr double kMaxMove = 0.05;
constexpr std::size_t kStallWindow = 200;
constexpr double kStallTol = 1e-8;
constexpr double kPathReduction = 1e-2;

/// Ī_λ in amplitude-scaled variables w = u/ν, normalized by a^{p-1}ν^p so the
/// mountain ridge sits at O(1) whatever λ is.
class ScaledFunctional {
public:
    ScaledFunctional(const Problem& problem, Lambda lambda, double nu)
        : problem_(problem), lambda_(lambda), nu_(nu),
          scale_(std::pow(problem.spec().a, problem.p() - 1) * std::pow(nu, problem.p())) {}

    double nu() const noexcept { return nu_; }
    const Problem& problem() const noexcept { return problem_; }

    GridFunction physical(const GridFunction& w) const { return nu_ * w; }

    double value(const GridFunction& w) const {
        return energy(physical(w), problem_, lambda_).total / scale_;
    }

    /// Riesz representative (divided by h) of the scaled gradient.
    GridFunction gradient(const GridFunction& w) const {
        return (nu_ / scale_) * energy_gradient(physical(w), problem_, lambda_);
    }

    double residual(const GridFunction& g) const { return residual_norm(g, problem_); }

    /// Dense Hessian of the scaled functional with respect to the interior nodal
    /// values (row-major: node, then component).
    Eigen::MatrixXd hessian(const GridFunction& w) const;

private:
    const Problem& problem_;
    Lambda lambda_;
    double nu_;
    double scale_;
};

// Jacobian of y ↦ |y|^{p-2}y: |y|^{p-2}(I + (p-2)ŷŷᵀ).
Eigen::MatrixXd phi_jacobian(const Eigen::RowVectorXd& y, int p) {
    const Index N = y.size();
    const double n = y.norm();
    if (p == 2) return Eigen::MatrixXd::Identity(N, N);
    if (n == 0.0) return Eigen::MatrixXd::Zero(N, N);
    const Eigen::VectorXd yhat = y.transpose() / n;
    return std::pow(n, p - 2) * (Eigen::MatrixXd::Identity(N, N) + (p - 2.0) * yhat * yhat.transpose());
}

Eigen::MatrixXd ScaledFunctional::hessian(const GridFunction& w) const {
    const auto& spec = problem_.spec();
    const auto& grid = problem_.grid();
    const int p = spec.p;
    const Index m = static_cast<Index>(grid.intervals());
    const Index N = static_cast<Index>(problem_.components());
    const Index n_int = m - 1;
    const auto& W = grid.trapezoid_weights();
    const auto& V = problem_.potential_samples();
    const Eigen::MatrixXd Dint = problem_.derivative().weights().middleCols(1, n_int);

    const GridFunction u = physical(w);
    const RowMatrix du = problem_.derivative().weights() * u.values();
    const double S = v_norm_pow(u, problem_);
    const double base = spec.a + spec.b * S;
    const double K1 = std::pow(base, p - 1) / p;
    const double K2 = (p - 1.0) * spec.b * std::pow(base, p - 2) / p;

    // ∇S over interior unknowns.
    RowMatrix phi_du = du;
    for (Index j = 0; j < du.rows(); ++j) phi_du.row(j) *= std::pow(du.row(j).norm(), p - 2);
    const RowMatrix stiff = Dint.transpose() * (W.asDiagonal() * phi_du);
    Eigen::VectorXd gradS(n_int * N);
    for (Index i = 0; i < n_int; ++i) {
        const Eigen::RowVectorXd ui = u.values().row(i + 1);
        const double s = std::pow(ui.norm(), p - 2);
        for (Index k = 0; k < N; ++k)
            gradS(i * N + k) = p * (stiff(i, k) + W(i + 1) * V(i + 1) * s * ui(k));
    }

    Eigen::MatrixXd H = K2 * gradS * gradS.transpose();

    // K'(S) ∇²S: fractional p-Laplacian block.
    for (Index k = 0; k < N; ++k) {
        for (Index kp = k; kp < N; ++kp) {
            Eigen::VectorXd c(du.rows());
            for (Index j = 0; j < du.rows(); ++j) {
                const double n = du.row(j).norm();
                double v = 0.0;
                if (p == 2) {
                    v = (k == kp) ? 1.0 : 0.0;
                } else if (n > 0.0) {
                    const double yk = du(j, k) / n, ykp = du(j, kp) / n;
                    v = std::pow(n, p - 2) * ((k == kp ? 1.0 : 0.0) + (p - 2.0) * yk * ykp);
                }
                c(j) = W(j) * v;
            }
            const Eigen::MatrixXd block = p * K1 * (Dint.transpose() * c.asDiagonal() * Dint);
            for (Index i = 0; i < n_int; ++i)
                for (Index l = 0; l < n_int; ++l) {
                    H(i * N + k, l * N + kp) += block(i, l);
                    if (kp != k) H(i * N + kp, l * N + k) += block(l, i);
                }
        }
    }

    // Potential term and -λ ∇²F̄ per node (central differences of ∇F̄).
    const double lam = lambda_.value();
    std::vector<double> x(static_cast<std::size_t>(N)), gp(x.size()), gm(x.size());
    for (Index i = 0; i < n_int; ++i) {
        const std::size_t node = static_cast<std::size_t>(i + 1);
        const Eigen::RowVectorXd ui = u.values().row(i + 1);
        const Eigen::MatrixXd Pu = phi_jacobian(ui, p);
        const double r = ui.norm();
        const double t = grid.node(node);
        for (Index k = 0; k < N; ++k) {
            for (Index kp = 0; kp < N; ++kp) H(i * N + k, i * N + kp) += p * K1 * W(i + 1) * V(i + 1) * Pu(k, kp);
        }
        if (r == 0.0) continue;
        const double eps = 1e-6 * r;
        for (Index kp = 0; kp < N; ++kp) {
            for (Index k = 0; k < N; ++k) x[static_cast<std::size_t>(k)] = ui(k);
            x[static_cast<std::size_t>(kp)] = ui(kp) + eps;
            grad_f_bar(t, x, problem_.nl(), gp);
            x[static_cast<std::size_t>(kp)] = ui(kp) - eps;
            grad_f_bar(t, x, problem_.nl(), gm);
            for (Index k = 0; k < N; ++k)
                H(i * N + k, i * N + kp) -=
                    lam * W(i + 1) * (gp[static_cast<std::size_t>(k)] - gm[static_cast<std::size_t>(k)]) / (2.0 * eps);
        }
    }
    H = 0.5 * (H + H.transpose()).eval();
    // Chain rule to w = u/ν and normalization by a^{p-1}ν^p.
    return (nu_ * nu_ / scale_) * H;
}

Eigen::VectorXd interior_vector(const GridFunction& g) {
    const Index n_int = g.values().rows() - 2;
    const Index N = g.values().cols();
    Eigen::VectorXd v(n_int * N);
    for (Index i = 0; i < n_int; ++i)
        for (Index k = 0; k < N; ++k) v(i * N + k) = g.values()(i + 1, k);
    return v;
}

void add_interior(GridFunction& w, const Eigen::VectorXd& step, double tau) {
    const Index N = w.values().cols();
    const Index n_int = w.values().rows() - 2;
    for (Index i = 0; i < n_int; ++i)
        for (Index k = 0; k < N; ++k) w.values()(i + 1, k) += tau * step(i * N + k);
}

/// Sobolev preconditioner: the linear operator D^T W D + W V restricted to
/// interior nodes, shared by all components. Steepest descent in the nodal
/// metric stalls at the h^{-2α} stiffness of the fractional term.
class SobolevPreconditioner {
public:
    explicit SobolevPreconditioner(const Problem& problem) {
        const Index n_int = static_cast<Index>(problem.grid().intervals()) - 1;
        const auto& W = problem.grid().trapezoid_weights();
        const Eigen::MatrixXd Dint = problem.derivative().weights().middleCols(1, n_int);
        P_ = Dint.transpose() * W.asDiagonal() * Dint;
        for (Index i = 0; i < n_int; ++i) P_(i, i) += W(i + 1) * problem.potential_samples()(i + 1);
        llt_.compute(P_);
        h_ = problem.grid().step();
    }

    /// P^{-1} applied to the nodal gradient h·g.
    GridFunction direction(const GridFunction& g) const {
        const Index n_int = g.values().rows() - 2;
        GridFunction d = g;
        d.values().middleRows(1, n_int) = llt_.solve(Eigen::MatrixXd(h_ * g.values().middleRows(1, n_int)));
        return d;
    }

    /// ⟨a, b⟩_P over interior nodes.
    double inner(const GridFunction& a, const GridFunction& b) const {
        const Index n_int = a.values().rows() - 2;
        const Eigen::MatrixXd A = a.values().middleRows(1, n_int);
        return (A.transpose() * P_ * b.values().middleRows(1, n_int)).trace();
    }

private:
    Eigen::MatrixXd P_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
    double h_ = 0.0;
};

double v_distance(const GridFunction& a, const GridFunction& b, const Problem& problem) {
    return std::pow(v_norm_pow(a - b, problem), 1.0 / problem.p());
}

/// Mountain-pass path in scaled variables.
struct Path {
    std::vector<GridFunction> pts;
    std::vector<double> energy;

    std::size_t argmax() const {
        std::size_t best = 1;
        for (std::size_t j = 2; j + 1 < pts.size(); ++j)
            if (energy[j] > energy[best]) best = j;
        return best;
    }
};

/// Equal ‖·‖_V arc length between node 0 and the last movable node; the last
/// node (far endpoint) stays put.
void reparametrize(Path& path, const ScaledFunctional& J) {
    const std::size_t last = path.pts.size() - 2;
    std::vector<double> arc(last + 1, 0.0);
    for (std::size_t j = 1; j <= last; ++j)
        arc[j] = arc[j - 1] + v_distance(path.pts[j], path.pts[j - 1], J.problem());
    if (!(arc[last] > 0.0)) return;

    std::vector<GridFunction> fresh;
    fresh.reserve(path.pts.size());
    fresh.push_back(path.pts.front());
    std::size_t seg = 1;
    for (std::size_t j = 1; j < last; ++j) {
        const double target = arc[last] * static_cast<double>(j) / static_cast<double>(last);
        while (seg < last && arc[seg] < target) ++seg;
        const double len = arc[seg] - arc[seg - 1];
        const double theta = len > 0.0 ? (target - arc[seg - 1]) / len : 0.0;
        fresh.push_back((1.0 - theta) * path.pts[seg - 1] + theta * path.pts[seg]);
    }
    fresh.push_back(path.pts[last]);
    fresh.push_back(path.pts.back());
    path.pts = std::move(fresh);
    for (std::size_t j = 1; j < last; ++j) path.energy[j] = J.value(path.pts[j]);
}

/// The maximizer of t ↦ J(t w) over t > 0, located as the sign change of the
/// radial derivative ⟨J'(t w), w⟩ (Illinois regula falsi on a geometric bracket).
struct RayPoint {
    GridFunction w;
    GridFunction g;
    double energy;
};

RayPoint ray_maximize(const ScaledFunctional& J, const GridFunction& w) {
    auto radial = [&](double t) { return grid_pairing(J.gradient(t * w), w); };
    double lo = 1.0, hi = 1.0;
    double flo = radial(1.0), fhi = flo;
    for (int k = 0; k < 400 && flo > 0.0 && fhi > 0.0; ++k) {
        lo = hi;
        flo = fhi;
        hi *= 1.25;
        fhi = radial(hi);
    }
    for (int k = 0; k < 400 && flo < 0.0 && fhi < 0.0; ++k) {
        hi = lo;
        fhi = flo;
        lo *= 0.8;
        flo = radial(lo);
    }
    if (!(flo >= 0.0 && fhi <= 0.0)) throw DegenerateCollapse("no energy maximum along the ray through the iterate");

    double t = flo == 0.0 ? lo : hi;
    int side = 0;
    for (int k = 0; k < 100 && flo != 0.0 && fhi != 0.0 && hi - lo > 1e-15 * hi; ++k) {
        t = (lo * fhi - hi * flo) / (fhi - flo);
        const double ft = radial(t);
        if (ft == 0.0) break;
        if (ft > 0.0) {
            lo = t;
            flo = ft;
            if (side == 1) fhi *= 0.5;
            side = 1;
        } else {
            hi = t;
            fhi = ft;
            if (side == -1) flo *= 0.5;
            side = -1;
        }
    }
    GridFunction wt = t * w;
    GridFunction g = J.gradient(wt);
    const double e = J.value(wt);
    return {std::move(wt), std::move(g), e};
}

struct NewtonOutcome {
    GridFunction w;
    double residual;
    std::size_t iterations;
    int morse_index;
};

NewtonOutcome newton_refine(const ScaledFunctional& J, GridFunction w, double tol, std::size_t max_iters) {
    const double h = J.problem().grid().step();
    GridFunction g = J.gradient(w);
    double r = J.residual(g);
    int morse = -1;
    std::size_t it = 0;
    // The Hessian is also factored at the accepted point so the Morse index
    // describes the returned iterate.
    for (;; ++it) {
        const Eigen::MatrixXd H = J.hessian(w);
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(H);
        const Eigen::VectorXd& ev = eig.eigenvalues();
        const double cutoff = 1e-10 * ev.cwiseAbs().maxCoeff();
        morse = static_cast<int>((ev.array() < -cutoff).count());
        if (r <= tol || it >= max_iters) break;

        // Pseudo-inverse: rotating u within R^N is an exact symmetry, so H has a
        // null direction whenever N > 1.
        const Eigen::VectorXd coeff = eig.eigenvectors().transpose() * (h * interior_vector(g));
        Eigen::VectorXd scaled = Eigen::VectorXd::Zero(ev.size());
        for (Index k = 0; k < ev.size(); ++k)
            if (std::abs(ev(k)) > cutoff) scaled(k) = coeff(k) / ev(k);
        const Eigen::VectorXd step = -(eig.eigenvectors() * scaled);

        bool accepted = false;
        for (double tau = 1.0; tau >= 1.0 / 1024.0; tau *= 0.5) {
            GridFunction trial = w;
            add_interior(trial, step, tau);
            GridFunction gt = J.gradient(trial);
            const double rt = J.residual(gt);
            if (rt < r) {
                w = std::move(trial);
                g = std::move(gt);
                r = rt;
                accepted = true;
                break;
            }
        }
        if (!accepted) break;
    }
    return {std::move(w), r, it, morse};
}

double ray_energy(const Problem& problem, const GridFunction& endpoint, Lambda lambda, double s) {
    return energy(s * endpoint, problem, lambda).total;
}

} // namespace

InitialPath initial_path(const Problem& problem, const ConstantsReport& constants, Lambda lambda,
                         std::size_t path_points) {
    if (path_points < 16) throw DomainError("initial_path: need at least 16 path points");
    const double delta = problem.nl().constants().delta;
    const GridFunction endpoint = (delta / constants.G0.to_double()) * sine_test_element(problem);

    InitialPath out;
    out.endpoint_energy = ray_energy(problem, endpoint, lambda, 1.0);
    if (!(out.endpoint_energy < 0.0)) {
        std::ostringstream os;
        os << "mountain-pass geometry not verified: energy at (delta/G0)e is " << out.endpoint_energy
           << " >= 0 for log10(lambda) = " << lambda.log10();
        throw GeometryNotVerified(os.str(), out.endpoint_energy);
    }

    // Walk down the ray to a positive-energy point, then bisect (in log s) for the sign change.
    double hi = 1.0, lo = 0.5;
    while (ray_energy(problem, endpoint, lambda, lo) <= 0.0) {
        hi = lo;
        lo *= 0.5;
        if (lo < 1e-300) throw GeometryNotVerified("energy is non-positive along the whole ray", out.endpoint_energy);
    }
    for (int k = 0; k < 80; ++k) {
        const double mid = std::sqrt(lo * hi);
        (ray_energy(problem, endpoint, lambda, mid) > 0.0 ? lo : hi) = mid;
    }
    double s_cut = std::min(1.0, 1.25 * hi);
    if (!(ray_energy(problem, endpoint, lambda, s_cut) < 0.0)) s_cut = hi;

    const std::size_t movable = path_points - 1;
    for (std::size_t j = 0; j < movable; ++j) {
        out.s.push_back(s_cut * static_cast<double>(j) / static_cast<double>(movable - 1));
    }
    out.s.push_back(1.0);
    for (double s : out.s) out.points.push_back(s * endpoint);
    return out;
}

SolveResult solve(const Problem& problem, const ConstantsReport& constants, Lambda lambda,
                  const MountainPassConfig& cfg) {
    const double nu = nu_lambda(constants, problem.spec(), lambda);
    const double d = d_lambda(constants, problem.spec(), lambda);
    const ScaledFunctional J(problem, lambda, nu);
    const SobolevPreconditioner precond(problem);
    const int p = problem.p();
    auto vnorm = [&](const GridFunction& f) { return std::pow(v_norm_pow(f, problem), 1.0 / p); };

    InitialPath init = initial_path(problem, constants, lambda, cfg.path_points);
    Path path;
    for (auto& pt : init.points) {
        path.pts.push_back((1.0 / nu) * pt);
        path.energy.push_back(J.value(path.pts.back()));
    }
    path.energy.front() = 0.0;

    // Phase 1, path descent: pull the top node down along the preconditioned
    // gradient with the path tangent projected out (sliding along the path is
    // the reparametrization's job). Ends once the transverse residual has
    // dropped by kPathReduction or the ridge level stalls; the discrete path
    // localizes the pass but cannot resolve it below the node spacing.
    auto transverse = [&](std::size_t k, const GridFunction& g, GridFunction& dir) {
        dir = precond.direction(g);
        const GridFunction tangent = path.pts[k + 1] - path.pts[k - 1];
        const double tt = precond.inner(tangent, tangent);
        if (tt > 0.0) dir -= (grid_pairing(g, tangent) / tt) * tangent;
        return std::sqrt(std::max(grid_pairing(g, dir), 0.0));
    };

    double step = 1.0;
    std::size_t path_iters = 0;
    std::size_t top = path.argmax();
    GridFunction g = J.gradient(path.pts[top]);
    GridFunction dir = g;
    const double rt0 = transverse(top, g, dir);
    double rt = rt0;
    double stall_ref = path.energy[top];

    for (; path_iters < cfg.max_outer_iters && rt > kPathReduction * rt0; ++path_iters) {
        const double slope = grid_pairing(g, dir);
        const double e0 = path.energy[top];
        // A node may move by at most kMaxMove of its own V-norm per step; longer
        // steps can jump the ridge, and reparametrization would then spread the
        // whole path along that one segment.
        const double d_norm = vnorm(dir);
        double tau = 2.0 * step;
        if (d_norm > 0.0) tau = std::min(tau, kMaxMove * vnorm(path.pts[top]) / d_norm);
        bool moved = false;
        for (; tau > 1e-14; tau *= cfg.armijo_shrink) {
            GridFunction cand = path.pts[top] - tau * dir;
            const double ec = J.value(cand);
            if (ec <= e0 - cfg.armijo_c * tau * slope) {
                path.pts[top] = std::move(cand);
                path.energy[top] = ec;
                moved = true;
                break;
            }
        }
        if (!moved) break;
        step = tau;

        if ((path_iters + 1) % cfg.reparam_every == 0) reparametrize(path, J);
        top = path.argmax();
        if (vnorm(path.pts[top]) < 1e-3)
            throw DegenerateCollapse("path maximizer collapsed toward u = 0 (||u||_V < 1e-3 nu_lambda)");
        g = J.gradient(path.pts[top]);
        rt = transverse(top, g, dir);
        if ((path_iters + 1) % kStallWindow == 0) {
            if (stall_ref - path.energy[top] <= kStallTol * std::abs(stall_ref)) break;
            stall_ref = path.energy[top];
        }
    }
    const double path_max = path.energy[top];

    // Phase 2, ridge descent: the path through the top node is now the ray
    // 0 → t·w; keep w at the ray maximizer and step transversally to it.
    RayPoint ridge = ray_maximize(J, path.pts[top]);
    double r = J.residual(ridge.g);
    std::size_t ridge_iters = 0;
    step = 1.0;
    for (; ridge_iters < cfg.max_outer_iters && r > cfg.newton_switch_tol; ++ridge_iters) {
        GridFunction dvec = precond.direction(ridge.g);
        dvec -= (grid_pairing(ridge.g, ridge.w) / precond.inner(ridge.w, ridge.w)) * ridge.w;
        const double slope = grid_pairing(ridge.g, dvec);
        const double d_norm = vnorm(dvec);
        double tau = 2.0 * step;
        if (d_norm > 0.0) tau = std::min(tau, kMaxMove * vnorm(ridge.w) / d_norm);
        bool moved = false;
        for (; tau > 1e-14; tau *= cfg.armijo_shrink) {
            RayPoint cand = ray_maximize(J, ridge.w - tau * dvec);
            if (cand.energy <= ridge.energy - cfg.armijo_c * tau * slope) {
                ridge = std::move(cand);
                moved = true;
                break;
            }
        }
        if (!moved) {
            // Close to the pass the Armijo decrease drops below the rounding of
            // the energy; accept the previous step length if the residual falls.
            RayPoint cand = ray_maximize(J, ridge.w - step * dvec);
            if (!(J.residual(cand.g) < r)) break;
            ridge = std::move(cand);
            tau = step;
        }
        step = tau;
        r = J.residual(ridge.g);
    }

    // Phase 3: Newton polish (also yields the Morse index).
    NewtonOutcome polished = newton_refine(J, std::move(ridge.w), cfg.descent_tol, cfg.max_newton_iters);

    SolveResult out(J.physical(polished.w));
    const double scale = std::pow(problem.spec().a, p - 1) * std::pow(nu, p - 1);
    out.nu = nu;
    out.d = d;
    out.iterations = path_iters + ridge_iters;
    out.newton_iterations = polished.iterations;
    out.morse_index = polished.morse_index;
    out.residual = polished.residual;
    out.residual_abs = polished.residual * scale;
    out.c_lambda = energy(out.u, problem, lambda).total;
    out.path_max = path_max * scale * nu;
    out.norms = norm_report(out.u, problem);
    out.bounds = check_bounds(out.norms, out.c_lambda, constants, problem.spec(), lambda, cfg.bound_slack);
    out.geometry_ok = out.bounds.geometry_ok;

    if (out.norms.v_norm < 1e-3 * nu)
        throw DegenerateCollapse("iteration converged to the trivial critical point");
    if (!(out.residual <= cfg.descent_tol)) {
        std::ostringstream os;
        os << "no convergence: relative residual " << out.residual << " > " << cfg.descent_tol << " after "
           << out.iterations << " descent and " << polished.iterations << " Newton iterations";
        throw MaxItersExceeded(os.str(), std::move(out));
    }
    return out;
}

std::vector<SweepEntry> sweep(const Problem& problem, const ConstantsReport& constants,
                              const std::vector<Lambda>& lambdas, const MountainPassConfig& cfg) {
    std::vector<SweepEntry> table;
    table.reserve(lambdas.size());
    for (Lambda lam : lambdas) {
        SweepEntry e;
        e.lambda = lam;
        try {
            e.result = solve(problem, constants, lam, cfg);
        } catch (const GeometryNotVerified& ex) {
            e.status = std::string("geometry: ") + ex.what();
        } catch (const MaxItersExceeded& ex) {
            e.status = std::string("convergence: ") + ex.what();
        } catch (const DegenerateCollapse& ex) {
            e.status = std::string("collapse: ") + ex.what();
        }
        table.push_back(std::move(e));
    }
    return table;
}

} // namespace kfrac
