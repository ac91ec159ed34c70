#pragma once

#include "kfrac/grid.hpp"

namespace kfrac {

class Problem;

struct NormReport {
    double lp_norm = 0.0;        ///< ‖u‖_{L^p}
    double frac_seminorm = 0.0;  ///< ‖₀D_t^α u‖_{L^p}
    double e_norm = 0.0;         ///< (‖D^α u‖^p + ‖u‖^p)^{1/p}
    double v_norm = 0.0;         ///< (‖D^α u‖^p + ∫V|u|^p)^{1/p}
    double sup_norm = 0.0;       ///< max_i |u(t_i)|
};

/// ∫_0^T |u(t)|^p dt by the composite trapezoid rule on Euclidean row norms.
double lp_integral(const GridFunction& u, double p);
/// Same, weighted: ∫_0^T V(t)|u(t)|^p dt with V sampled on u's grid.
double weighted_lp_integral(const GridFunction& u, const Eigen::VectorXd& V, double p);

NormReport norm_report(const GridFunction& u, const Problem& problem);

/// ‖u‖_V^p, the quantity the Kirchhoff coefficient is built from.
double v_norm_pow(const GridFunction& u, const Problem& problem);

struct EmbeddingVerdict {
    bool lp_bound = false;          ///< ‖u‖_{L^p} ≤ C_p ‖D^α u‖_{L^p}
    bool sup_bound = false;         ///< ‖u‖_∞ ≤ T^{α-1/p} / (Γ(α)(αq-q+1)^{1/q}) ‖D^α u‖_{L^p}
    bool norm_equivalence = false;  ///< min{1,V_∞}‖u‖^p ≤ ‖u‖_V^p ≤ max{1,V^∞}‖u‖^p

    bool all() const noexcept { return lp_bound && sup_bound && norm_equivalence; }
};

/// Absolute slack applied to every embedding inequality.
inline constexpr double kEmbeddingSlack = 1e-10;

EmbeddingVerdict check_embeddings(const GridFunction& u, const Problem& problem);

/// C_p = T^α / Γ(α+1).
double poincare_constant(double T, double alpha);
/// T^{α-1/p} / (Γ(α)(αq-q+1)^{1/q}), q = p/(p-1); requires α > 1/p.
double sup_embedding_constant(double T, double alpha, double p);

} // namespace kfrac
