#include "kfrac/spaces.hpp"

#include "kfrac/errors.hpp"
#include "kfrac/gamma.hpp"
#include "kfrac/problem.hpp"

#include <algorithm>
#include <cmath>

namespace kfrac {

double lp_integral(const GridFunction& u, double p) {
    const Eigen::VectorXd r = u.row_norms();
    return u.grid().trapezoid_weights().dot(r.array().pow(p).matrix());
}

double weighted_lp_integral(const GridFunction& u, const Eigen::VectorXd& V, double p) {
    if (V.size() != u.values().rows()) throw DimensionError("weighted_lp_integral: potential length");
    const Eigen::VectorXd r = u.row_norms();
    return u.grid().trapezoid_weights().dot((V.array() * r.array().pow(p)).matrix());
}

namespace {

struct Pieces {
    double deriv_pow = 0.0;  // ∫|D^α u|^p
    double lp_pow = 0.0;     // ∫|u|^p
    double v_pow = 0.0;      // ∫V|u|^p
    double sup = 0.0;
};

Pieces pieces(const GridFunction& u, const Problem& problem) {
    require_same_grid(u.grid(), problem.grid(), "norm_report");
    if (u.components() != problem.components()) throw DimensionError("norm_report: component count");
    const double p = problem.p();
    const GridFunction du = apply(problem.derivative(), u);
    Pieces out;
    out.deriv_pow = lp_integral(du, p);
    out.lp_pow = lp_integral(u, p);
    out.v_pow = weighted_lp_integral(u, problem.potential_samples(), p);
    out.sup = u.row_norms().maxCoeff();
    return out;
}

} // namespace

NormReport norm_report(const GridFunction& u, const Problem& problem) {
    const Pieces s = pieces(u, problem);
    const double inv_p = 1.0 / problem.p();
    NormReport r;
    r.lp_norm = std::pow(s.lp_pow, inv_p);
    r.frac_seminorm = std::pow(s.deriv_pow, inv_p);
    r.e_norm = std::pow(s.deriv_pow + s.lp_pow, inv_p);
    r.v_norm = std::pow(s.deriv_pow + s.v_pow, inv_p);
    r.sup_norm = s.sup;
    return r;
}

double v_norm_pow(const GridFunction& u, const Problem& problem) {
    const Pieces s = pieces(u, problem);
    return s.deriv_pow + s.v_pow;
}

double poincare_constant(double T, double alpha) { return std::pow(T, alpha) / gamma_fn(alpha + 1.0); }

double sup_embedding_constant(double T, double alpha, double p) {
    if (!(alpha > 1.0 / p)) throw DomainError("sup embedding needs alpha > 1/p");
    const double q = p / (p - 1.0);
    return std::pow(T, alpha - 1.0 / p) / (gamma_fn(alpha) * std::pow(alpha * q - q + 1.0, 1.0 / q));
}

EmbeddingVerdict check_embeddings(const GridFunction& u, const Problem& problem) {
    const auto& spec = problem.spec();
    const double p = spec.p;
    const Pieces s = pieces(u, problem);
    const double seminorm = std::pow(s.deriv_pow, 1.0 / p);

    EmbeddingVerdict v;
    v.lp_bound = std::pow(s.lp_pow, 1.0 / p) <= poincare_constant(spec.T, spec.alpha) * seminorm + kEmbeddingSlack;
    v.sup_bound = s.sup <= sup_embedding_constant(spec.T, spec.alpha, p) * seminorm + kEmbeddingSlack;

    const double e_pow = s.deriv_pow + s.lp_pow;
    const double v_pow = s.deriv_pow + s.v_pow;
    v.norm_equivalence = std::min(1.0, problem.v_min()) * e_pow <= v_pow + kEmbeddingSlack &&
                         v_pow <= std::max(1.0, problem.v_max()) * e_pow + kEmbeddingSlack;
    return v;
}

} // namespace kfrac
