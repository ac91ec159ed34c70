#pragma once

#include "kfrac/log_real.hpp"
#include "kfrac/problem.hpp"

#include <cstdint>
#include <string>

namespace kfrac {

/// n!! with 0!! = 1!! = 1.
std::uint64_t double_factorial(unsigned n);

/// ‖e‖_{L^p} of the sine test element, closed form (odd/even p branches).
LogReal compute_D(int p, double T);
/// Upper bound on ‖₀D_t^α e‖_{L^p}: (T^{p+1-pα} / (Γ(2-α)^p (p+1-pα)))^{1/p}.
LogReal compute_G(int p, double alpha, double T);
/// Sup-embedding constant times G; bounds ‖e‖_∞ via the fractional seminorm.
LogReal compute_G0(int p, double alpha, double T);

struct ConstantsReport {
    LogReal D, G, G0;
    LogReal C_star;
    LogReal Lambda1, Lambda1_ring, Lambda1_endpoint;  ///< Λ1 and its two branches
    LogReal Lambda2, Lambda3;
    LogReal lambda_star;
    int lambda_star_index = 2;  ///< which Λ_i attains λ*
    double theta = 0.0;
    /// ν_λ = nu_coeff · λ^{-1/(q2-p)}
    LogReal nu_coeff;
    /// p^2θ / (a^{p-1}(θ - p^2)) · C*, prefactor of the ‖u_λ‖_V^p bound
    LogReal bound_coeff;
    /// T^{α-1/p} / (Γ(α)(αq-q+1)^{1/q}), the sup-norm embedding constant
    LogReal sup_coeff;
    /// (p - 1)/(q1 - p), decay exponent of the c_λ and ‖u_λ‖_V^p bounds
    double decay_exponent = 0.0;
    double v_min = 0.0;
    double v_max = 0.0;
};

ConstantsReport compute_constants(const Problem& problem);

/// Only the C* factor of the critical-value upper estimate.
LogReal compute_C_star(const Problem& problem);

double nu_lambda(const ConstantsReport& c, const ProblemSpec& spec, Lambda lambda);
/// d_λ = (a^{p-1}/p^2)ν^p - λ(M2/V_∞) K^{q2-p} ν^{q2}, evaluated from that definition.
double d_lambda(const ConstantsReport& c, const ProblemSpec& spec, Lambda lambda);

struct BoundWithFlag {
    LogReal value;
    /// false when λ < max{Λ1, Λ2}: the estimate is then not guaranteed.
    bool hypothesis_met = true;
};

/// C* λ^{-(p-1)/(q1-p)}.
BoundWithFlag c_lambda_upper(const ConstantsReport& c, Lambda lambda);
/// bound_coeff · λ^{-(p-1)/(q1-p)}, the bound on ‖u_λ‖_V^p.
LogReal v_norm_pow_bound(const ConstantsReport& c, Lambda lambda);

} // namespace kfrac
