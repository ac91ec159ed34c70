#pragma once

#include "kfrac/grid.hpp"
#include "kfrac/problem.hpp"

namespace kfrac {

struct EnergyBreakdown {
    double kirchhoff_term = 0.0;  ///< (a + b‖u‖_V^p)^p / (b p^2)
    double potential_term = 0.0;  ///< λ ∫ F̄(t,u) dt (or F for the unmodified functional)
    double constant_shift = 0.0;  ///< a^p / (b p^2)
    /// kirchhoff_term - potential_term - constant_shift, evaluated without the
    /// cancellation between the first and last terms.
    double total = 0.0;

    double total_log10_abs() const noexcept;
};

enum class Functional { modified, original };

/// (a + b‖u‖_V^p)^{p-1}.
double kirchhoff_A(const GridFunction& u, const Problem& problem);

/// ((a + bS)^p - a^p) / (b p^2) without cancellation (binomial expansion in S).
double kirchhoff_increment(double S, double a, double b, int p) noexcept;

/// The functional at u. `Functional::original` uses F itself and throws
/// DomainError when ‖u‖_∞ > δ.
EnergyBreakdown energy(const GridFunction& u, const Problem& problem, Lambda lambda,
                       Functional which = Functional::modified);

/// Discrete gradient g with h Σ_i (g_i, v_i) = ⟨Ī'_λ(u), v⟩ for every v vanishing at
/// both ends; boundary rows of g are zero.
GridFunction energy_gradient(const GridFunction& u, const Problem& problem, Lambda lambda);

/// h^{1/q} (Σ_i |g_i|^q)^{1/q}, q = p/(p-1): the L^q norm of the nodal gradient.
double residual_norm(const GridFunction& g, const Problem& problem);

/// ⟨Ī'_λ(u), u⟩ from the closed form (a+b‖u‖_V^p)^{p-1}‖u‖_V^p - λ∫(∇F̄(t,u), u).
double pairing_with_self(const GridFunction& u, const Problem& problem, Lambda lambda);

/// Sum over interior nodes of h (g_i, v_i).
double grid_pairing(const GridFunction& g, const GridFunction& v);

} // namespace kfrac
