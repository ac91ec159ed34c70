#pragma once

#include <string>

namespace kfrac {

struct BoundCheck {
    bool ok = false;
    bool asserted = true;  ///< false: hypothesis of the estimate not met, value measured only
    double value = 0.0;
    double bound = 0.0;
    double margin = 0.0;   ///< (bound - value) / bound
};

struct BoundVerdicts {
    BoundCheck v_norm_bound;   ///< ‖u‖_V^p against p^2θ/(a^{p-1}(θ-p^2)) C* λ^{-(p-1)/(q1-p)}
    BoundCheck sup_half_delta; ///< ‖u‖_∞ against δ/2 (asserted for λ > Λ3)
    BoundCheck sup_embedding;  ///< ‖u‖_∞ against K ‖u‖_V (sup embedding)
    BoundCheck sup_bound;      ///< ‖u‖_∞ against K (V-norm bound)^{1/p}
    BoundCheck c_upper;        ///< c_λ against C* λ^{-(p-1)/(q1-p)} (asserted for λ ≥ max{Λ1,Λ2})
    BoundCheck c_lower;        ///< c_λ against d_λ
    bool geometry_ok = false;
    bool trivial_solution = false;
    std::string decay = "not-evaluated";

    /// Every asserted check passes and the solution is nontrivial.
    bool all_asserted_ok() const noexcept;
};

} // namespace kfrac
