#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace kfrac {

/// Declared constants of the local growth hypotheses on F.
struct GrowthConstants {
    double delta = 1.0;  ///< radius on which F is defined and C^1
    double q1 = 0.0;     ///< lower-growth exponent, q1 > p^2
    double q2 = 0.0;     ///< upper-growth exponent, p^2 < q2 < q1
    double M1 = 0.0;     ///< M1|x|^q1 ≤ F(t,x)
    double M2 = 0.0;     ///< F(t,x) ≤ M2|x|^q2
    double beta = 0.0;   ///< βF ≤ (∇F, x), β > p^2

    /// min{β, q2}
    double theta() const noexcept { return beta < q2 ? beta : q2; }
};

/// F(t, x) = (c0 + c1 t)|x|^r.
struct PowerFamily {
    double c0 = 1.0;
    double c1 = 0.0;
    double r = 2.0;
};

/// A nonlinearity F(t, x), x ∈ R^N, defined for |x| ≤ δ.
///
/// F is only ever evaluated inside its radius; the globally defined F̄ below is
/// what the functional uses. Arbitrary F enter through the two callables; their
/// declared constants are validated by check_growth, not trusted.
class Nonlinearity {
public:
    using EvalFn = std::function<double(double t, std::span<const double> x)>;
    using GradFn = std::function<void(double t, std::span<const double> x, std::span<double> out)>;

    Nonlinearity(EvalFn eval, GradFn grad, GrowthConstants constants);

    static Nonlinearity power(PowerFamily family, GrowthConstants constants);

    double eval(double t, std::span<const double> x) const { return eval_(t, x); }
    void grad(double t, std::span<const double> x, std::span<double> out) const { grad_(t, x, out); }

    const GrowthConstants& constants() const noexcept { return constants_; }
    double theta() const noexcept { return constants_.theta(); }
    /// Present when built from PowerFamily (used for serialization).
    const std::optional<PowerFamily>& power_family() const noexcept { return family_; }

private:
    EvalFn eval_;
    GradFn grad_;
    GrowthConstants constants_;
    std::optional<PowerFamily> family_;
};

/// Even C^1 cut-off: 1 on |s| ≤ δ/2, 0 on |s| ≥ δ, cubic Hermite blend between.
double cutoff_m(double s, double delta) noexcept;
double cutoff_m_prime(double s, double delta) noexcept;
/// max |m'| = 3/δ, attained at |s| = 3δ/4.
inline double cutoff_max_slope(double delta) noexcept { return 3.0 / delta; }

/// F̄(t,x) = m(|x|)F(t,x) + (1 - m(|x|)) M2 |x|^q2.
double f_bar(double t, std::span<const double> x, const Nonlinearity& nl);
void grad_f_bar(double t, std::span<const double> x, const Nonlinearity& nl, std::span<double> out);

struct ConditionCheck {
    std::string name;
    bool pass = true;
    double worst_violation = 0.0;  ///< largest (lhs - rhs) over failed samples, 0 if none
    std::string detail;            ///< which side failed, where
};

struct GrowthReport {
    ConditionCheck h1;        ///< M1|x|^q1 ≤ F ≤ M2|x|^q2 on |x| ≤ δ
    ConditionCheck h2;        ///< 0 ≤ βF ≤ (∇F, x) on |x| ≤ δ
    ConditionCheck h1_bar;    ///< 0 ≤ F̄ ≤ M2|x|^q2 on |x| ≤ 3δ
    ConditionCheck h2_bar;    ///< θF̄ ≤ (∇F̄, x) on 0 < |x| ≤ 3δ
    ConditionCheck constants; ///< q1 > q2, M1 ≤ M2 where forced

    bool all() const noexcept {
        return h1.pass && h2.pass && h1_bar.pass && h2_bar.pass && constants.pass;
    }
    std::vector<const ConditionCheck*> checks() const {
        return {&h1, &h2, &h1_bar, &h2_bar, &constants};
    }
};

/// Monte-Carlo plus boundary sampling of the growth conditions over t ∈ [0,T].
/// `dimension` is N; deterministic for a given seed.
GrowthReport check_growth(const Nonlinearity& nl, double T, std::size_t dimension,
                          std::size_t samples, std::uint64_t seed = 1);

} // namespace kfrac
