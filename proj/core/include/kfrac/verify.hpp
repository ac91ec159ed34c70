#pragma once

#include "kfrac/solver.hpp"
#include "kfrac/verdicts.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace kfrac {

inline constexpr double kDefaultBoundSlack = 0.05;

/// Compares a computed critical point with every checkable estimate. Depends only
/// on the norms, c_λ and the constants, so it can be replayed from a result file.
BoundVerdicts check_bounds(const NormReport& norms, double c_lambda, const ConstantsReport& constants,
                           const ProblemSpec& spec, Lambda lambda, double slack = kDefaultBoundSlack);

inline BoundVerdicts check_bounds(const SolveResult& result, const ConstantsReport& constants,
                                  const ProblemSpec& spec, Lambda lambda,
                                  double slack = kDefaultBoundSlack) {
    return check_bounds(result.norms, result.c_lambda, constants, spec, lambda, slack);
}

enum class EndpointStatus { negative, nonnegative, indeterminate };

struct GeometryVerdict {
    bool ring_ok = false;
    double ring_min_energy = 0.0;  ///< smallest Ī_λ over the sampled ring ‖u‖_V = ν_λ
    double d = 0.0;
    double nu = 0.0;
    double endpoint_energy = 0.0;
    EndpointStatus endpoint = EndpointStatus::indeterminate;
    bool endpoint_asserted = false;  ///< λ > Λ1 (strictly, beyond tolerance)

    bool pass() const noexcept;
};

/// Samples random band-limited functions on the ring ‖u‖_V = ν_λ (requiring
/// Ī_λ ≥ (1 - slack) d_λ) and evaluates the endpoint (δ/G0)e.
GeometryVerdict check_geometry(const Problem& problem, const ConstantsReport& constants, Lambda lambda,
                               std::size_t samples, std::uint64_t seed = 1,
                               double slack = kDefaultBoundSlack);

struct DecayRow {
    double lambda_log10 = 0.0;
    double v_norm = 0.0;
    double sup_norm = 0.0;
    bool ok = true;  ///< false for failed sweep entries (ignored)
};

enum class DecayStatus { pass, fail, inconclusive };

struct DecayVerdict {
    DecayStatus status = DecayStatus::inconclusive;
    bool below_bound_line = false;
    bool v_norm_decreased = false;
    bool sup_norm_decreased = false;
    std::string detail;
};

/// Needs ≥ 3 successful rows spanning ≥ 2 decades of λ; otherwise inconclusive.
DecayVerdict check_decay(const std::vector<DecayRow>& rows, const ConstantsReport& constants, int p);

std::vector<DecayRow> decay_rows(const std::vector<SweepEntry>& entries);

std::string to_string(DecayStatus s);
std::string to_string(EndpointStatus s);

} // namespace kfrac
