#include "kfrac/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace kfrac {

namespace {

// value ≤ bound·(1 + slack); margin = (bound - value)/bound, computed from the
// log ratio so neither side has to fit in a double.
BoundCheck upper_check(const LogReal& value, const LogReal& bound, double slack, bool asserted) {
    BoundCheck c;
    c.asserted = asserted;
    c.value = value.to_double();
    c.bound = bound.to_double();
    const double ratio = value.is_zero() ? 0.0 : std::pow(10.0, value.log10_abs() - bound.log10_abs());
    c.margin = 1.0 - ratio;
    c.ok = ratio <= 1.0 + slack;
    return c;
}

} // namespace

bool BoundVerdicts::all_asserted_ok() const noexcept {
    for (const BoundCheck* c : {&v_norm_bound, &sup_half_delta, &sup_embedding, &sup_bound, &c_upper, &c_lower})
        if (c->asserted && !c->ok) return false;
    return geometry_ok && !trivial_solution;
}

BoundVerdicts check_bounds(const NormReport& norms, double c_lambda, const ConstantsReport& constants,
                           const ProblemSpec& spec, Lambda lambda, double slack) {
    const int p = spec.p;
    const LogReal lam = LogReal::from_log10(lambda.log10());
    const bool main_hyp = lam >= max(constants.Lambda1, constants.Lambda2);
    const LogReal v_bound = v_norm_pow_bound(constants, lambda);
    const LogReal v_norm = LogReal::from_double(norms.v_norm);
    const LogReal sup = LogReal::from_double(norms.sup_norm);

    BoundVerdicts v;
    v.v_norm_bound = upper_check(v_norm.pow(p), v_bound, slack, main_hyp);
    v.sup_half_delta = upper_check(sup, LogReal::from_double(spec.nl.constants().delta / 2.0), slack,
                                     lam > constants.Lambda3);
    v.sup_embedding = upper_check(sup, constants.sup_coeff * v_norm, slack, true);
    v.sup_bound = upper_check(sup, constants.sup_coeff * v_bound.pow(1.0 / p), slack, main_hyp);

    const BoundWithFlag upper = c_lambda_upper(constants, lambda);
    v.c_upper = upper_check(LogReal::from_double(c_lambda), upper.value, slack, upper.hypothesis_met);

    // Lower bound: margin is (value - bound)/bound so that positive still means "inside".
    const double d = d_lambda(constants, spec, lambda);
    v.c_lower.asserted = true;
    v.c_lower.value = c_lambda;
    v.c_lower.bound = d;
    v.c_lower.margin = d != 0.0 ? (c_lambda - d) / std::abs(d) : 0.0;
    v.c_lower.ok = d > 0.0 && c_lambda >= d * (1.0 - slack);

    v.trivial_solution = !(norms.v_norm > 0.0);
    v.geometry_ok = v.c_lower.ok && c_lambda > 0.0;
    return v;
}

bool GeometryVerdict::pass() const noexcept {
    return ring_ok && (!endpoint_asserted || endpoint == EndpointStatus::negative);
}

GeometryVerdict check_geometry(const Problem& problem, const ConstantsReport& constants, Lambda lambda,
                               std::size_t samples, std::uint64_t seed, double slack) {
    GeometryVerdict out;
    out.nu = nu_lambda(constants, problem.spec(), lambda);
    out.d = d_lambda(constants, problem.spec(), lambda);
    const int p = problem.p();
    const Grid& grid = problem.grid();
    const std::size_t N = problem.components();
    const double T = grid.length();

    // Random smooth elements: a few sine modes per component, amplitudes ~ 1/k.
    constexpr int kModes = 8;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal;
    out.ring_min_energy = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s < samples; ++s) {
        GridFunction u = problem.zero();
        for (std::size_t k = 0; k < N; ++k) {
            for (int mode = 1; mode <= kModes; ++mode) {
                const double c = normal(rng) / mode;
                for (std::size_t i = 1; i + 1 < grid.size(); ++i)
                    u(i, k) += c * std::sin(mode * std::numbers::pi * grid.node(i) / T);
            }
        }
        const double norm = std::pow(v_norm_pow(u, problem), 1.0 / p);
        if (!(norm > 0.0)) continue;
        u *= out.nu / norm;
        out.ring_min_energy = std::min(out.ring_min_energy, energy(u, problem, lambda).total);
    }
    out.ring_ok = out.d > 0.0 && out.ring_min_energy >= out.d * (1.0 - slack);

    const GridFunction w = (problem.nl().constants().delta / constants.G0.to_double()) * sine_test_element(problem);
    out.endpoint_energy = energy(w, problem, lambda).total;
    constexpr double kThresholdTol = 1e-9;  // in log10 λ
    const double gap = lambda.log10() - constants.Lambda1.log10_abs();
    out.endpoint_asserted = gap > kThresholdTol;
    if (std::abs(gap) <= kThresholdTol)
        out.endpoint = EndpointStatus::indeterminate;
    else
        out.endpoint = out.endpoint_energy < 0.0 ? EndpointStatus::negative : EndpointStatus::nonnegative;
    return out;
}

DecayVerdict check_decay(const std::vector<DecayRow>& rows, const ConstantsReport& constants, int p) {
    std::vector<DecayRow> ok;
    std::copy_if(rows.begin(), rows.end(), std::back_inserter(ok), [](const DecayRow& r) { return r.ok; });
    DecayVerdict v;
    if (ok.size() < 3 || ok.back().lambda_log10 - ok.front().lambda_log10 < 2.0) {
        v.status = DecayStatus::inconclusive;
        v.detail = "need at least 3 successful entries spanning 2 decades of lambda, have " +
                   std::to_string(ok.size());
        return v;
    }
    v.below_bound_line = true;
    std::ostringstream detail;
    for (const auto& r : ok) {
        const LogReal value = LogReal::from_double(r.v_norm).pow(p);
        const LogReal bound = v_norm_pow_bound(constants, Lambda::from_log10(r.lambda_log10));
        if (!(value < bound)) {
            v.below_bound_line = false;
            detail << "log10 lambda " << r.lambda_log10 << ": ||u||_V^p = " << value.to_string()
                   << " not below " << bound.to_string() << "; ";
        }
    }
    v.v_norm_decreased = ok.back().v_norm < ok.front().v_norm;
    v.sup_norm_decreased = ok.back().sup_norm < ok.front().sup_norm;
    if (!v.v_norm_decreased) detail << "V-norm did not decrease; ";
    if (!v.sup_norm_decreased) detail << "sup norm did not decrease; ";
    v.status = v.below_bound_line && v.v_norm_decreased && v.sup_norm_decreased ? DecayStatus::pass
                                                                                 : DecayStatus::fail;
    v.detail = detail.str();
    return v;
}

std::vector<DecayRow> decay_rows(const std::vector<SweepEntry>& entries) {
    std::vector<DecayRow> rows;
    rows.reserve(entries.size());
    for (const auto& e : entries) {
        DecayRow r;
        r.lambda_log10 = e.lambda.log10();
        r.ok = e.result.has_value();
        if (r.ok) {
            r.v_norm = e.result->norms.v_norm;
            r.sup_norm = e.result->norms.sup_norm;
        }
        rows.push_back(r);
    }
    return rows;
}

std::string to_string(DecayStatus s) {
    switch (s) {
    case DecayStatus::pass: return "pass";
    case DecayStatus::fail: return "fail";
    case DecayStatus::inconclusive: return "inconclusive";
    }
    return "unknown";
}

std::string to_string(EndpointStatus s) {
    switch (s) {
    case EndpointStatus::negative: return "negative";
    case EndpointStatus::nonnegative: return "nonnegative";
    case EndpointStatus::indeterminate: return "indeterminate";
    }
    return "unknown";
}

} // namespace kfrac
