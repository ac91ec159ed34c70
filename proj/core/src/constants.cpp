#include "kfrac/constants.hpp"

#include "kfrac/errors.hpp"
#include "kfrac/gamma.hpp"
#include "kfrac/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace kfrac {

namespace {

LogReal L(double x) { return LogReal::from_double(x); }

// (p-1)!!/p!! as a product of ratios, free of overflow for large p.
double double_factorial_ratio(int p) {
    double r = 1.0;
    for (int k = p; k >= 2; k -= 2) r *= static_cast<double>(k - 1) / k;
    return r;
}

struct Shared {
    double p, alpha, T, a, b, q1, q2, M1, M2, delta, theta;
    double v_min, v_max;
    LogReal D, G, G0, K;
};

Shared shared(const Problem& problem) {
    const auto& s = problem.spec();
    const auto& c = s.nl.constants();
    Shared x{};
    x.p = s.p;
    x.alpha = s.alpha;
    x.T = s.T;
    x.a = s.a;
    x.b = s.b;
    x.q1 = c.q1;
    x.q2 = c.q2;
    x.M1 = c.M1;
    x.M2 = c.M2;
    x.delta = c.delta;
    x.theta = c.theta();
    x.v_min = problem.v_min();
    x.v_max = problem.v_max();
    x.D = compute_D(s.p, s.T);
    x.G = compute_G(s.p, s.alpha, s.T);
    x.K = L(sup_embedding_constant(s.T, s.alpha, s.p));
    x.G0 = x.K * x.G;
    return x;
}

LogReal c_star(const Shared& x) {
    const double e1 = x.p / (x.q1 - x.p), e2 = x.q1 / (x.q1 - x.p);
    const double first = 1.0 / (x.p * std::pow(x.M1 * x.q1, e1)) - x.M1 / std::pow(x.M1 * x.q1, e2);
    if (!(first > 0.0)) throw std::logic_error("C*: first factor must be positive when q1 > p");
    const LogReal Dp_Gp = x.D.pow(x.p) + x.G.pow(x.p);
    const LogReal ratio = L(std::max(1.0, x.v_max)).pow(1.0 / x.p) * Dp_Gp.pow(1.0 / x.p) /
                          (L(x.T).pow(1.0 / x.q1 - 1.0 / x.p) * x.D);
    return L(first) * ratio.pow(x.p * x.q1 / (x.q1 - x.p));
}

} // namespace

std::uint64_t double_factorial(unsigned n) {
    std::uint64_t r = 1;
    for (unsigned k = n; k >= 2; k -= 2) r *= k;
    return r;
}

LogReal compute_D(int p, double T) {
    if (p < 2) throw DomainError("compute_D: p >= 2 required");
    const double pi = std::numbers::pi;
    const double ratio = double_factorial_ratio(p);
    const LogReal inner = p % 2 == 1 ? L(T).pow(p + 1) / L(pi).pow(p + 1) * L(2.0 * ratio)
                                     : L(T).pow(p + 1) / L(pi).pow(p) * L(ratio);
    return inner.pow(1.0 / p);
}

LogReal compute_G(int p, double alpha, double T) {
    if (p < 2 || !(alpha > 1.0 / p && alpha <= 1.0)) throw DomainError("compute_G: need p >= 2, 1/p < alpha <= 1");
    const double expo = p + 1.0 - p * alpha;
    const LogReal inner = L(T).pow(expo) / (L(gamma_fn(2.0 - alpha)).pow(p) * L(expo));
    return inner.pow(1.0 / p);
}

LogReal compute_G0(int p, double alpha, double T) {
    return L(sup_embedding_constant(T, alpha, p)) * compute_G(p, alpha, T);
}

LogReal compute_C_star(const Problem& problem) { return c_star(shared(problem)); }

ConstantsReport compute_constants(const Problem& problem) {
    const Shared x = shared(problem);
    const double p = x.p, p2 = p * p;
    if (!(x.theta > p2))
        throw InvalidSpecError("theta = min{beta, q2} > p^2", "theta = " + std::to_string(x.theta));

    ConstantsReport r;
    r.D = x.D;
    r.G = x.G;
    r.G0 = x.G0;
    r.theta = x.theta;
    r.v_min = x.v_min;
    r.v_max = x.v_max;
    r.sup_coeff = x.K;
    r.C_star = c_star(x);
    r.decay_exponent = (p - 1.0) / (x.q1 - p);

    const LogReal a = L(x.a), b = L(x.b), delta = L(x.delta), T = L(x.T);
    const LogReal Dp_Gp = x.D.pow(p) + x.G.pow(p);
    const double e = x.q2 - p;

    // Γ(α)(αq-q+1)^{1/q} G0 = T^{α-1/p} G.
    const LogReal kernel_G0 = T.pow(x.alpha - 1.0 / p) / x.K * x.G0;
    r.Lambda1_ring = L(x.v_min) * a.pow(p - 1) * kernel_G0.pow(e) /
                     (L(2.0 * p2 * x.M2) * T.pow((x.alpha - 1.0 / p) * e) *
                      (delta * L(std::min(1.0, x.v_min)) * x.D).pow(e));
    const LogReal endpoint_norm = b * delta.pow(p) / x.G0.pow(p) * L(std::max(1.0, x.v_max)) * Dp_Gp;
    r.Lambda1_endpoint = (a + endpoint_norm).pow(p) / (b * L(p2)) /
                         (L(x.M1) * delta.pow(x.q1) / x.G0.pow(x.q1) * T.pow(1.0 - x.q1 / p) * x.D.pow(x.q1));
    r.Lambda1 = max(r.Lambda1_ring, r.Lambda1_endpoint);

    r.Lambda2 = (a + b * L(std::max(1.0, x.v_max)).pow(p) * delta.pow(p) / x.G0.pow(p) * Dp_Gp)
                    .pow(x.q1 * (p - 1.0));

    r.bound_coeff = L(p2 * x.theta) / (a.pow(p - 1) * L(x.theta - p2)) * r.C_star;
    r.Lambda3 = (x.K.pow(p) * r.bound_coeff * L(2.0).pow(p) / delta.pow(p)).pow((x.q1 - p) / (p - 1.0));

    r.lambda_star = r.Lambda2;
    r.lambda_star_index = 2;
    if (r.Lambda1 > r.lambda_star) {
        r.lambda_star = r.Lambda1;
        r.lambda_star_index = 1;
    }
    if (r.Lambda3 > r.lambda_star) {
        r.lambda_star = r.Lambda3;
        r.lambda_star_index = 3;
    }

    r.nu_coeff = (a.pow(p - 1) * L(x.v_min) / (L(2.0 * p2 * x.M2) * x.K.pow(e))).pow(1.0 / e);
    return r;
}

double nu_lambda(const ConstantsReport& c, const ProblemSpec& spec, Lambda lambda) {
    const double e = spec.nl.constants().q2 - spec.p;
    return (c.nu_coeff * LogReal::from_log10(-lambda.log10() / e)).to_double();
}

double d_lambda(const ConstantsReport& c, const ProblemSpec& spec, Lambda lambda) {
    const auto& k = spec.nl.constants();
    const double p = spec.p;
    const LogReal nu = c.nu_coeff * LogReal::from_log10(-lambda.log10() / (k.q2 - p));
    const LogReal first = L(std::pow(spec.a, p - 1) / (p * p)) * nu.pow(p);
    const LogReal second = LogReal::from_log10(lambda.log10()) * L(k.M2 / c.v_min) * c.sup_coeff.pow(k.q2 - p) *
                           nu.pow(k.q2);
    return (first - second).to_double();
}

BoundWithFlag c_lambda_upper(const ConstantsReport& c, Lambda lambda) {
    BoundWithFlag out;
    out.value = c.C_star * LogReal::from_log10(-c.decay_exponent * lambda.log10());
    out.hypothesis_met = LogReal::from_log10(lambda.log10()) >= max(c.Lambda1, c.Lambda2);
    return out;
}

LogReal v_norm_pow_bound(const ConstantsReport& c, Lambda lambda) {
    return c.bound_coeff * LogReal::from_log10(-c.decay_exponent * lambda.log10());
}

} // namespace kfrac
