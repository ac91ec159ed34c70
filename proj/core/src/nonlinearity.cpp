#include "kfrac/nonlinearity.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace kfrac {

namespace {

double euclid(std::span<const double> x) noexcept {
    double s = 0.0;
    for (double v : x) s += v * v;
    return std::sqrt(s);
}

double dot(std::span<const double> a, std::span<const double> b) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

} // namespace

Nonlinearity::Nonlinearity(EvalFn eval, GradFn grad, GrowthConstants constants)
    : eval_(std::move(eval)), grad_(std::move(grad)), constants_(constants) {}

Nonlinearity Nonlinearity::power(PowerFamily f, GrowthConstants constants) {
    auto eval = [f](double t, std::span<const double> x) {
        return (f.c0 + f.c1 * t) * std::pow(euclid(x), f.r);
    };
    auto grad = [f](double t, std::span<const double> x, std::span<double> out) {
        const double n = euclid(x);
        const double s = n > 0.0 ? (f.c0 + f.c1 * t) * f.r * std::pow(n, f.r - 2.0) : 0.0;
        for (std::size_t k = 0; k < x.size(); ++k) out[k] = s * x[k];
    };
    Nonlinearity nl(std::move(eval), std::move(grad), constants);
    nl.family_ = f;
    return nl;
}

double cutoff_m(double s, double delta) noexcept {
    const double w = std::clamp(2.0 * std::abs(s) / delta - 1.0, 0.0, 1.0);
    return 1.0 - w * w * (3.0 - 2.0 * w);
}

double cutoff_m_prime(double s, double delta) noexcept {
    const double w = std::clamp(2.0 * std::abs(s) / delta - 1.0, 0.0, 1.0);
    const double dm_dw = -6.0 * w * (1.0 - w);
    return s >= 0.0 ? dm_dw * 2.0 / delta : -dm_dw * 2.0 / delta;
}

double f_bar(double t, std::span<const double> x, const Nonlinearity& nl) {
    const auto& c = nl.constants();
    const double n = euclid(x);
    if (n <= 0.5 * c.delta) return nl.eval(t, x);
    const double outer = c.M2 * std::pow(n, c.q2);
    if (n >= c.delta) return outer;
    const double m = cutoff_m(n, c.delta);
    return m * nl.eval(t, x) + (1.0 - m) * outer;
}

void grad_f_bar(double t, std::span<const double> x, const Nonlinearity& nl, std::span<double> out) {
    const auto& c = nl.constants();
    const double n = euclid(x);
    if (n == 0.0) {
        std::fill(out.begin(), out.end(), 0.0);
        return;
    }
    if (n <= 0.5 * c.delta) {
        nl.grad(t, x, out);
        return;
    }
    const double outer_scale = c.q2 * c.M2 * std::pow(n, c.q2 - 2.0);
    if (n >= c.delta) {
        for (std::size_t k = 0; k < x.size(); ++k) out[k] = outer_scale * x[k];
        return;
    }
    const double m = cutoff_m(n, c.delta);
    const double dm = cutoff_m_prime(n, c.delta);
    const double F = nl.eval(t, x);
    const double outer = c.M2 * std::pow(n, c.q2);
    nl.grad(t, x, out);
    const double radial = dm * (F - outer) / n;
    for (std::size_t k = 0; k < x.size(); ++k)
        out[k] = radial * x[k] + m * out[k] + (1.0 - m) * outer_scale * x[k];
}

namespace {

// lhs ≤ rhs up to round-off relative to the operands.
bool leq(double lhs, double rhs) noexcept {
    const double scale = std::max({std::abs(lhs), std::abs(rhs), 1e-300});
    return lhs <= rhs + 1e-12 * scale;
}

class Tracker {
public:
    explicit Tracker(ConditionCheck& c) : c_(c) {}

    void check(bool ok, double lhs, double rhs, const char* what, double t, double r) {
        if (ok) return;
        const double v = lhs - rhs;
        if (c_.pass || v > c_.worst_violation) {
            std::ostringstream os;
            os << what << " violated at |x| = " << r << ", t = " << t << " (lhs " << lhs << ", rhs " << rhs << ")";
            c_.detail = os.str();
            c_.worst_violation = v;
        }
        c_.pass = false;
    }

private:
    ConditionCheck& c_;
};

} // namespace

GrowthReport check_growth(const Nonlinearity& nl, double T, std::size_t dimension, std::size_t samples,
                          std::uint64_t seed) {
    const auto& c = nl.constants();
    GrowthReport rep;
    rep.h1.name = "(H1) growth";
    rep.h2.name = "(H2) superquadraticity";
    rep.h1_bar.name = "(H1)' modified growth";
    rep.h2_bar.name = "(H2)' modified superquadraticity";
    rep.constants.name = "declared constants";

    Tracker h1(rep.h1), h2(rep.h2), h1b(rep.h1_bar), h2b(rep.h2_bar), cons(rep.constants);

    cons.check(c.q1 > c.q2, c.q2, c.q1, "q2 < q1", 0.0, 0.0);
    // At |x| = δ, (H1) forces M1 δ^q1 ≤ M2 δ^q2.
    const double lo = c.M1 * std::pow(c.delta, c.q1), hi = c.M2 * std::pow(c.delta, c.q2);
    cons.check(leq(lo, hi), lo, hi, "M1 delta^q1 <= M2 delta^q2", 0.0, c.delta);

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> gauss(0.0, 1.0);
    std::vector<double> dir(dimension), x(dimension), g(dimension);

    auto random_direction = [&] {
        double n = 0.0;
        do {
            for (auto& d : dir) d = gauss(rng);
            n = euclid(dir);
        } while (n == 0.0);
        for (auto& d : dir) d /= n;
    };

    auto test_point = [&](double t, double r, bool local) {
        for (std::size_t k = 0; k < dimension; ++k) x[k] = r * dir[k];
        const double n = euclid(x);
        if (local && n <= c.delta) {
            const double F = nl.eval(t, x);
            nl.grad(t, x, g);
            const double lower = c.M1 * std::pow(n, c.q1), upper = c.M2 * std::pow(n, c.q2);
            h1.check(leq(lower, F), lower, F, "lower bound M1|x|^q1 <= F", t, n);
            h1.check(leq(F, upper), F, upper, "upper bound F <= M2|x|^q2", t, n);
            const double bF = c.beta * F, gx = dot(g, x);
            h2.check(leq(0.0, bF), 0.0, bF, "0 <= beta F", t, n);
            h2.check(leq(bF, gx), bF, gx, "beta F <= (grad F, x)", t, n);
        }
        const double Fb = f_bar(t, x, nl);
        const double upper = c.M2 * std::pow(n, c.q2);
        h1b.check(leq(0.0, Fb), 0.0, Fb, "0 <= Fbar", t, n);
        h1b.check(leq(Fb, upper), Fb, upper, "Fbar <= M2|x|^q2", t, n);
        if (n > 0.0) {
            grad_f_bar(t, x, nl, g);
            const double lhs = nl.theta() * Fb, rhs = dot(g, x);
            h2b.check(leq(lhs, rhs), lhs, rhs, "theta Fbar <= (grad Fbar, x)", t, n);
        }
    };

    // Boundary radii and times first, then uniform and log-uniform interior samples.
    const double special_r[] = {0.0, 0.25 * c.delta, 0.5 * c.delta, 0.75 * c.delta, c.delta,
                                2.0 * c.delta, 3.0 * c.delta};
    for (double t : {0.0, T}) {
        random_direction();
        for (double r : special_r) test_point(t, r, true);
    }
    for (std::size_t s = 0; s < samples; ++s) {
        const double t = T * unit(rng);
        random_direction();
        const double r_local = (s % 2 == 0) ? c.delta * unit(rng) : c.delta * std::pow(10.0, -6.0 * unit(rng));
        test_point(t, r_local, true);
        test_point(t, 3.0 * c.delta * unit(rng), false);
    }
    return rep;
}

} // namespace kfrac
