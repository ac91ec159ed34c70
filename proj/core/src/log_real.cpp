#include "kfrac/log_real.hpp"

#include "kfrac/errors.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>

namespace kfrac {

LogReal LogReal::from_double(double x) {
    if (!std::isfinite(x)) throw DomainError("LogReal: non-finite value");
    if (x == 0.0) return {};
    return {x > 0 ? Sign::positive : Sign::negative, std::log10(std::abs(x))};
}

LogReal LogReal::from_log10(double l, Sign sign) {
    if (std::isnan(l)) throw DomainError("LogReal: NaN exponent");
    if (sign == Sign::zero || l == -std::numeric_limits<double>::infinity()) return {};
    return {sign, l};
}

double LogReal::log10_abs() const noexcept {
    return sign_ == Sign::zero ? -std::numeric_limits<double>::infinity() : log10_;
}

double LogReal::to_double() const noexcept {
    if (sign_ == Sign::zero) return 0.0;
    const double mag = std::pow(10.0, log10_);
    return sign_ == Sign::positive ? mag : -mag;
}

std::string LogReal::to_string(int significant) const {
    if (sign_ == Sign::zero) return "0";
    double e = std::floor(log10_);
    double mant = std::pow(10.0, log10_ - e);
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", significant - 1, mant);
    if (std::atof(buf) >= 10.0) {
        e += 1.0;
        mant /= 10.0;
        std::snprintf(buf, sizeof buf, "%.*f", significant - 1, mant);
    }
    char out[96];
    std::snprintf(out, sizeof out, "%s%se%+03.0f", sign_ == Sign::negative ? "-" : "", buf, e);
    return out;
}

LogReal LogReal::pow(double exponent) const {
    if (sign_ == Sign::zero) {
        if (exponent <= 0.0) throw DomainError("LogReal: 0 raised to a non-positive power");
        return {};
    }
    if (sign_ == Sign::negative) throw DomainError("LogReal: negative base in real power");
    return {Sign::positive, log10_ * exponent};
}

LogReal LogReal::operator-() const noexcept {
    if (sign_ == Sign::zero) return *this;
    return {sign_ == Sign::positive ? Sign::negative : Sign::positive, log10_};
}

LogReal operator*(const LogReal& a, const LogReal& b) noexcept {
    if (a.is_zero() || b.is_zero()) return {};
    const auto s = static_cast<int>(a.sign_) * static_cast<int>(b.sign_);
    return {s > 0 ? LogReal::Sign::positive : LogReal::Sign::negative, a.log10_ + b.log10_};
}

LogReal operator/(const LogReal& a, const LogReal& b) {
    if (b.is_zero()) throw DomainError("LogReal: division by zero");
    if (a.is_zero()) return {};
    const auto s = static_cast<int>(a.sign_) * static_cast<int>(b.sign_);
    return {s > 0 ? LogReal::Sign::positive : LogReal::Sign::negative, a.log10_ - b.log10_};
}

LogReal operator+(const LogReal& a, const LogReal& b) noexcept {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    const bool a_big = a.log10_ >= b.log10_;
    const LogReal& big = a_big ? a : b;
    const LogReal& small = a_big ? b : a;
    const double ratio = std::pow(10.0, small.log10_ - big.log10_);
    if (big.sign_ == small.sign_) return {big.sign_, big.log10_ + std::log1p(ratio) / std::log(10.0)};
    if (ratio == 1.0) return {};
    return {big.sign_, big.log10_ + std::log1p(-ratio) / std::log(10.0)};
}

std::partial_ordering operator<=>(const LogReal& a, const LogReal& b) noexcept {
    const int sa = static_cast<int>(a.sign_), sb = static_cast<int>(b.sign_);
    if (sa != sb) return sa <=> sb;
    if (sa == 0) return std::partial_ordering::equivalent;
    return sa > 0 ? (a.log10_ <=> b.log10_) : (b.log10_ <=> a.log10_);
}

LogReal max(const LogReal& a, const LogReal& b) noexcept { return a < b ? b : a; }

} // namespace kfrac
