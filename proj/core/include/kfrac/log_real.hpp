#pragma once

#include <compare>
#include <string>

namespace kfrac {

/// A real number stored as sign and log10|x|, for constants far outside the double range.
class LogReal {
public:
    enum class Sign { negative = -1, zero = 0, positive = 1 };

    constexpr LogReal() noexcept = default;
    static LogReal from_double(double x);
    static LogReal from_log10(double log10_abs, Sign sign = Sign::positive);

    Sign sign() const noexcept { return sign_; }
    /// log10|x|; -inf for zero.
    double log10_abs() const noexcept;
    bool is_zero() const noexcept { return sign_ == Sign::zero; }
    bool is_positive() const noexcept { return sign_ == Sign::positive; }

    /// Overflows to ±inf and underflows to 0 outside the double range.
    double to_double() const noexcept;

    /// Decimal with exponent, e.g. "2.10600e+54"; exact at any magnitude.
    std::string to_string(int significant = 6) const;

    LogReal pow(double exponent) const;
    LogReal operator-() const noexcept;

    friend LogReal operator*(const LogReal& a, const LogReal& b) noexcept;
    friend LogReal operator/(const LogReal& a, const LogReal& b);
    friend LogReal operator+(const LogReal& a, const LogReal& b) noexcept;
    friend LogReal operator-(const LogReal& a, const LogReal& b) noexcept { return a + (-b); }

    friend std::partial_ordering operator<=>(const LogReal& a, const LogReal& b) noexcept;
    friend bool operator==(const LogReal& a, const LogReal& b) noexcept {
        return (a <=> b) == std::partial_ordering::equivalent;
    }

private:
    constexpr LogReal(Sign s, double l) noexcept : sign_(s), log10_(l) {}

    Sign sign_ = Sign::zero;
    double log10_ = 0.0;
};

LogReal max(const LogReal& a, const LogReal& b) noexcept;

} // namespace kfrac
