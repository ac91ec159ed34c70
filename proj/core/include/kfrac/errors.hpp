#pragma once

#include <stdexcept>
#include <string>

namespace kfrac {

/// Argument outside the mathematical domain of an operation (Γ(z ≤ 0), α ∉ (0,1], ...).
class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Grid or component-count mismatch between operands.
class DimensionError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// A problem specification violates a standing hypothesis. `hypothesis()` names it,
/// e.g. "(H1) requires q2 in (p^2, q1)".
class InvalidSpecError : public std::invalid_argument {
public:
    InvalidSpecError(std::string hypothesis, const std::string& detail)
        : std::invalid_argument(hypothesis + ": " + detail), hypothesis_(std::move(hypothesis)) {}

    const std::string& hypothesis() const noexcept { return hypothesis_; }

private:
    std::string hypothesis_;
};

/// Malformed spec/result file. `key()` is the offending JSON key path ("" when unknown).
class ParseError : public std::runtime_error {
public:
    ParseError(std::string key, const std::string& what)
        : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

    const std::string& key() const noexcept { return key_; }

private:
    std::string key_;
};

} // namespace kfrac
