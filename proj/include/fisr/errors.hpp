#pragma once

#include <stdexcept>
#include <string>

namespace fisr {

/// Input lies outside the positive-normal single-precision domain, or a
/// magic constant violates the seed model's preconditions.
class DomainError : public std::domain_error {
public:
    explicit DomainError(const std::string& what) : std::domain_error(what) {}
};

/// A result would leave the single-precision normal range.
class RangeError : public std::range_error {
public:
    explicit RangeError(const std::string& what) : std::range_error(what) {}
};

/// Bracketing root-finder failure (no sign change, iteration cap).
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace fisr
