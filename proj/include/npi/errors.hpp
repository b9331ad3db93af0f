#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace npi {

/// Base for every error raised by the library. Anything derived from this
/// except BudgetExceeded is an input/validation problem.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "Error"; }
};

class ValidationError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "ValidationError"; }
};

/// Duplicate observation under the reject tie policy, or an epsilon that
/// cannot separate the tied values.
class TieError : public ValidationError {
public:
    using ValidationError::ValidationError;
    const char* kind() const noexcept override { return "TieError"; }
};

class EmptyInput : public ValidationError {
public:
    using ValidationError::ValidationError;
    const char* kind() const noexcept override { return "EmptyInput"; }
};

class EmptyGroup : public ValidationError {
public:
    using ValidationError::ValidationError;
    const char* kind() const noexcept override { return "EmptyGroup"; }
};

class IndexError : public ValidationError {
public:
    using ValidationError::ValidationError;
    const char* kind() const noexcept override { return "IndexError"; }
};

class ArityError : public ValidationError {
public:
    using ValidationError::ValidationError;
    const char* kind() const noexcept override { return "ArityError"; }
};

class ShapeError : public ValidationError {
public:
    using ValidationError::ValidationError;
    const char* kind() const noexcept override { return "ShapeError"; }
};

/// The requested enumeration is larger than the caller's budget. The size
/// that was refused is carried so callers can fall back to heuristics.
class BudgetExceeded : public Error {
public:
    BudgetExceeded(std::uint64_t estimate, std::uint64_t budget, bool saturated = false)
        : Error(make_message(estimate, budget, saturated)),
          estimate_(estimate),
          budget_(budget),
          saturated_(saturated)
    {
    }

    const char* kind() const noexcept override { return "BudgetExceeded"; }

    std::uint64_t estimate() const noexcept { return estimate_; }
    std::uint64_t budget() const noexcept { return budget_; }
    bool saturated() const noexcept { return saturated_; }

private:
    static std::string make_message(std::uint64_t estimate, std::uint64_t budget, bool saturated)
    {
        return "enumeration size " + std::string(saturated ? ">= " : "") + std::to_string(estimate) +
               " exceeds budget " + std::to_string(budget);
    }

    std::uint64_t estimate_;
    std::uint64_t budget_;
    bool saturated_;
};

} // namespace npi
