#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace powerwise {

/// Base class for every error raised by the engine.
class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Bad input: malformed files, inconsistent datasets, invalid configuration.
class ValidationError : public Error {
  public:
    using Error::Error;
};

/// A row of an input file could not be parsed.
class ParseError : public ValidationError {
  public:
    ParseError(std::size_t row, std::string field, const std::string& message)
        : ValidationError("row " + std::to_string(row) + ", field " + field + ": " + message),
          row_(row),
          field_(std::move(field)) {}

    std::size_t row() const noexcept { return row_; }
    const std::string& field() const noexcept { return field_; }

  private:
    std::size_t row_;
    std::string field_;
};

/// Valid input for which a result cannot be produced (non-convergence under
/// --strict, an unresolved bubble tie, a degenerate regression).
class ComputationError : public Error {
  public:
    using Error::Error;
};

}  // namespace powerwise
