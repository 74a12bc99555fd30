#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ambit {

enum class ErrorKind {
  InvalidElement,
  WindowTooLarge,
  MalformedTable,
  MalformedMatrix,
  WindowMismatch,
  ProductOutsideWindow,
  HandleMismatch,
  ActionLawViolation,
  CoverageError,
  BudgetExhausted,
  IllFormedSelection,
  ParseError,
  InvariantError,
};

inline const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidElement: return "InvalidElement";
    case ErrorKind::WindowTooLarge: return "WindowTooLarge";
    case ErrorKind::MalformedTable: return "MalformedTable";
    case ErrorKind::MalformedMatrix: return "MalformedMatrix";
    case ErrorKind::WindowMismatch: return "WindowMismatch";
    case ErrorKind::ProductOutsideWindow: return "ProductOutsideWindow";
    case ErrorKind::HandleMismatch: return "HandleMismatch";
    case ErrorKind::ActionLawViolation: return "ActionLawViolation";
    case ErrorKind::CoverageError: return "CoverageError";
    case ErrorKind::BudgetExhausted: return "BudgetExhausted";
    case ErrorKind::IllFormedSelection: return "IllFormedSelection";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::InvariantError: return "InvariantError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what),
        kind_(kind), message_(what) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix.
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

/// Greedy selection found no admissible candidate for one neighbourhood.
class BudgetExhausted : public Error {
 public:
  BudgetExhausted(std::size_t neighborhood_index, std::size_t budget)
      : Error(ErrorKind::BudgetExhausted,
              "no admissible element for neighborhood " +
                  std::to_string(neighborhood_index) + " within " +
                  std::to_string(budget) + " candidates"),
        index_(neighborhood_index) {}

  std::size_t neighborhood_index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace ambit
