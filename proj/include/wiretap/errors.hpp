#pragma once

#include <stdexcept>
#include <string>

namespace wiretap {

/// Malformed or out-of-contract input (bad pmf, bad spec file, bad flag).
class InputError : public std::invalid_argument {
public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// An iterative method failed to reach its tolerance within its budget.
class ConvergenceError : public std::runtime_error {
public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

/// A computation would exceed an enforced enumeration/memory cap.
class BudgetError : public std::runtime_error {
public:
  explicit BudgetError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wiretap
