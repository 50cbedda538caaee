#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace nstar {

/// Index or value outside its admissible range (axis, slot, dimension...).
class DomainError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Wrong number of factors for the configured arity.
class ArityError : public std::invalid_argument {
  public:
    using std::invalid_argument::invalid_argument;
};

/// Work estimate exceeded the configured budget.
class BudgetError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// Expression or file syntax error, positioned at 1-based line/column.
class ParseError : public std::runtime_error {
  public:
    ParseError(const std::string& what, std::size_t line, std::size_t column)
        : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + what),
          line_(line),
          column_(column) {}

    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

  private:
    std::size_t line_;
    std::size_t column_;
};

}  // namespace nstar
