#pragma once

#include <stdexcept>
#include <string>

namespace congestion {

// Bad input: violated precondition, malformed file, parameters out of range.
class DomainError : public std::invalid_argument {
public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// Internal invariant broken (solver non-convergence, inconsistent tree). Signals a bug.
class InvariantError : public std::logic_error {
public:
  explicit InvariantError(const std::string& what) : std::logic_error(what) {}
};

} // namespace congestion
