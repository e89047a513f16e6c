#pragma once

#include <stdexcept>
#include <string>

namespace renyimono {

// Input value outside an operation's domain (bad index, unnormalized state,
// non-Hermitian matrix, x outside [0,1], ...).
class DomainError : public std::invalid_argument {
 public:
  explicit DomainError(const std::string& what) : std::invalid_argument(what) {}
};

// (alpha, eta) pair outside the parameter regime a formula is stated for.
class RegimeError : public std::invalid_argument {
 public:
  explicit RegimeError(const std::string& what) : std::invalid_argument(what) {}
};

// Iterative numerical routine hit its iteration cap.
class ConvergenceError : public std::runtime_error {
 public:
  explicit ConvergenceError(const std::string& what) : std::runtime_error(what) {}
};

// An internal cross-check between two independent evaluation routes failed.
class ConsistencyError : public std::logic_error {
 public:
  explicit ConsistencyError(const std::string& what) : std::logic_error(what) {}
};

}  // namespace renyimono
