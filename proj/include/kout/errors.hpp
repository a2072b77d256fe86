#pragma once

#include <stdexcept>
#include <string>

namespace kout {

/// Malformed or out-of-range input supplied by the caller.
class InputError : public std::invalid_argument {
 public:
  explicit InputError(const std::string& what) : std::invalid_argument(what) {}
};

/// The LP solver failed to converge (iteration cap, numerical breakdown).
class SolverError : public std::runtime_error {
 public:
  explicit SolverError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace kout
