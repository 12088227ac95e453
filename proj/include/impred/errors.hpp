#pragma once

#include <stdexcept>
#include <string>

namespace impred {

// Argument outside its mathematical domain (bad parameter, empty sample, ...).
class domain_error : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A numeric procedure failed: no convergence, lost bracket, underflow in a
// quantile, ... The message carries the diagnostics the caller needs.
class numeric_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace impred
