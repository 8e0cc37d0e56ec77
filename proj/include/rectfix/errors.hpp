#pragma once

#include <stdexcept>
#include <string>

namespace rectfix {

// Malformed or structurally inconsistent input (bad JSON, dimension mismatch,
// unknown label). The CLI maps these to exit code 2.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside a function's mathematical domain (t <= 0 for theta, ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A contraction configuration or variant parameter breaks its side conditions.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// The operation is not defined for this representation (e.g. fixed_points on
// a rule-based map).
class Unsupported : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace rectfix
