#pragma once

#include <stdexcept>
#include <string>

namespace quill {

/// Input lies outside the domain of a function (non-physical matrix,
/// vanishing denominator, ...).
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A scenario, sweep spec or JSON document is malformed.
class ParameterError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

/// Floating-point breakdown, e.g. a negative discriminant beyond tolerance.
class NumericError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// An internal self-check failed. Indicates a bug, not bad input.
class InvariantError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

/// Monte Carlo configuration cannot produce the requested estimate.
class ConfigError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

} // namespace quill
