#pragma once

#include <stdexcept>
#include <string>

namespace momdens {

//! Argument outside the mathematical domain of an operation (x <= 0, alpha
//! too small, zero weight, ...).
class DomainError : public std::domain_error
{
public:
  using std::domain_error::domain_error;
};

//! Invalid configuration: unknown scenario or estimator, bad rule string,
//! estimator/model mismatch, out-of-range exponent.
class ConfigError : public std::invalid_argument
{
public:
  using std::invalid_argument::invalid_argument;
};

//! A numerical procedure failed to reach its tolerance.
class NumericError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

//! An operation needs state the object does not carry (e.g. unknown W).
class StateError : public std::logic_error
{
public:
  using std::logic_error::logic_error;
};

} // namespace momdens
