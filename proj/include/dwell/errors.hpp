#pragma once

#include <stdexcept>
#include <string>

namespace dwell {

// Input outside the region where a branch, bound or closed form is defined.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Non-finite samples reached a quadrature rule.
class QuadratureError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Two grid functions combined on different grids.
class GridMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class CertificateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unsupported configuration (JSON schema, presets, flags).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dwell
