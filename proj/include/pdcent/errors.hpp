#pragma once

#include <stdexcept>
#include <string>

namespace pdcent {

// Bad input: out-of-range parameters, asymmetric matrices, malformed grids.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

// A quantity left its mathematical domain, e.g. complex symplectic
// eigenvalues from an unphysical covariance matrix.
class NumericalDomainError : public std::domain_error {
 public:
  explicit NumericalDomainError(const std::string& what) : std::domain_error(what) {}
};

class IntegrationError : public std::runtime_error {
 public:
  explicit IntegrationError(const std::string& what) : std::runtime_error(what) {}
};

// Fock-basis cutoff too small for the requested evolution.
class TruncationError : public std::runtime_error {
 public:
  explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace pdcent
