#pragma once

#include <stdexcept>
#include <string>

namespace qfrag {

// Argument outside the mathematical domain of an operation (N < 2, eps not in (0,1), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Structurally invalid input: odd subsystem sizes, mismatched bipartitions, bad config.
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Dense oracle refused a problem larger than the configured dimension cap.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A brute-force check disagreed with the closed-form prediction.
class VerificationFailure : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Numerical bookkeeping went wrong (normalization drift, ordering violated).
class ConsistencyError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace qfrag
