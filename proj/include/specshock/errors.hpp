#pragma once

#include <stdexcept>
#include <string>

namespace specshock {

// Violated preconditions on arguments (lengths, indices, enum values).
class ContractError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Non-finite input where a finite value is required.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Sample data that cannot be transformed (NaN, Inf).
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Inadmissible thermodynamic state: nonpositive density or pressure.
class StateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class MappingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Post-processing could not find the feature it was asked to analyse.
class AnalysisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace specshock
