#pragma once

#include <stdexcept>
#include <string>

namespace capregion {

// Base for every error the library raises on bad input or an infeasible request.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or out-of-domain input (bad index, coincident nodes, negative rate, ...).
class InvalidInput : public Error {
 public:
  using Error::Error;
};

// A theorem hypothesis (n >= 9, alpha >= 2, ...) does not hold, so the bound
// is not valid and is not computed.
class HypothesisViolation : public InvalidInput {
 public:
  using InvalidInput::InvalidInput;
};

// Traffic lies outside the region a construction needs.
class Infeasible : public Error {
 public:
  using Error::Error;
};

}  // namespace capregion
