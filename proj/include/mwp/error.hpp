#pragma once

#include <stdexcept>
#include <string>

namespace mwp {

// Base class for all recoverable pipeline errors.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed input files (datasets, annotations, models, rules).
struct ParseError : Error {
  using Error::Error;
};

// Structurally valid input violating an invariant (duplicate ids,
// cyclic dependency edges, bad tense labels, ...).
struct ValidationError : Error {
  using Error::Error;
};

// Text outside the restricted grammar of the built-in annotator.
struct AnnotationError : Error {
  using Error::Error;
};

// Division by zero or rational overflow.
struct ArithmeticError : Error {
  using Error::Error;
};

// Saturation divergence, utility evaluation failure.
struct InferenceError : Error {
  using Error::Error;
};

// A utility found nothing to evaluate (e.g. Sum with no matching facts).
struct NoSolutionError : InferenceError {
  using InferenceError::InferenceError;
};

// API misuse: missing operands, model/feature mismatch, bad configuration.
struct ContractError : Error {
  using Error::Error;
};

}  // namespace mwp
