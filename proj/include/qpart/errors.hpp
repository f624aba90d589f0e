#pragma once

#include <stdexcept>
#include <string>

namespace qpart {

// Base for every error thrown by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NonUnitConstantTerm : public Error {
 public:
  using Error::Error;
};

class MissingCap : public Error {
 public:
  using Error::Error;
};

class OutsideTruncation : public Error {
 public:
  using Error::Error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class NotInClass : public Error {
 public:
  using Error::Error;
};

// Raised when a member of a class has no basal decomposition. Never fires for
// classes with c_r = r; see decompose().
class DecompositionFailed : public Error {
 public:
  using Error::Error;
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

// No single monomial factor reconciles two series.
class InconsistentFactor : public Error {
 public:
  using Error::Error;
};

}  // namespace qpart
