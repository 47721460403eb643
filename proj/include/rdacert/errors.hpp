#pragma once

#include <stdexcept>
#include <string>

namespace rdacert {

// Base of every error raised by the library. Callers that only need to
// distinguish "input problem" from "internal inconsistency" can catch the
// two intermediate classes below.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InputError : public Error {
 public:
  using Error::Error;
};

class InternalError : public Error {
 public:
  using Error::Error;
};

class InvalidSpec : public InputError {
 public:
  using InputError::InputError;
};

class NoRealEquilibrium : public InputError {
 public:
  using InputError::InputError;
};

class NonSquare : public InputError {
 public:
  using InputError::InputError;
};

class BadInterval : public InputError {
 public:
  using InputError::InputError;
};

class ShapeMismatch : public InputError {
 public:
  using InputError::InputError;
};

class SchemaError : public InputError {
 public:
  using InputError::InputError;
};

class NonFiniteEvaluation : public InternalError {
 public:
  using InternalError::InternalError;
};

class ImaginaryResidue : public InternalError {
 public:
  using InternalError::InternalError;
};

class PipelineDisagreement : public InternalError {
 public:
  using InternalError::InternalError;
};

class Blowup : public InternalError {
 public:
  Blowup(const std::string& what, double time)
      : InternalError(what), time_(time) {}
  double time() const { return time_; }

 private:
  double time_;
};

}  // namespace rdacert
