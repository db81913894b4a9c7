#pragma once

#include <stdexcept>
#include <string>

namespace fdfv {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Bad user input: unknown names, malformed configs, unsupported combinations.
class ValidationError : public Error {
 public:
  using Error::Error;
};

// A stencil asked for a value that the supplied window does not contain.
class OutOfStencilError : public Error {
 public:
  using Error::Error;
};

// A boundary closure that cannot be solved for the boundary unknown.
class IllPosedClosureError : public Error {
 public:
  using Error::Error;
};

// Physically inadmissible state (vacuum, negative pressure, non-finite).
class StateError : public Error {
 public:
  using Error::Error;
};

// The time integration produced a non-finite or inadmissible state.
class BlowUpError : public Error {
 public:
  BlowUpError(const std::string& what, int stage = -1, long step = -1,
              double time = 0.0)
      : Error(what), stage_(stage), step_(step), time_(time) {}

  int stage() const { return stage_; }
  long step() const { return step_; }
  double time() const { return time_; }

 private:
  int stage_;
  long step_;
  double time_;
};

}  // namespace fdfv
