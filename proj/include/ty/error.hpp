#pragma once

#include <stdexcept>
#include <string>

namespace ty {

enum class Err {
  JacobiViolation,
  FormDegenerate,
  FormNotInvariant,
  WindowOverflow,
  NotTopologicallyNilpotent,
  BadUnitPart,
  LegTypeMismatch,
  UnderdeterminedWindow,
  NotComplementary,
  NotClosed,
  RequiresDifferenceDependence,
  NoUnitLeadingTerm,
  RequiresRational,
  WindowTooSmall,
  ClosureFailure,
  LegActionUndefined,
  NotSubalgebra,
  NotDirectSum,
  RequiresWindow,
  HbarUnderflow,
  Usage,
  Internal,
};

const char* errName(Err e);

class Error : public std::runtime_error {
 public:
  Error(Err code, const std::string& what)
      : std::runtime_error(std::string(errName(code)) + ": " + what), code_(code) {}
  Err code() const { return code_; }

 private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

}  // namespace ty
