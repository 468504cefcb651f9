#pragma once

#include <stdexcept>
#include <string>

namespace weylforge {

enum class Err {
  NonCartan,
  TypeMismatch,
  UnsupportedType,
  IndexOutOfRange,
  NotCofinite,
  UnsupportedPresentation,
  NotCoprime,
  NotDominant,
  SharedPoint,
  TableMismatch,
  WeightOverflow,
  IncompatibleCoefficients,
  AlgebraMismatch,
  DuplicatePoint,
  OrderViolation,
  ResourceCap,
  InvalidInput,
  Internal,
};

const char* err_name(Err e);

/// All hard failures carry a machine-readable code plus a human message.
class Error : public std::runtime_error {
public:
  Error(Err code, const std::string& msg)
      : std::runtime_error(std::string(err_name(code)) + ": " + msg), code_(code) {}
  Err code() const { return code_; }

private:
  Err code_;
};

[[noreturn]] inline void fail(Err code, const std::string& msg) { throw Error(code, msg); }

inline void require(bool cond, Err code, const std::string& msg) {
  if (!cond) fail(code, msg);
}

}  // namespace weylforge
