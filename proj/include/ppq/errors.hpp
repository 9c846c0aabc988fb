#pragma once

#include <stdexcept>
#include <string>

namespace ppq {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Malformed query text or KB document.
struct ParseError : Error {
  ParseError(const std::string& msg, std::size_t pos)
      : Error(msg + " (at offset " + std::to_string(pos) + ")"), position(pos) {}
  explicit ParseError(const std::string& msg) : Error(msg), position(0) {}
  std::size_t position;
};

// Well-formed document violating a model invariant (cycle, bad sums, dups).
struct ValidationError : Error {
  using Error::Error;
};

// Conditioning proposition has zero probability mass.
struct UndefinedConditionalError : Error {
  using Error::Error;
};

// Oracle asked to handle a literal kind it does not support.
struct CapabilityError : Error {
  using Error::Error;
};

// SV conditional requested against zero-mass evidence.
struct ZeroEvidenceError : Error {
  using Error::Error;
};

// SVQuery precondition breach (duplicate variable, target in evidence).
struct InvalidQueryError : Error {
  using Error::Error;
};

// Result drifted outside [0,1] by more than rounding can explain.
struct InconsistentOracleError : Error {
  using Error::Error;
};

}  // namespace ppq
