#pragma once

#include <stdexcept>
#include <string>

namespace algorank {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Invalid user-supplied configuration (ranges, mixtures, campaign parameters).
struct ConfigError : Error {
  using Error::Error;
};

// Malformed input file; carries the 1-based line number when known.
struct ParseError : Error {
  ParseError(const std::string& what, long line_no)
      : Error(what + " (line " + std::to_string(line_no) + ")"), line(line_no) {}
  long line;
};

// Measurement acquisition failed: replay exhausted, command spawn/exit/timeout.
struct SourceError : Error {
  using Error::Error;
};

// A violated internal invariant, e.g. a non-contiguous rank sequence.
struct InternalError : Error {
  using Error::Error;
};

}  // namespace algorank
