#pragma once

#include <stdexcept>
#include <string>

namespace dla {

// Invalid argument values: bad family parameters, probabilities outside [0,1], ...
struct ParameterError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Input exceeds a hard cost guard (brute-force enumeration, closure qubit cap, ...).
struct UnsupportedSizeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A documented precondition does not hold (disconnected input, weighted graph, ...).
struct PreconditionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Qubit-count mismatch between operands.
struct DimensionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Structural rejection: the input is not an asymmetric subdivision of an odd graph.
struct NotASubdivisionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A hypothesis check failed (extension conditions, certificate replay).
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parse failure; carries the 1-based line number of the offending line.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_no, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_no) + ": " + msg), line(line_no) {}
};

}  // namespace dla
