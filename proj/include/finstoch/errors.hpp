#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace finstoch {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Construction-time validation failures.
struct BadLabel : Error { using Error::Error; };
struct DuplicateLabel : Error { using Error::Error; };
struct NotNormalized : Error { using Error::Error; };
struct OutOfRange : Error { using Error::Error; };
struct ColumnNotNormalized : Error { using Error::Error; };
struct ShapeMismatch : Error { using Error::Error; };
// A stochastic map paired with distributions that it does not preserve.
struct MeasureMismatch : Error { using Error::Error; };

struct UnknownSuite : Error { using Error::Error; };

// Document-level errors carry a source location (1-based).
struct ParseError : Error {
  ParseError(std::string msg, std::size_t line, std::size_t col)
      : Error("line " + std::to_string(line) + ", col " + std::to_string(col) +
              ": " + msg),
        line(line),
        col(col) {}
  std::size_t line = 0;
  std::size_t col = 0;
};

struct SyntaxError : ParseError { using ParseError::ParseError; };
struct ValidationError : ParseError { using ParseError::ParseError; };
struct UnresolvedReference : ParseError { using ParseError::ParseError; };

}  // namespace finstoch
