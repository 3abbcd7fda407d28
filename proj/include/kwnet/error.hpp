#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kwnet {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& message)
      : Error(file + ":" + std::to_string(line) + ": " + message),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

/// Well-formed input that violates a data contract (duplicate ids, bad vectors, ...).
class DataError : public Error {
 public:
  using Error::Error;
};

/// Invalid parameters or grid definitions, detected before any compute.
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Cosine of a zero-norm vector.
class UndefinedSimilarity : public Error {
 public:
  using Error::Error;
};

/// Power iteration ran out of iterations.
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : Error(what + " (residual " + std::to_string(residual) + ")"), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace kwnet
