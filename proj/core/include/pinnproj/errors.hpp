#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pinnproj {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid configuration (bad sizes, inconsistent variant/context, ...).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Mismatched array/grid dimensions.
class DimensionError : public Error {
 public:
  using Error::Error;
};

/// Malformed text input; carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  explicit ParseError(const std::string& what) : Error(what), line_(0) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Network evaluation produced a non-finite value.
class ModelEvalError : public Error {
 public:
  using Error::Error;
};

/// Objective became non-finite during training; message carries context.
class TrainingDivergenceError : public Error {
 public:
  using Error::Error;
};

/// Dataset generation failed (instability, non-finite state).
class GenerationError : public Error {
 public:
  using Error::Error;
};

/// A metric is undefined for the given inputs (e.g. zero-norm ground truth).
class MetricError : public Error {
 public:
  using Error::Error;
};

}  // namespace pinnproj
