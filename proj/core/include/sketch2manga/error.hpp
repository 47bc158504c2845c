#pragma once

#include <stdexcept>
#include <string>

namespace sketch2manga {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raster decode/encode failures and unreadable or unwritable paths.
class ImageIoError : public Error {
 public:
  using Error::Error;
};

/// Inputs whose shapes or contents violate an operation's contract.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// Malformed, conflicting or out-of-range configuration values.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class GeneratorFailure {
  kNonZeroExit,
  kMissingOutput,
  kDimensionMismatch,
};

/// An external generator violated the wire contract.
class GeneratorError : public Error {
 public:
  GeneratorError(GeneratorFailure kind, const std::string& what)
      : Error(what), kind_(kind) {}

  GeneratorFailure kind() const noexcept { return kind_; }

 private:
  GeneratorFailure kind_;
};

/// A pipeline stage failed; wraps the underlying error message.
class StageError : public Error {
 public:
  StageError(std::string stage, const std::string& message)
      : Error(stage + ": " + message), stage_(std::move(stage)) {}

  const std::string& stage() const noexcept { return stage_; }

 private:
  std::string stage_;
};

}  // namespace sketch2manga
