#pragma once

#include <stdexcept>
#include <string>

namespace orthocube {

/// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct NotPsdError : Error {
  explicit NotPsdError(const std::string& msg) : Error(msg) {}
};

struct ZeroEigenvalueError : Error {
  explicit ZeroEigenvalueError(const std::string& msg) : Error(msg) {}
};

struct BadExtentError : Error {
  explicit BadExtentError(const std::string& msg) : Error(msg) {}
};

struct QuadratureNotConvergedError : Error {
  explicit QuadratureNotConvergedError(const std::string& msg) : Error(msg) {}
};

struct DeltaAtZeroTimeError : Error {
  explicit DeltaAtZeroTimeError(const std::string& msg) : Error(msg) {}
};

struct NonPositiveTimeError : Error {
  explicit NonPositiveTimeError(const std::string& msg) : Error(msg) {}
};

struct BadGridError : Error {
  explicit BadGridError(const std::string& msg) : Error(msg) {}
};

struct UnstableTimestepError : Error {
  explicit UnstableTimestepError(const std::string& msg) : Error(msg) {}
};

struct GridTooCoarseError : Error {
  explicit GridTooCoarseError(const std::string& msg) : Error(msg) {}
};

struct ZeroFineValueError : Error {
  explicit ZeroFineValueError(const std::string& msg) : Error(msg) {}
};

struct NoConvergenceError : Error {
  explicit NoConvergenceError(const std::string& msg) : Error(msg) {}
};

struct AllPointsDegenerateError : Error {
  explicit AllPointsDegenerateError(const std::string& msg) : Error(msg) {}
};

/// Configuration errors carry the offending field path, e.g. "fd.grids[1]".
struct ConfigError : Error {
  std::string path;
  ConfigError(std::string field_path, const std::string& msg)
      : Error("config error at '" + field_path + "': " + msg), path(std::move(field_path)) {}
};

}  // namespace orthocube
