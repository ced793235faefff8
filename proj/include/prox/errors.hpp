#pragma once

#include <stdexcept>
#include <string>

namespace prox {

/* Base class for all library errors. */
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/* Vector/space mismatch: wrong length or wrong space. */
class DimensionError : public Error {
 public:
  using Error::Error;
};

/* A scalar or option parameter is outside its admissible range. */
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/* Pointwise evaluation requested for a set-valued operator. */
class NotSingleValued : public Error {
 public:
  using Error::Error;
};

/* An iterative auxiliary computation (e.g. power iteration) did not converge. */
class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& msg, double last_estimate)
      : Error(msg), last_estimate(last_estimate) {}
  double last_estimate;
};

/* A parameter schedule violates the conditions required by its role. */
class InvalidSchedule : public Error {
 public:
  using Error::Error;
};

/* A non-finite value appeared during a solver run. */
class NumericalError : public Error {
 public:
  using Error::Error;
};

/* Malformed or inconsistent run configuration. */
class ConfigError : public Error {
 public:
  ConfigError(const std::string& msg, int line = 0, std::string key = "")
      : Error(msg), line(line), key(std::move(key)) {}
  int line;
  std::string key;
};

/* Out-of-range access into a tabulated schedule. */
class IndexError : public Error {
 public:
  using Error::Error;
};

/* File could not be read or parsed. */
class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace prox
