#pragma once

#include <stdexcept>

namespace slipkit {

/// Bad configuration or usage: scenario files, parameter files, CLI values.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input data: trace files, streams, measurements.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace slipkit
