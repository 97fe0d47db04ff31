#pragma once

#include <stdexcept>
#include <string>

namespace tvlm {

// Error taxonomy maps onto CLI exit codes: config=2, data=3, precision=4.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

struct PrecisionError : std::runtime_error {
  explicit PrecisionError(const std::string& msg) : std::runtime_error(msg) {}
};

// Requested point sits outside the usable range of a weight scheme
// (e.g. kernel support does not intersect the sample, or uT_j < 1).
struct BoundaryError : ConfigError {
  explicit BoundaryError(const std::string& msg) : ConfigError(msg) {}
};

// Argument outside the mathematical domain of a limit object.
struct DomainError : ConfigError {
  explicit DomainError(const std::string& msg) : ConfigError(msg) {}
};

}  // namespace tvlm
