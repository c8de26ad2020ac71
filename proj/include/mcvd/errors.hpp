#pragma once

#include <stdexcept>
#include <string>

namespace mcvd {

/// Base class for all model-level failures.
class ModelError : public std::runtime_error {
public:
  explicit ModelError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Physically unrealizable or ill-formed geometry / parameters.
class TopologyError : public ModelError {
public:
  explicit TopologyError(const std::string& msg) : ModelError(msg) {}
};

/// Geometric-series expansion does not converge (c12*c21 >= 1).
class RocError : public ModelError {
public:
  explicit RocError(const std::string& msg) : ModelError(msg) {}
};

/// Incompatible time grids or out-of-range resampling.
class GridError : public ModelError {
public:
  explicit GridError(const std::string& msg) : ModelError(msg) {}
};

/// Missing or inconsistent data (e.g. no hits for a requested receiver).
class DataError : public ModelError {
public:
  explicit DataError(const std::string& msg) : ModelError(msg) {}
};

}  // namespace mcvd
