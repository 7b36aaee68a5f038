#pragma once

#include <Eigen/Core>
#include <stdexcept>
#include <string>

namespace magspec {

inline constexpr const char* kVersion = "0.1.0";

using Vec2 = Eigen::Vector2d;

constexpr double kPi = 3.14159265358979323846;

/// Invalid input or violated precondition. CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Numerical failure (non-convergence, singular system). CLI exit code 2.
class SolverError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// File read/write failure. CLI exit code 3.
class IoError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace magspec
