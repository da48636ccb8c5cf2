#pragma once

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace gsp {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

/// Bad arguments or violated preconditions.
struct ValidationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Iterative routine hit its cap without meeting tolerance.
struct ConvergenceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Input file exists but cannot be parsed.
struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

}  // namespace gsp
