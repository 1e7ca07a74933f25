#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <vector>

namespace wronsos::detail {

struct Entry {
  std::size_t row, col;
  double value;
};

/// X(y, t) = C + shift + sum_j y_j F_j - t I. Each F_j lists every nonzero
/// entry (both triangles).
struct AffineSdp {
  Eigen::MatrixXd c;
  Eigen::MatrixXd shift;
  std::vector<std::vector<Entry>> f;
};

struct SdpResult {
  Eigen::VectorXd y;
  double t = 0;
  // mu X^{-1} at the barrier stage with the best ratio of residual to
  // margin: PSD, unit trace, <dual, F_j> ~ 0.
  Eigen::MatrixXd dual;
  double residual = 0;  // max |<dual, F_j>|
  int newton_steps = 0;
};

/// Maximizes t subject to X(y, t) PSD with a log-det barrier and damped
/// Newton steps, shrinking the barrier weight geometrically. Deterministic.
SdpResult maximize_min_eigenvalue(const AffineSdp& sdp);

}  // namespace wronsos::detail
