#pragma once

#include <stdexcept>

#include <Eigen/Dense>

#include "balltrack/geometry.hpp"

namespace balltrack::kalman
{

using StateVector = Eigen::Matrix<double, 4, 1>;
using StateMatrix = Eigen::Matrix<double, 4, 4>;
using MeasVector = Eigen::Matrix<double, 2, 1>;
using MeasMatrix = Eigen::Matrix<double, 2, 2>;
using ObsMatrix = Eigen::Matrix<double, 2, 4>;
using GainMatrix = Eigen::Matrix<double, 4, 2>;

/// Filter estimate: x = (a, b, u, v) with position (a, b) in pixels and
/// velocity (u, v) in pixels per frame, plus its error covariance P.
struct KalmanState
{
  StateVector x = StateVector::Zero();
  StateMatrix P = StateMatrix::Identity();

  Point2 position() const { return {x(0), x(1)}; }
  Point2 velocity() const { return {x(2), x(3)}; }
};

/// Process and measurement model.
///   x_k = A x_{k-1} + B u_{k-1} + w,  w ~ N(0, Q)
///   z_k = H x_k + v,                  v ~ N(0, R)
/// B may have zero columns, in which case the control term vanishes.
struct KalmanParams
{
  StateMatrix A = StateMatrix::Identity();
  Eigen::Matrix<double, 4, Eigen::Dynamic> B = Eigen::Matrix<double, 4, Eigen::Dynamic>(4, 0);
  ObsMatrix H = ObsMatrix::Zero();
  StateMatrix Q = StateMatrix::Zero();
  MeasMatrix R = MeasMatrix::Identity();
};

/// Thrown when H P⁻ Hᵀ + R cannot be inverted.
class DegenerateModelError : public std::runtime_error
{
public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultQPos = 0.01;
inline constexpr double kDefaultQVel = 0.01;
inline constexpr double kDefaultRPos = 1.0;

/// Constant-velocity model with a unit frame step and position-only
/// measurements. Throws std::invalid_argument on negative variances or a
/// non-positive r_pos.
KalmanParams default_cv_params(
  double q_pos = kDefaultQPos, double q_vel = kDefaultQVel, double r_pos = kDefaultRPos);

/// Starting estimate at a measured position: zero velocity,
/// P = diag(10, 10, 100, 100).
KalmanState initial_state(const Point2 & position);

/// Time update. x⁻ = A x + B u, P⁻ = A P Aᵀ + Q.
KalmanState time_update(
  const KalmanState & state, const KalmanParams & params,
  const Eigen::VectorXd & control = Eigen::VectorXd());

/// Optimal gain K = P⁻ Hᵀ (H P⁻ Hᵀ + R)⁻¹, using the closed-form 2x2 inverse.
GainMatrix kalman_gain(const KalmanState & prior, const KalmanParams & params);

/// Measurement update. x = x⁻ + K (z − H x⁻), P = (I − K H) P⁻.
KalmanState measurement_update(
  const KalmanState & prior, const MeasVector & z, const KalmanParams & params);

inline MeasVector to_measurement(const Point2 & p)
{
  return MeasVector(p.x, p.y);
}

}  // namespace balltrack::kalman
