#include "balltrack/kalman.hpp"

#include <cmath>
#include <limits>

namespace balltrack::kalman
{

namespace
{

StateMatrix symmetrized(const StateMatrix & P)
{
  return 0.5 * (P + P.transpose());
}

}  // namespace

KalmanParams default_cv_params(double q_pos, double q_vel, double r_pos)
{
  if (!(q_pos >= 0.0) || !(q_vel >= 0.0)) {
    throw std::invalid_argument("process noise variances must be non-negative");
  }
  if (!(r_pos > 0.0)) {
    throw std::invalid_argument("measurement noise variance must be positive");
  }

  KalmanParams p;
  p.A << 1, 0, 1, 0,
         0, 1, 0, 1,
         0, 0, 1, 0,
         0, 0, 0, 1;
  p.H << 1, 0, 0, 0,
         0, 1, 0, 0;
  p.Q = StateVector(q_pos, q_pos, q_vel, q_vel).asDiagonal();
  p.R = MeasVector(r_pos, r_pos).asDiagonal();
  return p;
}

KalmanState initial_state(const Point2 & position)
{
  KalmanState s;
  s.x << position.x, position.y, 0.0, 0.0;
  s.P = StateVector(10.0, 10.0, 100.0, 100.0).asDiagonal();
  return s;
}

KalmanState time_update(
  const KalmanState & state, const KalmanParams & params, const Eigen::VectorXd & control)
{
  KalmanState prior;
  prior.x = params.A * state.x;
  if (params.B.cols() > 0 && control.size() == params.B.cols()) {
    prior.x += params.B * control;
  }
  prior.P = symmetrized(params.A * state.P * params.A.transpose() + params.Q);
  return prior;
}

GainMatrix kalman_gain(const KalmanState & prior, const KalmanParams & params)
{
  const MeasMatrix S = params.H * prior.P * params.H.transpose() + params.R;

  const double det = S(0, 0) * S(1, 1) - S(0, 1) * S(1, 0);
  const double scale = S.cwiseAbs().maxCoeff();
  if (!std::isfinite(det) || scale == 0.0 ||
      std::abs(det) <= std::numeric_limits<double>::epsilon() * scale * scale) {
    throw DegenerateModelError("innovation covariance H P Ht + R is singular");
  }

  MeasMatrix S_inv;
  S_inv << S(1, 1), -S(0, 1),
           -S(1, 0), S(0, 0);
  S_inv /= det;

  return prior.P * params.H.transpose() * S_inv;
}

KalmanState measurement_update(
  const KalmanState & prior, const MeasVector & z, const KalmanParams & params)
{
  const GainMatrix K = kalman_gain(prior, params);

  KalmanState post;
  post.x = prior.x + K * (z - params.H * prior.x);
  post.P = symmetrized((StateMatrix::Identity() - K * params.H) * prior.P);
  return post;
}

}  // namespace balltrack::kalman
