#include "lpqb/prior.hpp"

#include <cmath>

#include "lpqb/errors.hpp"

namespace lpqb {

Eigen::MatrixXd difference_matrix(int horizon) {
  if (horizon < 1) throw DataError("difference_matrix: horizon must be >= 1");
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(horizon, horizon + 1);
  for (int i = 0; i < horizon; ++i) {
    d(i, i) = -1.0;
    d(i, i + 1) = 1.0;
  }
  return d;
}

Eigen::MatrixXd smoothing_precision(int horizon, double rho) {
  if (horizon < 0) throw DataError("smoothing_precision: horizon must be >= 0");
  if (!(rho > 0.0)) throw DataError("smoothing_precision: rho must be positive");
  const double ridge = 8.0 / (rho * rho);
  if (horizon == 0) return Eigen::MatrixXd::Constant(1, 1, ridge);
  const Eigen::MatrixXd d = difference_matrix(horizon);
  Eigen::MatrixXd q = d.transpose() * d;
  q.diagonal().array() += ridge;
  return q;
}

double prior_correlation(int distance, double rho) {
  if (distance < 0) throw DataError("prior_correlation: distance must be >= 0");
  if (!(rho > 0.0)) throw DataError("prior_correlation: rho must be positive");
  return std::exp(-std::sqrt(8.0) * static_cast<double>(distance) / rho);
}

Eigen::MatrixXd stacked_prior_precision(const Eigen::MatrixXd& q, const Eigen::VectorXd& tau) {
  const auto n_h = q.rows();
  const auto j = tau.size();
  if (q.cols() != n_h) throw DataError("stacked_prior_precision: Q must be square");
  for (Eigen::Index m = 0; m < j; ++m)
    if (!(tau[m] > 0.0)) throw DataError("stacked_prior_precision: tau must be positive");

  Eigen::VectorXd inv_tau_sq = tau.array().square().inverse();
  Eigen::MatrixXd pi = Eigen::MatrixXd::Zero(n_h * j, n_h * j);
  for (Eigen::Index h = 0; h < n_h; ++h)
    for (Eigen::Index g = 0; g < n_h; ++g) {
      if (q(h, g) == 0.0) continue;
      pi.block(h * j, g * j, j, j).diagonal() = q(h, g) * inv_tau_sq;
    }
  return pi;
}

PrecisionModel make_precision_model(int horizon, double rho) {
  PrecisionModel m;
  m.horizon = horizon;
  m.rho = rho;
  if (horizon >= 1) m.d = difference_matrix(horizon);
  m.q = smoothing_precision(horizon, rho);
  return m;
}

}  // namespace lpqb
