#include "lpqb/gmm.hpp"

#include <cmath>

#include "lpqb/errors.hpp"
#include "lpqb/linalg.hpp"

namespace lpqb {

namespace {
constexpr double kMaxCondition = 1e12;

// Z'X with an invertibility guard shared by the estimators.
Eigen::MatrixXd cross_moment(const LpDesign& d) {
  Eigen::MatrixXd ztx = d.Z.transpose() * d.X;
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(ztx);
  const double smax = svd.singularValues()(0);
  const double smin = svd.singularValues()(svd.singularValues().size() - 1);
  if (smin <= 0.0 || smax / smin > kMaxCondition)
    throw NumericError("initial_iv_estimate: Z'X is singular or ill-conditioned (cond ~ " +
                       std::to_string(smin > 0.0 ? smax / smin : std::nan("")) + ")");
  return ztx;
}

Eigen::MatrixXd kron_identity_block(const Eigen::MatrixXd& block, int reps) {
  const auto j = block.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(j * reps, j * reps);
  for (int h = 0; h < reps; ++h) out.block(h * j, h * j, j, j) = block;
  return out;
}

}  // namespace

int har_bandwidth(Eigen::Index t_count) {
  if (t_count < 1) throw DataError("har_bandwidth: T must be positive");
  return static_cast<int>(std::ceil(1.3 * std::sqrt(static_cast<double>(t_count))));
}

std::vector<double> bartlett_weights(int bandwidth) {
  if (bandwidth < 1) throw DataError("bartlett_weights: bandwidth must be >= 1");
  std::vector<double> w(static_cast<std::size_t>(bandwidth));
  for (int b = 0; b < bandwidth; ++b)
    w[static_cast<std::size_t>(b)] = 1.0 - static_cast<double>(b) / bandwidth;
  return w;
}

Eigen::VectorXd initial_iv_estimate(const LpDesign& d) {
  const Eigen::MatrixXd ztx = cross_moment(d);
  const Eigen::MatrixXd coef = ztx.partialPivLu().solve(d.Z.transpose() * d.Y);  // J x (H+1)
  return Eigen::Map<const Eigen::VectorXd>(coef.data(), coef.size());
}

Eigen::MatrixXd moment_matrix(const LpDesign& d, const Eigen::VectorXd& theta) {
  const int j = d.n_cols();
  const int n_h = d.horizon + 1;
  if (theta.size() != static_cast<Eigen::Index>(j) * n_h)
    throw DataError("moment_matrix: theta has wrong length");
  Eigen::MatrixXd m(d.n_obs(), d.stacked_dim());
  for (int h = 0; h < n_h; ++h) {
    const Eigen::VectorXd resid = d.Y.col(h) - d.X * theta.segment(h * j, j);
    m.block(0, h * j, d.n_obs(), j) = d.Z.array().colwise() * resid.array();
  }
  return m;
}

Eigen::MatrixXd moment_covariance(const LpDesign& d, const Eigen::VectorXd& theta, CovMode mode,
                                  int har_b) {
  const Eigen::MatrixXd m = moment_matrix(d, theta);
  const double t_count = static_cast<double>(d.n_obs());
  Eigen::MatrixXd sigma = (m.transpose() * m) / t_count;

  if (mode == CovMode::Har) {
    const int bandwidth = har_b >= 1 ? har_b : har_bandwidth(d.n_obs());
    for (int b = 1; b < bandwidth && b < d.n_obs(); ++b) {
      const Eigen::Index rows = d.n_obs() - b;
      const Eigen::MatrixXd gamma_b =
          (m.bottomRows(rows).transpose() * m.topRows(rows)) / t_count;
      const double w = 1.0 - static_cast<double>(b) / bandwidth;
      sigma += w * (gamma_b + gamma_b.transpose());
    }
  } else if (mode == CovMode::BlockDiag) {
    const int j = d.n_cols();
    for (int h = 0; h <= d.horizon; ++h)
      for (int g = 0; g <= d.horizon; ++g)
        if (g != h) sigma.block(h * j, g * j, j, j).setZero();
  }
  return symmetrize(sigma);
}

Eigen::MatrixXd weighting_matrix(const Eigen::MatrixXd& sigma, CovMode mode, int block_dim) {
  if (sigma.rows() != sigma.cols()) throw DataError("weighting_matrix: sigma must be square");
  if (mode == CovMode::BlockDiag) {
    if (block_dim < 1 || sigma.rows() % block_dim != 0)
      throw DataError("weighting_matrix: block_dim does not divide the stacked dimension");
    const auto n_blocks = sigma.rows() / block_dim;
    Eigen::MatrixXd w = Eigen::MatrixXd::Zero(sigma.rows(), sigma.cols());
    for (Eigen::Index h = 0; h < n_blocks; ++h)
      w.block(h * block_dim, h * block_dim, block_dim, block_dim) =
          invert_spd(sigma.block(h * block_dim, h * block_dim, block_dim, block_dim));
    return w;
  }
  return invert_spd(sigma);
}

TwoStepGmm two_step_gmm(const LpDesign& d, CovMode mode) {
  const Eigen::MatrixXd ztx = cross_moment(d);
  const int n_h = d.horizon + 1;
  const double t_count = static_cast<double>(d.n_obs());
  const Eigen::MatrixXd g_hat = kron_identity_block(-ztx / t_count, n_h);
  const Eigen::MatrixXd zty = d.Z.transpose() * d.Y;
  const Eigen::VectorXd c = Eigen::Map<const Eigen::VectorXd>(zty.data(), zty.size()) / t_count;

  // mbar(theta) = c + G theta; stage 1 minimizes with W = I (equals 2SLS).
  auto minimize = [&](const Eigen::MatrixXd& w) {
    const Eigen::MatrixXd a = symmetrize(g_hat.transpose() * w * g_hat);
    const Eigen::VectorXd b = -g_hat.transpose() * (w * c);
    return Eigen::VectorXd(chol_with_jitter(a).solve(b));
  };
  const Eigen::VectorXd theta1 =
      minimize(Eigen::MatrixXd::Identity(g_hat.rows(), g_hat.cols()));
  const Eigen::MatrixXd w2 =
      weighting_matrix(moment_covariance(d, theta1, mode), mode, d.n_cols());
  return {minimize(w2), w2};
}

Eigen::MatrixXd sandwich_covariance(const Eigen::MatrixXd& g_hat, const Eigen::MatrixXd& w,
                                    const Eigen::MatrixXd& sigma, Eigen::Index t_count) {
  const Eigen::MatrixXd bread = invert_spd(symmetrize(g_hat.transpose() * w * g_hat));
  const Eigen::MatrixXd meat = g_hat.transpose() * w * sigma * w * g_hat;
  return symmetrize(bread * meat * bread / static_cast<double>(t_count));
}

MomentModel::MomentModel(const LpDesign& design, CovMode mode)
    : design_(design), mode_(mode) {
  theta_star_ = initial_iv_estimate(design);
  const Eigen::MatrixXd ztx = design.Z.transpose() * design.X;
  g_hat_ = kron_identity_block(-ztx / static_cast<double>(design.n_obs()), design.horizon + 1);
  sigma_hat_ = moment_covariance(design, theta_star_, mode);
  w_ = weighting_matrix(sigma_hat_, mode, design.n_cols());
  upsilon_ = symmetrize(static_cast<double>(design.n_obs()) *
                        (g_hat_.transpose() * w_ * g_hat_));
}

Eigen::MatrixXd MomentModel::inference_covariance(const Eigen::VectorXd& theta_hat) const {
  // The inference covariance always uses the complete stacked moment
  // vector; the block-diagonal restriction applies to the weighting only.
  const CovMode inf_mode = mode_ == CovMode::BlockDiag ? CovMode::Plain : mode_;
  const Eigen::MatrixXd sigma = moment_covariance(design_, theta_hat, inf_mode);
  return sandwich_covariance(g_hat_, w_, sigma, design_.n_obs());
}

}  // namespace lpqb
